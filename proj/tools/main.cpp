#include "halfspace/cli.hpp"

int main(int argc, char** argv) { return halfspace::run_command(argc, argv); }
