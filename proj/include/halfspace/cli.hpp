#pragma once

// Command-line front end: exponents | solve | kappa-star | eigen | branch | verify.
// Exit codes: 0 success, 1 computational failure or failed checks, 2 usage or config error.

#include <string>
#include <vector>

#include "halfspace/continuation.hpp"

namespace halfspace {

int run_command(int argc, char** argv);
int run_command(const std::vector<std::string>& args);  // args[0] is the program name

/// Header line plus one row per point, numbers as "%.17g".
std::string branch_csv(const Branch& b);

/// "%.17g"
std::string format_number(double v);

/// Exact closed forms as text: "13/9", "(37+8*sqrt(10))/9", "inf".
std::string sobolev_exponent_text(int N);
std::string joseph_lundgren_text(int N);

}  // namespace halfspace
