#pragma once

// Run configuration. Every field has a default; a config file only needs the
// values it changes. Unknown keys are rejected so typos fail loudly.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "halfspace/grid.hpp"
#include "halfspace/operators.hpp"
#include "halfspace/solver.hpp"

namespace halfspace {

struct MuSpec {
  std::string type = "point_mass";  // point_mass | radial_density
  double mass = 1.0;
  std::vector<double> radii;
  std::vector<double> values;
};

struct RunConfig {
  struct Problem {
    int N = 1;
    double p = 3.0;
    std::optional<double> kappa;
    MuSpec mu;
  } problem;
  struct Exponents {
    double q = 4.0;
    double alpha = 0.0;
  } exponents;
  GridSpec grid;
  struct Solver {
    double tol = 1e-8;
    int max_iter = 100000;
    double blowup_cap = 1e6;
    std::string start = "scaled_boundary";  // scaled_boundary | boundary | zero
    double bracket_lo = 0.05;
    double bracket_hi = 5.0;
    double kappa_tol = 5e-3;
    double newton_tol = 1e-10;
  } solver;
  struct Continuation {
    double start_kappa = 0.1;
    double step = 0.05;
    int max_points = 400;
    double min_step = 1e-5;
    double max_step = 0.2;
    double stop_kappa = 0.0;  // <= 0: stop below start_kappa
  } continuation;
  struct Verify {
    std::vector<double> kappas{0.2, 0.4, 0.8};
    long kernel_samples = 10000;
    int glaa_family = 8;
  } verify;
  std::uint64_t seed = 0;
  std::string output_dir;  // empty: HALFSPACE_OUTPUT_DIR, then "."
};

/// Throws ConfigError with the line of a syntax error or the dotted path of a bad field.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

/// Every field, defaults included. parse_config(to_json(c).dump()) reproduces c.
nlohmann::json to_json(const RunConfig& c);

IterationOptions iteration_options(const RunConfig& c);
BoundaryMeasure boundary_measure(const RunConfig& c);

}  // namespace halfspace
