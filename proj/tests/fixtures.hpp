#pragma once

#include <cmath>

#include "halfspace/operators.hpp"

namespace fixtures {

struct Problem1D {
  halfspace::GridPtr grid;
  halfspace::KernelMatrix K;
  halfspace::Field Pmu;
};

// N = 1, unit point mass, graded grid on (0, H).
inline Problem1D problem_1d(int nodes, double H = 20.0, double grading = 2.0) {
  halfspace::GridSpec spec;
  spec.dimension = 1;
  spec.height_extent = H;
  spec.nodes_height = nodes;
  spec.grading = grading;
  Problem1D p;
  p.grid = halfspace::build_grid(spec);
  p.K = halfspace::assemble_green(p.grid);
  p.Pmu = halfspace::poisson_trace(p.grid, halfspace::PointMass{1.0});
  return p;
}

// sqrt(2) sech(x + a) with sech(a) = kappa / sqrt(2): solves -u'' + u = u^3, u(0) = kappa.
inline double soliton(double x, double kappa) {
  const double a = std::acosh(std::sqrt(2.0) / kappa);
  return std::sqrt(2.0) / std::cosh(x + a);
}

// The turning-point profile continued through its peak: sqrt(2) sech(x - a).
inline double soliton_upper(double x, double kappa) {
  const double a = std::acosh(std::sqrt(2.0) / kappa);
  return std::sqrt(2.0) / std::cosh(x - a);
}

inline double max_error(const halfspace::Field& u, double (*oracle)(double, double), double kappa) {
  double e = 0.0;
  for (Eigen::Index i = 0; i < u.size(); ++i)
    e = std::max(e, std::abs(u.values(i) - oracle(u.grid->height(i), kappa)));
  return e;
}

}  // namespace fixtures
