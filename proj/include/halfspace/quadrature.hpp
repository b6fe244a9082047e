#pragma once

#include <Eigen/Core>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

namespace halfspace {

/// Gauss-Legendre nodes and weights on [-1, 1] (Newton iteration on P_n).
struct GaussRule {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
};
GaussRule gauss_legendre(int order);

/// The same rule mapped to [a, b].
GaussRule gauss_legendre(int order, double a, double b);

struct QuadratureOptions {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  int max_intervals = 4000;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  int evaluations = 0;
  bool converged = false;
};

/// Globally adaptive Gauss-Kronrod (7, 15) on a finite interval. Integrable
/// endpoint singularities are fine: nodes never touch the endpoints.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureOptions& opts = {});

/// Integral over [a, +inf) through x = a + t / (1 - t).
QuadratureResult integrate_to_infinity(const std::function<double(double)>& f, double a,
                                       const QuadratureOptions& opts = {});

/// Sum of integrate() over consecutive pieces [breaks[i], breaks[i+1]]; a final
/// +infinity break point is allowed.
QuadratureResult integrate_pieces(const std::function<double(double)>& f, const std::vector<double>& breaks,
                                  const QuadratureOptions& opts = {});

}  // namespace halfspace
