#pragma once

// Fixed-point machinery for u = kappa P[mu] + G[u_+^p] on a grid.

#include <Eigen/Dense>
#include <vector>

#include "halfspace/operators.hpp"

namespace halfspace {

/// Psi(v, kappa) = kappa Pmu + G[v_+^p].
Field psi_map(const Field& v, double kappa, const KernelMatrix& K, const Field& Pmu, double p);

/// sup |u - kappa Pmu - G[u_+^p]|.
double residual_sup(const Field& u, double kappa, const KernelMatrix& K, const Field& Pmu, double p);

enum class StartGuess {
  ScaledBoundary,  // U_0 = kappa Pmu
  Boundary,        // U_0 = Pmu
  Zero,            // U_0 = 0, so U_1 = kappa Pmu
};

struct IterationOptions {
  double tol = 1e-8;           // stop when sup|U_{j+1} - U_j| < tol sup|U_{j+1}|
  int max_iter = 100000;
  double blowup_cap = 1e6;     // diverged once sup|U_j| exceeds this
  int growth_window = 20;      // ... or after this many consecutive growing increments
  StartGuess start = StartGuess::ScaledBoundary;
  int record_iterates = 0;     // keep U_0 .. U_{record_iterates - 1}
};

enum class SolveStatus { Converged, Diverged, IterationLimit };

const char* to_string(SolveStatus s);

struct SolveResult {
  SolveStatus status = SolveStatus::IterationLimit;
  Field solution;                 // last iterate; the limit when converged
  int iterations = 0;
  double residual_sup = 0.0;
  std::vector<double> increments; // sup |U_{j+1} - U_j|
  std::vector<Field> iterates;
};

SolveResult monotone_iterate(double kappa, const KernelMatrix& K, const Field& Pmu, double p,
                             const IterationOptions& opts = {});

struct NewtonOptions {
  double tol = 1e-10;      // on residual_sup
  int max_steps = 25;
  double min_rcond = 1e-9; // NearFoldError below this reciprocal condition estimate
};

struct NewtonResult {
  Field solution;
  int steps = 0;
  std::vector<double> residuals;  // residual_sup before each step and after the last
};

/// Newton on Phi(u) = u - kappa Pmu - G[u_+^p] with Jacobian I - K diag(p u_+^{p-1}).
/// Throws NearFoldError on a numerically singular Jacobian and IterationLimitError
/// when the residual does not reach tol.
NewtonResult newton_refine(const Field& u0, double kappa, const KernelMatrix& K, const Field& Pmu, double p,
                           const NewtonOptions& opts = {});

/// Dense Jacobian I - K diag(p u_+^{p-1}).
Eigen::MatrixXd newton_jacobian(const KernelMatrix& K, const Field& u, double p);

struct KappaStarEstimate {
  double lower = 0.0;  // largest probed kappa with a converged iteration
  double upper = 0.0;  // smallest probed kappa with a diverged iteration
  double width = 0.0;
  int probes = 0;
};

/// Bisection on the converge / diverge dichotomy of monotone_iterate. Probes that
/// hit the iteration limit are treated as undetermined and the bracket is shrunk
/// from both sides instead. Throws BracketError unless lo converges and hi diverges.
KappaStarEstimate estimate_kappa_star(const KernelMatrix& K, const Field& Pmu, double p, double lo, double hi,
                                      double tol, const IterationOptions& opts = {});

}  // namespace halfspace
