#pragma once

// Empirical checks of the kernel estimates, the integral inequality for G on
// weighted Lebesgue spaces, and the order structure of the monotone iteration.
// Every check is deterministic for a given seed.

#include <cstdint>
#include <string>
#include <vector>

#include "halfspace/solver.hpp"

namespace halfspace {

struct CheckReport {
  std::string name;
  bool passed = false;
  double statistic = 0.0;  // max violation, fitted exponent, or ratio spread, per check
  std::string details;
  long samples = 0;
};

/// Pass thresholds.
inline constexpr double kMassTol = 1e-4;
inline constexpr double kSymmetryTol = 1e-12;
inline constexpr double kGestSlack = 1e-12;
inline constexpr double kSemigroupTol = 1e-4;
inline constexpr double kSlopeTol = 0.05;
inline constexpr double kGlaaGrowthTol = 0.10;
inline constexpr double kSharpnessTol = 0.10;
inline constexpr double kStructureSlack = 1e-10;

/// poisson_mass, green_symmetry, green_positivity, green_bound, poisson_semigroup,
/// poisson_near_ratio. Random points use heights log-uniform in [1e-3, 3] and
/// lateral coordinates uniform in [-2, 2]. The semigroup identity needs quadrature
/// over R^{N-1} and is checked on min(samples, 8) triples for N >= 2.
std::vector<CheckReport> verify_kernel_identities(int N, long samples, std::uint64_t seed);

/// theta condition -1 - 1/s < theta < N - 1 - N/s with 1 <= s < N/(N-2).
bool gintest_admissible(int N, double s, double theta);

/// (int (G(x, y) h(y_N)^theta)^s dy)^{1/s} by nested adaptive quadrature.
double gintest_integral(int N, double s, double theta, double x_height);

/// Least-squares slope of log I against log x_N over the given heights, compared with
/// 2 + theta - N (1 - 1/s). Throws PreconditionError for inadmissible (s, theta).
CheckReport verify_gintest_scaling(int N, double s, double theta, const std::vector<double>& heights);

/// The four exponent conditions of the L^q_alpha -> L^r_beta bound for G.
bool glaa_admissible(int N, double q, double alpha, double r, double beta);

struct GlaaOptions {
  int nodes = 500;        // N = 1: height nodes of the coarse grid; the fine grid doubles it
  int nodes_axis = 20;    // N >= 2: nodes per axis of the coarse grid; the fine grid uses 1.4x
  double extent = 20.0;   // H (and R for N >= 2, halved)
};

/// Max of ||G[f]||_{L^r_beta} / ||f||_{L^q_alpha} over a seeded family (Gaussian bumps with
/// scale >= 0.05 and boundary profiles x_N^{-gamma} e^{-x_N - |x'|} with gamma < alpha + 1/q),
/// on a coarse and a refined grid. Passes if the max grows by at most 10%.
CheckReport verify_glaa_boundedness(int N, double q, double alpha, double r, double beta, int family_size,
                                    std::uint64_t seed, const GlaaOptions& opts = {});

/// f = x_N^{-2} (log 1/x_N)^{-sigma} on the half ball |x| < 1/2. Fits the truncated moment
/// M(eps) = int_{x_N > eps} x_N f dx to a + b (log 1/eps)^{1-sigma} / (1 - sigma) and passes if
/// b matches the boundary cross-section of the half ball within 10%. Requires 1/q < sigma < 1.
CheckReport verify_glaa_sharpness(int N, double q, double sigma);

/// Boundedness for (q, alpha, r, beta) plus sharpness for sigma in {0.6, 0.8}.
std::vector<CheckReport> verify_glaa(int N, double q, double alpha, double r, double beta, int family_size,
                                     std::uint64_t seed);

/// For kappas below kappa*: iterate domination U_j^k <= (k/k') U_j^{k'} for k < k',
/// monotonicity in j, strict ordering of the limits, u >= kappa Pmu, and lambda > 1.
/// A kappa whose iteration does not converge fails every check.
std::vector<CheckReport> verify_solution_structure(const std::vector<double>& kappas, const KernelMatrix& K,
                                                   const Field& Pmu, double p,
                                                   const IterationOptions& opts = {});

}  // namespace halfspace
