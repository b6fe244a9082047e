#pragma once

// Pseudo-arclength continuation of Phi(u, kappa) = u - kappa Pmu - G[u_+^p] = 0.
//
// Unknown z = (u, kappa). Each step predicts along the unit tangent T
// (||T_u||_inf + |T_kappa| = 1) and corrects on the hyperplane through the
// predictor orthogonal to T in <a, b> = mean(a_u b_u) + a_kappa b_kappa.
// The corrector is a chord iteration on the bordered Jacobian
//
//   [ I - K diag(p u_+^{p-1})   -Pmu    ]
//   [ T_u^T / n                 T_kappa ]
//
// factored once per accepted point.

#include <optional>
#include <string>
#include <vector>

#include "halfspace/solver.hpp"

namespace halfspace {

struct ContinuationOptions {
  double step = 0.05;
  double min_step = 1e-5;
  double max_step = 0.2;
  double grow = 1.3;
  int grow_after = 3;            // consecutive successes before growing the step
  int max_points = 400;
  double newton_tol = 1e-10;     // residual_sup of every stored point
  int corrector_iterations = 40;  // chord iterations per factorization
  double fold_tol = 1e-10;       // |T_kappa| at the refined fold point
  double stop_kappa = 0.0;       // after the fold, stop below this; <= 0 means start_kappa
  double norm_q = 4.0;           // exponents of the reported L^q_alpha norm
  double norm_alpha = 0.0;
  IterationOptions start;
  PowerIterationOptions eigen;
};

struct BranchPoint {
  double kappa = 0.0;
  Field field;
  double sup_norm = 0.0;
  double lq_alpha_norm = 0.0;
  double lambda = 0.0;
  double arclength = 0.0;
  bool fold_flag = false;
  Eigen::VectorXd tangent;       // field part of the unit tangent
  double tangent_kappa = 0.0;
};

struct Branch {
  std::vector<BranchPoint> points;
  std::optional<std::size_t> fold_index;
  std::string termination;
};

/// Throws PreconditionError when the monotone iteration does not converge at start_kappa.
Branch trace_branch(double start_kappa, const KernelMatrix& K, const Field& Pmu, double p,
                    const ContinuationOptions& opts = {});

struct FoldEstimate {
  double kappa = 0.0;
  BranchPoint point;
};

/// Vertex of the parabola through kappa(s) at the three points around the turning point.
/// Throws NotFoundError if the branch never turns.
FoldEstimate detect_fold(const Branch& branch);

struct KappaSolutions {
  std::vector<Field> fields;  // in branch order
  std::string warning;        // empty unless kappa lies beyond the traced range
};

/// Every crossing of the branch with the given kappa, refined by Newton at fixed kappa.
KappaSolutions solutions_at_kappa(const Branch& branch, double kappa, const KernelMatrix& K, const Field& Pmu,
                                  double p, const NewtonOptions& opts = {});

}  // namespace halfspace
