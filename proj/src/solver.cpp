#include "halfspace/solver.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace halfspace {

namespace {

Eigen::VectorXd positive_power(const Eigen::VectorXd& v, double p) {
  return v.array().max(0.0).pow(p).matrix();
}

void check_shapes(const KernelMatrix& K, const Field& a, const Field& b, const char* who) {
  if (a.grid != K.grid || b.grid != K.grid) throw ShapeError(std::string(who) + ": grid mismatch");
}

}  // namespace

Field psi_map(const Field& v, double kappa, const KernelMatrix& K, const Field& Pmu, double p) {
  check_shapes(K, v, Pmu, "psi_map");
  Eigen::VectorXd out = K.entries * positive_power(v.values, p);
  out += kappa * Pmu.values;
  return {K.grid, std::move(out)};
}

double residual_sup(const Field& u, double kappa, const KernelMatrix& K, const Field& Pmu, double p) {
  const Field psi = psi_map(u, kappa, K, Pmu, p);
  return (u.values - psi.values).cwiseAbs().maxCoeff();
}

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Converged: return "converged";
    case SolveStatus::Diverged: return "diverged";
    default: return "iteration-limit";
  }
}

SolveResult monotone_iterate(double kappa, const KernelMatrix& K, const Field& Pmu, double p,
                             const IterationOptions& opts) {
  if (!(kappa > 0.0)) throw PreconditionError("monotone_iterate: kappa must be positive");
  if (!(p > 1.0)) throw PreconditionError("monotone_iterate: p must exceed 1");
  if (Pmu.grid != K.grid) throw ShapeError("monotone_iterate: grid mismatch");

  SolveResult res;
  Eigen::VectorXd U;
  switch (opts.start) {
    case StartGuess::ScaledBoundary: U = kappa * Pmu.values; break;
    case StartGuess::Boundary: U = Pmu.values; break;
    case StartGuess::Zero: U = Eigen::VectorXd::Zero(Pmu.size()); break;
  }
  if (opts.record_iterates > 0) res.iterates.emplace_back(K.grid, U);

  Eigen::VectorXd next(U.size());
  int growing = 0;
  for (int j = 1; j <= opts.max_iter; ++j) {
    next.noalias() = K.entries * positive_power(U, p);
    next += kappa * Pmu.values;
    const double inc = (next - U).cwiseAbs().maxCoeff();
    const double size = next.cwiseAbs().maxCoeff();
    U.swap(next);
    res.iterations = j;
    res.increments.push_back(inc);
    if (static_cast<int>(res.iterates.size()) < opts.record_iterates) res.iterates.emplace_back(K.grid, U);

    if (!std::isfinite(size) || size > opts.blowup_cap) {
      res.status = SolveStatus::Diverged;
      break;
    }
    if (inc < opts.tol * size) {
      res.status = SolveStatus::Converged;
      break;
    }
    const std::size_t m = res.increments.size();
    growing = (m >= 2 && inc > res.increments[m - 2]) ? growing + 1 : 0;
    if (growing >= opts.growth_window) {
      res.status = SolveStatus::Diverged;
      break;
    }
  }
  res.solution = Field(K.grid, U);
  if (res.status != SolveStatus::Diverged) res.residual_sup = residual_sup(res.solution, kappa, K, Pmu, p);
  else res.residual_sup = std::numeric_limits<double>::infinity();
  return res;
}

Eigen::MatrixXd newton_jacobian(const KernelMatrix& K, const Field& u, double p) {
  const Eigen::VectorXd a = linearization_weight(u, p);
  Eigen::MatrixXd J = -(K.entries * a.asDiagonal());
  J.diagonal().array() += 1.0;
  return J;
}

NewtonResult newton_refine(const Field& u0, double kappa, const KernelMatrix& K, const Field& Pmu, double p,
                           const NewtonOptions& opts) {
  check_shapes(K, u0, Pmu, "newton_refine");
  NewtonResult out;
  Eigen::VectorXd u = u0.values;
  auto residual_vec = [&](const Eigen::VectorXd& v) {
    Eigen::VectorXd r = v - kappa * Pmu.values;
    r.noalias() -= K.entries * positive_power(v, p);
    return r;
  };
  Eigen::VectorXd r = residual_vec(u);
  double rs = r.cwiseAbs().maxCoeff();
  out.residuals.push_back(rs);
  while (rs > opts.tol) {
    if (out.steps >= opts.max_steps)
      throw IterationLimitError("newton_refine: residual did not reach tolerance", rs);
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(newton_jacobian(K, Field(K.grid, u), p));
    const double rc = lu.rcond();
    if (!(rc >= opts.min_rcond)) throw NearFoldError("newton_refine: Jacobian is numerically singular", rc);
    u -= lu.solve(r);
    r = residual_vec(u);
    const double next = r.cwiseAbs().maxCoeff();
    ++out.steps;
    out.residuals.push_back(next);
    if (!std::isfinite(next)) throw IterationLimitError("newton_refine: iteration blew up", next);
    rs = next;
  }
  out.solution = Field(K.grid, u);
  return out;
}

KappaStarEstimate estimate_kappa_star(const KernelMatrix& K, const Field& Pmu, double p, double lo, double hi,
                                      double tol, const IterationOptions& opts) {
  if (!(lo > 0.0) || !(hi > lo)) throw BracketError("estimate_kappa_star: need 0 < lo < hi");
  if (!(tol > 0.0)) throw PreconditionError("estimate_kappa_star: tol must be positive");
  KappaStarEstimate est;
  auto probe = [&](double kappa) {
    ++est.probes;
    return monotone_iterate(kappa, K, Pmu, p, opts).status;
  };
  if (probe(lo) != SolveStatus::Converged) throw BracketError("estimate_kappa_star: iteration does not converge at lo");
  if (probe(hi) != SolveStatus::Diverged) throw BracketError("estimate_kappa_star: iteration does not diverge at hi");

  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const SolveStatus s = probe(mid);
    if (s == SolveStatus::Converged) {
      lo = mid;
    } else if (s == SolveStatus::Diverged) {
      hi = mid;
    } else {
      const double a = lo + 0.5 * (mid - lo), b = mid + 0.5 * (hi - mid);
      bool moved = false;
      if (probe(a) == SolveStatus::Converged) lo = a, moved = true;
      if (probe(b) == SolveStatus::Diverged) hi = b, moved = true;
      if (!moved) throw IterationLimitError("estimate_kappa_star: probes near the threshold are undetermined", hi - lo);
    }
  }
  est.lower = lo;
  est.upper = hi;
  est.width = hi - lo;
  return est;
}

}  // namespace halfspace
