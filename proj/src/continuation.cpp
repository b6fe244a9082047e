#include "halfspace/continuation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

namespace halfspace {

namespace {

struct State {
  Eigen::VectorXd u;
  double kappa = 0.0;
};

struct Tangent {
  Eigen::VectorXd u;
  double kappa = 0.0;
};

double sup_distance(const State& a, const State& b) {
  return (a.u - b.u).cwiseAbs().maxCoeff() + std::abs(a.kappa - b.kappa);
}

// LU of the bordered Jacobian at one state. The last row can be swapped for
// another one afterwards through a rank-one (Sherman-Morrison) correction.
class BorderedLU {
 public:
  BorderedLU(const KernelMatrix& K, const Field& Pmu, double p, const State& z, const Eigen::VectorXd& row)
      : n_(K.size()), row_(row), delta_(Eigen::VectorXd::Zero(K.size() + 1)) {
    Eigen::MatrixXd A(n_ + 1, n_ + 1);
    A.topLeftCorner(n_, n_) = newton_jacobian(K, Field(K.grid, z.u), p);
    A.col(n_).head(n_) = -Pmu.values;
    A.row(n_) = row.transpose();
    lu_.compute(A);
    w_ = lu_.solve(Eigen::VectorXd::Unit(n_ + 1, n_));
  }

  void set_row(const Eigen::VectorXd& row) { delta_ = row - row_; }

  Eigen::VectorXd solve(const Eigen::VectorXd& b) const {
    Eigen::VectorXd x = lu_.solve(b);
    const double dw = delta_.dot(w_);
    if (delta_.cwiseAbs().maxCoeff() > 0.0) x -= w_ * (delta_.dot(x) / (1.0 + dw));
    return x;
  }

 private:
  Eigen::Index n_;
  Eigen::VectorXd row_, delta_, w_;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
};

struct StepResult {
  State z;
  Tangent t;
  std::unique_ptr<BorderedLU> lu;
};

class Tracer {
 public:
  Tracer(const KernelMatrix& K, const Field& Pmu, double p, const ContinuationOptions& o)
      : K_(K), Pmu_(Pmu), p_(p), o_(o), n_(K.size()) {}

  Eigen::VectorXd residual(const State& z) const {
    Eigen::VectorXd r = z.u - z.kappa * Pmu_.values;
    r.noalias() -= K_.entries * z.u.array().max(0.0).pow(p_).matrix();
    return r;
  }

  Eigen::VectorXd border(const Tangent& t) const {
    Eigen::VectorXd row(n_ + 1);
    row.head(n_) = t.u / double(n_);
    row(n_) = t.kappa;
    return row;
  }

  Tangent tangent(const BorderedLU& lu) const {
    const Eigen::VectorXd s = lu.solve(Eigen::VectorXd::Unit(n_ + 1, n_));
    const double scale = s.head(n_).cwiseAbs().maxCoeff() + std::abs(s(n_));
    return {s.head(n_) / scale, s(n_) / scale};
  }

  std::unique_ptr<BorderedLU> factor(const State& z, const Tangent& t) const {
    return std::make_unique<BorderedLU>(K_, Pmu_, p_, z, border(t));
  }

  // Chord iteration on (Phi = 0, <t, z - zp> = 0) with a fixed bordered matrix.
  // The sup residual of a chord iteration is not monotone, so only real growth
  // (ten times the best residual so far) counts as failure.
  std::optional<State> chord(const State& zp, const Tangent& t, const BorderedLU& lu) const {
    State z = zp;
    Eigen::VectorXd rhs(n_ + 1);
    double best = std::numeric_limits<double>::infinity();
    for (int it = 0; it <= o_.corrector_iterations; ++it) {
      const Eigen::VectorXd F = residual(z);
      const double g = t.u.dot(z.u - zp.u) / double(n_) + t.kappa * (z.kappa - zp.kappa);
      const double fs = F.cwiseAbs().maxCoeff();
      if (!std::isfinite(fs) || fs > 10.0 * best) return std::nullopt;
      if (fs <= o_.newton_tol && std::abs(g) <= o_.newton_tol) return z;
      best = std::min(best, fs);
      rhs.head(n_) = -F;
      rhs(n_) = -g;
      const Eigen::VectorXd d = lu.solve(rhs);
      z.u += d.head(n_);
      z.kappa += d(n_);
    }
    return std::nullopt;
  }

  // Full Newton on the same system, refactoring at every iterate.
  std::optional<State> newton(const State& zp, const Tangent& t) const {
    State z = zp;
    Eigen::VectorXd rhs(n_ + 1);
    for (int it = 0; it <= 8; ++it) {
      const Eigen::VectorXd F = residual(z);
      const double g = t.u.dot(z.u - zp.u) / double(n_) + t.kappa * (z.kappa - zp.kappa);
      const double fs = F.cwiseAbs().maxCoeff();
      if (!std::isfinite(fs)) return std::nullopt;
      if (fs <= o_.newton_tol && std::abs(g) <= o_.newton_tol) return z;
      rhs.head(n_) = -F;
      rhs(n_) = -g;
      const Eigen::VectorXd d = factor(z, t)->solve(rhs);
      z.u += d.head(n_);
      z.kappa += d(n_);
    }
    return std::nullopt;
  }

  // Predictor-corrector step of length sigma from (z0, t0); lu0 is the bordered
  // LU at z0 and gets its last row switched to t0.
  std::optional<StepResult> step(const State& z0, const Tangent& t0, BorderedLU& lu0, double sigma) const {
    const State zp{z0.u + sigma * t0.u, z0.kappa + sigma * t0.kappa};
    lu0.set_row(border(t0));
    std::optional<State> z = chord(zp, t0, lu0);
    if (!z) z = chord(zp, t0, *factor(zp, t0));
    if (!z) z = newton(zp, t0);
    if (!z || !(z->kappa > 0.0) || sup_distance(*z, zp) > 0.5 * sigma) return std::nullopt;
    StepResult out{std::move(*z), {}, nullptr};
    out.lu = factor(out.z, t0);
    out.t = tangent(*out.lu);
    return out;
  }

 private:
  const KernelMatrix& K_;
  const Field& Pmu_;
  double p_;
  const ContinuationOptions& o_;
  Eigen::Index n_;
};

}  // namespace

Branch trace_branch(double start_kappa, const KernelMatrix& K, const Field& Pmu, double p,
                    const ContinuationOptions& o) {
  if (!(start_kappa > 0.0)) throw PreconditionError("trace_branch: start_kappa must be positive");
  if (!(o.step > 0.0) || !(o.min_step > 0.0) || !(o.max_step >= o.min_step))
    throw PreconditionError("trace_branch: invalid step bounds");
  if (Pmu.grid != K.grid) throw ShapeError("trace_branch: grid mismatch");

  const SolveResult first = monotone_iterate(start_kappa, K, Pmu, p, o.start);
  if (first.status != SolveStatus::Converged)
    throw PreconditionError("trace_branch: no solution at start_kappa (monotone iteration " +
                            std::string(to_string(first.status)) + ")");
  NewtonOptions nopt;
  nopt.tol = o.newton_tol;
  const Field u0 = newton_refine(first.solution, start_kappa, K, Pmu, p, nopt).solution;

  const Tracer tr(K, Pmu, p, o);
  const Eigen::Index n = K.size();
  State z{u0.values, start_kappa};
  Tangent up{Eigen::VectorXd::Zero(n), 1.0};  // increasing kappa
  std::unique_ptr<BorderedLU> lu = tr.factor(z, up);
  Tangent t = tr.tangent(*lu);

  Branch br;
  auto push = [&](const State& s, const Tangent& tg, bool fold) {
    BranchPoint bp;
    bp.kappa = s.kappa;
    bp.field = Field(K.grid, s.u);
    bp.sup_norm = sup_norm(bp.field);
    bp.lq_alpha_norm = weighted_norm(bp.field, o.norm_q, o.norm_alpha);
    bp.arclength = 0.0;
    if (!br.points.empty()) {
      const BranchPoint& prev = br.points.back();
      bp.arclength = prev.arclength + (s.u - prev.field.values).cwiseAbs().maxCoeff() + std::abs(s.kappa - prev.kappa);
    }
    bp.fold_flag = fold;
    bp.tangent = tg.u;
    bp.tangent_kappa = tg.kappa;
    if (fold && !br.fold_index) br.fold_index = br.points.size();
    br.points.push_back(std::move(bp));
  };
  push(z, t, false);

  const double stop = o.stop_kappa > 0.0 ? o.stop_kappa : start_kappa;
  double ds = std::clamp(o.step, o.min_step, o.max_step);
  int successes = 0;
  bool turned = false;
  br.termination = "max_points";
  while (static_cast<int>(br.points.size()) < o.max_points) {
    std::optional<StepResult> next = tr.step(z, t, *lu, ds);
    if (!next) {
      ds *= 0.5;
      successes = 0;
      if (ds < o.min_step) {
        br.termination = "step_underflow";
        break;
      }
      continue;
    }

    if ((t.kappa > 0.0) != (next->t.kappa > 0.0)) {
      // Turning point inside (0, ds): regula falsi (Illinois) on sigma -> T_kappa(sigma).
      struct Sample {
        double sigma;
        State z;
        Tangent t;
      };
      std::vector<Sample> samples;
      double a = 0.0, fa = t.kappa, b = ds, fb = next->t.kappa;
      int side = 0;
      std::optional<Sample> fold;
      for (int it = 0; it < 60; ++it) {
        const double c = b - fb * (b - a) / (fb - fa);
        std::optional<StepResult> r = tr.step(z, t, *lu, c);
        if (!r) break;
        samples.push_back({c, r->z, r->t});
        const double fc = r->t.kappa;
        if (std::abs(fc) <= o.fold_tol || b - a < 1e-14) {
          fold = samples.back();
          break;
        }
        if ((fc > 0.0) == (fa > 0.0)) {
          a = c, fa = fc;
          if (side == -1) fb *= 0.5;
          side = -1;
        } else {
          b = c, fb = fc;
          if (side == 1) fa *= 0.5;
          side = 1;
        }
      }
      if (!fold && !samples.empty()) {
        fold = *std::min_element(samples.begin(), samples.end(),
                                 [](const Sample& x, const Sample& y) { return std::abs(x.t.kappa) < std::abs(y.t.kappa); });
      }
      if (fold) {
        const double delta = std::min(1e-2, ds / 4.0);
        if (fold->sigma - delta > 0.0)
          if (auto r = tr.step(z, t, *lu, fold->sigma - delta)) push(r->z, r->t, false);
        push(fold->z, fold->t, true);
        if (fold->sigma + delta < ds)
          if (auto r = tr.step(z, t, *lu, fold->sigma + delta)) push(r->z, r->t, false);
      } else {
        // Could not resolve the turning point; flag the endpoint with the larger |kappa - extremum|.
        br.points.back().fold_flag = true;
        if (!br.fold_index) br.fold_index = br.points.size() - 1;
      }
      turned = true;
    }

    z = std::move(next->z);
    t = std::move(next->t);
    lu = std::move(next->lu);
    push(z, t, false);

    if (++successes >= o.grow_after) {
      ds = std::min(ds * o.grow, o.max_step);
      successes = 0;
    }
    if (turned && z.kappa < stop) {
      br.termination = "below_stop_kappa";
      break;
    }
  }

  for (BranchPoint& bp : br.points) {
    try {
      bp.lambda = linearized_spectrum(K, bp.field, p, o.eigen).lambda;
    } catch (const IterationLimitError&) {
      bp.lambda = std::numeric_limits<double>::quiet_NaN();
    }
  }
  return br;
}

FoldEstimate detect_fold(const Branch& branch) {
  const auto& pts = branch.points;
  std::optional<std::size_t> idx = branch.fold_index;
  if (!idx) {
    for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
      if (pts[i].kappa >= pts[i - 1].kappa && pts[i].kappa > pts[i + 1].kappa) {
        idx = i;
        break;
      }
    }
  }
  if (!idx) throw NotFoundError("detect_fold: the branch has no turning point");
  const std::size_t i = *idx;
  FoldEstimate out{pts[i].kappa, pts[i]};
  if (i == 0 || i + 1 >= pts.size()) return out;

  const double s0 = pts[i - 1].arclength, s1 = pts[i].arclength, s2 = pts[i + 1].arclength;
  const double k0 = pts[i - 1].kappa, k1 = pts[i].kappa, k2 = pts[i + 1].kappa;
  // Newton form of the interpolating parabola k(s) = k0 + d1 (s - s0) + d2 (s - s0)(s - s1).
  const double d01 = (k1 - k0) / (s1 - s0), d12 = (k2 - k1) / (s2 - s1);
  const double d2 = (d12 - d01) / (s2 - s0);
  if (!(std::abs(d2) > 0.0)) return out;
  const double sv = 0.5 * (s0 + s1) - d01 / (2.0 * d2);
  if (sv < s0 || sv > s2) return out;
  out.kappa = k0 + d01 * (sv - s0) + d2 * (sv - s0) * (sv - s1);
  return out;
}

KappaSolutions solutions_at_kappa(const Branch& branch, double kappa, const KernelMatrix& K, const Field& Pmu,
                                  double p, const NewtonOptions& opts) {
  KappaSolutions out;
  const auto& pts = branch.points;
  if (pts.empty()) {
    out.warning = "empty branch";
    return out;
  }
  double kmax = pts.front().kappa;
  for (const auto& bp : pts) kmax = std::max(kmax, bp.kappa);
  if (kappa > kmax) {
    out.warning = "kappa lies above the fold of the traced branch";
    return out;
  }

  std::vector<Eigen::VectorXd> guesses;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double d0 = pts[i].kappa - kappa;
    if (d0 == 0.0) {
      guesses.push_back(pts[i].field.values);
      continue;
    }
    if (i + 1 == pts.size()) break;
    const double d1 = pts[i + 1].kappa - kappa;
    if (d1 != 0.0 && (d0 > 0.0) != (d1 > 0.0)) {
      const double th = d0 / (d0 - d1);
      guesses.push_back((1.0 - th) * pts[i].field.values + th * pts[i + 1].field.values);
    }
  }

  for (const Eigen::VectorXd& g : guesses) {
    Field u;
    try {
      u = newton_refine(Field(K.grid, g), kappa, K, Pmu, p, opts).solution;
    } catch (const NearFoldError&) {
      out.warning = "crossing too close to the fold for Newton at fixed kappa";
      continue;
    } catch (const IterationLimitError&) {
      out.warning = "Newton at fixed kappa did not converge for one crossing";
      continue;
    }
    bool duplicate = false;
    for (const Field& f : out.fields)
      if ((f.values - u.values).cwiseAbs().maxCoeff() <= 1e-8 * std::max(1.0, sup_norm(u))) duplicate = true;
    if (!duplicate) out.fields.push_back(std::move(u));
  }
  if (guesses.empty()) out.warning = "kappa is not crossed by the traced branch";
  return out;
}

}  // namespace halfspace
