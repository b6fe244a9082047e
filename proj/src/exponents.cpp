#include "halfspace/exponents.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

namespace halfspace {

namespace {
using Cmp = ExponentCompare<double>;
constexpr int kMaxStabilizationIndex = 10'000'000;
}  // namespace

double ExtendedReal::value() const {
  if (infinite_) throw DomainError("ExtendedReal: value() of infinity");
  return value_;
}

std::string ExtendedReal::to_string() const {
  if (infinite_) return "inf";
  std::ostringstream os;
  os.precision(17);
  os << value_;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const ExtendedReal& x) { return os << x.to_string(); }

CriticalExponents critical_exponents(int N) {
  if (N < 1) throw DomainError("critical_exponents: N must be >= 1");
  CriticalExponents out{ExtendedReal::infinity(), ExtendedReal::infinity()};
  const double n = N;
  if (N >= 3) out.sobolev = (n + 2.0) / (n - 2.0);
  if (N >= 11) {
    out.joseph_lundgren = (n * n - 8.0 * n + 4.0 + 8.0 * std::sqrt(n - 1.0)) / ((n - 2.0) * (n - 10.0));
  }
  return out;
}

std::string to_string(AdmissibilityCondition c) {
  switch (c) {
    case AdmissibilityCondition::QAboveP: return "q>p";
    case AdmissibilityCondition::BoundaryGrowth: return "1/q+alpha<2/p";
    case AdmissibilityCondition::ScalingBound: return "N/q+alpha<2/(p-1)";
    case AdmissibilityCondition::NonnegativeWeight: return "alpha>=0";
  }
  return "unknown";
}

bool check_besov_region(int N, double p, double q, double s) {
  if (N < 2) throw DomainError("check_besov_region: boundary of the half line is a point (N must be >= 2)");
  if (!(p > 1.0)) throw DomainError("check_besov_region: p must exceed 1");
  const double q_floor = std::max(p, 0.5 * N * (p - 1.0));
  const double s_ceiling = std::min(2.0 / p, 2.0 / (p - 1.0) - (N - 1.0) / q);
  return Cmp::less(q_floor, q) && Cmp::less(s, s_ceiling);
}

std::optional<BesovWitness> bounded_measure_witness(int N, double p) {
  if (N < 2) throw DomainError("bounded_measure_witness: N must be >= 2");
  if (!(p > 1.0) || !(p < (N + 1.0) / (N - 1.0))) return std::nullopt;
  // q slightly above max{p, N(p-1)/2}, s slightly above (N-1)(1-1/q).
  const double q_floor = std::max(p, 0.5 * N * (p - 1.0));
  for (double eps = 1e-1; eps > 1e-9; eps *= 0.5) {
    const double q = q_floor * (1.0 + eps);
    const double s = (N - 1.0) * (1.0 - 1.0 / q) + eps;
    if (s > 0.0 && check_besov_region(N, p, q, s)) return BesovWitness{q, s};
  }
  return std::nullopt;
}

EnergyExponentWindow energy_exponent_window(double p) {
  if (!(p > 1.0)) throw DomainError("energy_exponent_window: p must exceed 1");
  return {1.0, p + std::sqrt(p * p - p)};
}

bool in_energy_window(double nu, double p) {
  if (nu < 1.0) return false;
  return Cmp::less(nu * nu / (2.0 * nu - 1.0), p);
}

double tau(int N, double p, double q, double alpha) {
  const auto adm = check_admissible<double>(N, p, q, alpha);
  if (!adm.valid) throw PreconditionError("tau: (q, alpha) is not admissible");
  if (N == 1) return 2.0 - (p - 1.0) / q;
  const double delta = 2.0 - (p - 1.0) * (N / q + alpha);
  return std::min(2.0 / N - (p - 1.0) / q, delta / (N - 1.0));
}

DSetParams make_dset_params(int N, double p, double q, double alpha, double r0, double beta0) {
  DSetParams out;
  out.N = N;
  out.p = p;
  out.q = q;
  out.alpha = alpha;
  out.r0 = r0;
  out.beta0 = beta0;
  out.tau = tau(N, p, q, alpha);  // validates admissibility
  out.delta = 2.0 - (p - 1.0) * (N / q + alpha);
  if (!(r0 > 1.0)) throw PreconditionError("make_dset_params: r0 must exceed 1");
  if (!Cmp::less(1.0 / r0, 1.0 - (p - 1.0) / q))
    throw PreconditionError("make_dset_params: 1/r0 < 1 - (p-1)/q violated");
  if (!Cmp::less(1.0 / r0 + beta0, 2.0 - (p - 1.0) * (1.0 / q + alpha)))
    throw PreconditionError("make_dset_params: 1/r0 + beta0 < 2 - (p-1)(1/q + alpha) violated");
  return out;
}

double beta_j(int j, double r, const DSetParams& params) {
  if (j < 0) throw DomainError("beta_j: j must be nonnegative");
  if (!(r > 1.0)) throw DomainError("beta_j: r must exceed 1");
  const double drift = params.beta0 + params.N * (1.0 / params.r0 - 1.0 / r) - j * params.delta;
  return std::max(drift, -1.0 - 1.0 / r);
}

bool d_membership(int j, double r, double beta, const DSetParams& params) {
  if (j < 0) throw DomainError("d_membership: j must be nonnegative");
  if (j == 0) return r == params.r0 && beta == params.beta0;
  if (!(r > 1.0)) return false;
  const double inv_r = 1.0 / r;
  const double lo = 1.0 / params.r0 - j * params.tau;
  const double hi = 1.0 / params.r0 + j * (params.p - 1.0) / params.q;
  return lo < inv_r && inv_r < hi && beta > beta_j(j, r, params);
}

bool in_limit_set(double r, double beta) { return r > 1.0 && 1.0 / r + beta > -1.0; }

int stabilization_index(const DSetParams& params) {
  if (!(params.tau > 0.0) || !(params.delta > 0.0))
    throw PreconditionError("stabilization_index: parameters were not built by make_dset_params");
  const double inv_r0 = 1.0 / params.r0;
  const double growth = (params.p - 1.0) / params.q;
  const double excess = params.beta0 + params.N * inv_r0 + 1.0;
  for (int j = 1; j <= kMaxStabilizationIndex; ++j) {
    const bool lower_covered = Cmp::less_equal(inv_r0 - j * params.tau, 0.0);
    const bool upper_covered = Cmp::less_equal(1.0, inv_r0 + j * growth);
    const bool beta_settled = Cmp::less_equal(excess - j * params.delta, 0.0);
    if (lower_covered && upper_covered && beta_settled) return j;
  }
  throw PreconditionError("stabilization_index: no finite index found");
}

}  // namespace halfspace
