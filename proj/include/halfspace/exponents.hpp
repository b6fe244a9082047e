#pragma once

// Critical exponents, admissibility of (q, alpha), the Besov-region test for
// boundary data, and the exponent-set recursion D_j(r0, beta0) used to
// bootstrap integrability of iteration differences.

#include <cmath>
#include <compare>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "halfspace/errors.hpp"

namespace halfspace {

/// A positive real or +infinity. Infinity is a state, never a large float.
class ExtendedReal {
 public:
  constexpr ExtendedReal(double v) : value_(v), infinite_(false) {}  // NOLINT(implicit)
  static constexpr ExtendedReal infinity() { return ExtendedReal(); }

  constexpr bool is_infinite() const { return infinite_; }
  constexpr bool is_finite() const { return !infinite_; }
  /// Throws DomainError when infinite.
  double value() const;

  friend constexpr bool operator==(const ExtendedReal& a, const ExtendedReal& b) {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
  }
  friend constexpr bool operator<(const ExtendedReal& a, const ExtendedReal& b) {
    if (a.infinite_) return false;
    if (b.infinite_) return true;
    return a.value_ < b.value_;
  }
  friend constexpr bool operator>(const ExtendedReal& a, const ExtendedReal& b) { return b < a; }

  std::string to_string() const;

 private:
  constexpr ExtendedReal() : value_(0.0), infinite_(true) {}
  double value_;
  bool infinite_;
};

std::ostream& operator<<(std::ostream& os, const ExtendedReal& x);

/// Exact rational with 64-bit parts; comparisons go through 128-bit cross products.
class Rational {
 public:
  constexpr Rational(std::int64_t n = 0, std::int64_t d = 1) : num_(n), den_(d) { normalize(); }

  constexpr std::int64_t num() const { return num_; }
  constexpr std::int64_t den() const { return den_; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  friend constexpr Rational operator+(Rational a, Rational b) {
    return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
  }
  friend constexpr Rational operator-(Rational a, Rational b) {
    return {a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_};
  }
  friend constexpr Rational operator*(Rational a, Rational b) { return {a.num_ * b.num_, a.den_ * b.den_}; }
  friend constexpr Rational operator/(Rational a, Rational b) {
    if (b.num_ == 0) throw DomainError("Rational: division by zero");
    return {a.num_ * b.den_, a.den_ * b.num_};
  }
  friend constexpr bool operator==(Rational a, Rational b) { return a.num_ == b.num_ && a.den_ == b.den_; }
  friend constexpr std::strong_ordering operator<=>(Rational a, Rational b) {
    const __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
    const __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
    return lhs <=> rhs;
  }

 private:
  constexpr void normalize() {
    if (den_ == 0) throw DomainError("Rational: zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    const std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }
  std::int64_t num_;
  std::int64_t den_;
};

/// Strict / non-strict comparisons used by every exponent inequality.
/// Rationals compare exactly; floating values treat |a - b| <= 1e-12 * max(1, |a|, |b|)
/// as equality, so boundary cases of a strict inequality count as violations.
template <class Scalar>
struct ExponentCompare {
  static constexpr double kRelTol = 1e-12;
  static bool less(const Scalar& a, const Scalar& b) {
    using std::abs;
    const double scale = std::max({1.0, double(abs(a)), double(abs(b))});
    return double(b - a) > kRelTol * scale;
  }
  static bool less_equal(const Scalar& a, const Scalar& b) { return !less(b, a); }
  static double to_double(const Scalar& a) { return double(a); }
};

template <>
struct ExponentCompare<Rational> {
  static bool less(const Rational& a, const Rational& b) { return a < b; }
  static bool less_equal(const Rational& a, const Rational& b) { return a <= b; }
  static double to_double(const Rational& a) { return a.to_double(); }
};

struct CriticalExponents {
  ExtendedReal sobolev;           // p_S
  ExtendedReal joseph_lundgren;   // p_JL
};

/// p_S = (N+2)/(N-2) for N >= 3, infinite otherwise;
/// p_JL = (N^2 - 8N + 4 + 8 sqrt(N-1)) / ((N-2)(N-10)) for N >= 11, infinite otherwise.
CriticalExponents critical_exponents(int N);

enum class AdmissibilityCondition {
  QAboveP,          // q > p
  BoundaryGrowth,   // 1/q + alpha < 2/p
  ScalingBound,     // N/q + alpha < 2/(p-1)
  NonnegativeWeight // alpha >= 0
};

std::string to_string(AdmissibilityCondition c);

struct AdmissiblePair {
  double q = 0.0;
  double alpha = 0.0;
  bool valid = false;
  std::vector<AdmissibilityCondition> violated;
};

template <class Scalar>
AdmissiblePair check_admissible(int N, const Scalar& p, const Scalar& q, const Scalar& alpha) {
  using Cmp = ExponentCompare<Scalar>;
  if (N < 1) throw DomainError("check_admissible: N must be >= 1");
  const Scalar one(1), two(2), n(static_cast<std::int64_t>(N));
  AdmissiblePair out;
  out.q = Cmp::to_double(q);
  out.alpha = Cmp::to_double(alpha);
  if (!Cmp::less(p, q)) out.violated.push_back(AdmissibilityCondition::QAboveP);
  if (!Cmp::less(one / q + alpha, two / p)) out.violated.push_back(AdmissibilityCondition::BoundaryGrowth);
  if (!Cmp::less(n / q + alpha, two / (p - one))) out.violated.push_back(AdmissibilityCondition::ScalingBound);
  if (alpha < Scalar(0)) out.violated.push_back(AdmissibilityCondition::NonnegativeWeight);
  out.valid = out.violated.empty();
  return out;
}

/// mu in B^{-s}_{q,q}(R^{N-1}) region: q > max{p, N(p-1)/2} and s < min{2/p, 2/(p-1) - (N-1)/q}.
/// N = 1 has a point boundary and is rejected with DomainError.
bool check_besov_region(int N, double p, double q, double s);

/// For 1 < p < (N+1)/(N-1), every bounded measure lies in some admissible Besov class:
/// returns a witness (q, s) or nullopt when the construction does not apply.
struct BesovWitness {
  double q;
  double s;
};
std::optional<BesovWitness> bounded_measure_witness(int N, double p);

/// Range of nu >= 1 with nu^2 / (2 nu - 1) < p, i.e. [1, p + sqrt(p^2 - p)).
struct EnergyExponentWindow {
  double lower;
  double upper;  // exclusive
};
EnergyExponentWindow energy_exponent_window(double p);
bool in_energy_window(double nu, double p);

/// Step of the D_j recursion: interval-growth rate for 1/r.
double tau(int N, double p, double q, double alpha);

struct DSetParams {
  int N = 1;
  double p = 0.0;
  double q = 0.0;
  double alpha = 0.0;
  double r0 = 0.0;
  double beta0 = 0.0;
  double tau = 0.0;
  double delta = 0.0;  // 2 - (p-1)(N/q + alpha)
  std::optional<int> j_star;
};

/// Validates admissibility and the starting-pair conditions
/// 1/r0 < 1 - (p-1)/q and 1/r0 + beta0 < 2 - (p-1)(1/q + alpha).
DSetParams make_dset_params(int N, double p, double q, double alpha, double r0, double beta0);

/// max{beta0 + N(1/r0 - 1/r) - j*delta, -1 - 1/r}.
double beta_j(int j, double r, const DSetParams& params);

bool d_membership(int j, double r, double beta, const DSetParams& params);

/// Limit set D_* = {(r, beta): r > 1, 1/r + beta > -1}.
bool in_limit_set(double r, double beta);

/// Smallest j >= 1 with D_j = D_*. Uses the closed conditions
///   1/r0 - j tau <= 0,  1/r0 + j (p-1)/q >= 1,  beta0 + N/r0 + 1 - j delta <= 0.
int stabilization_index(const DSetParams& params);

}  // namespace halfspace
