#include "halfspace/special_functions.hpp"

#include <cmath>
#include <numbers>

#include "halfspace/errors.hpp"

namespace halfspace {

namespace {

constexpr double kEps = 1e-17;
constexpr int kMaxTerms = 500;

BesselK01 series(double x) {
  const double t = 0.25 * x * x;
  const double log_half = std::log(0.5 * x);
  const double gamma = std::numbers::egamma;

  // term_k = t^k / (k!)^2, term1_k = t^k / (k! (k+1)!)
  double term = 1.0, term1 = 1.0;
  double harmonic = 0.0;  // H_k
  double i0 = 1.0, i1_sum = 1.0;
  double k0_tail = 0.0;
  double k1_tail = (1.0 - 2.0 * gamma);  // psi(1) + psi(2) = 1 - 2 gamma
  for (int k = 1; k < kMaxTerms; ++k) {
    term *= t / (double(k) * k);
    term1 *= t / (double(k) * (k + 1));
    harmonic += 1.0 / k;
    i0 += term;
    i1_sum += term1;
    k0_tail += harmonic * term;
    // psi(k+1) + psi(k+2) = 2 H_k + 1/(k+1) - 2 gamma
    k1_tail += (2.0 * harmonic + 1.0 / (k + 1) - 2.0 * gamma) * term1;
    if (term < kEps * i0 && term1 < kEps * i1_sum) break;
  }
  const double i1 = 0.5 * x * i1_sum;
  BesselK01 out;
  out.k0 = -(log_half + gamma) * i0 + k0_tail;
  out.k1 = 1.0 / x + log_half * i1 - 0.25 * x * k1_tail;
  return out;
}

BesselK01 steed_cf2(double x) {
  double b = 2.0 * (1.0 + x);
  double d = 1.0 / b;
  double h = d, delh = d;
  double q1 = 0.0, q2 = 1.0;
  const double a1 = 0.25;
  double q = a1, c = a1;
  double a = -a1;
  double s = 1.0 + q * delh;
  for (int i = 2; i <= kMaxTerms; ++i) {
    a -= 2.0 * (i - 1);
    c = -a * c / i;
    const double qnew = (q1 - b * q2) / a;
    q1 = q2;
    q2 = qnew;
    q += c * qnew;
    b += 2.0;
    d = 1.0 / (b + a * d);
    delh = (b * d - 1.0) * delh;
    h += delh;
    const double dels = q * delh;
    s += dels;
    if (std::abs(dels / s) < kEps) break;
  }
  h *= a1;
  BesselK01 out;
  out.k0 = std::sqrt(std::numbers::pi / (2.0 * x)) * std::exp(-x) / s;
  out.k1 = out.k0 * (x + 0.5 - h) / x;
  return out;
}

}  // namespace

BesselK01 bessel_k01(double x) {
  if (!(x > 0.0)) throw DomainError("bessel_k01: argument must be positive");
  return x <= 2.0 ? series(x) : steed_cf2(x);
}

double bessel_k0(double x) { return bessel_k01(x).k0; }
double bessel_k1(double x) { return bessel_k01(x).k1; }

}  // namespace halfspace
