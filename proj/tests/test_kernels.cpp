#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "halfspace/kernels.hpp"

using namespace halfspace;
using Pt = HalfSpacePoint<double>;

namespace {
Pt point(int N, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> lat(-2.0, 2.0), h(0.01, 3.0);
  Pt::Lateral l(N - 1);
  for (int k = 0; k < N - 1; ++k) l(k) = lat(rng);
  return {l, h(rng)};
}
}  // namespace

TEST_CASE("fundamental solution") {
  CHECK(fundamental_E(1, 0.5) == doctest::Approx(0.3032653).epsilon(1e-7));
  CHECK(fundamental_E(3, 1.0) == doctest::Approx(std::exp(-1.0) / (4 * std::numbers::pi)).epsilon(1e-15));
  CHECK(fundamental_E(3, 1.0) == doctest::Approx(0.0292749).epsilon(1e-6));
  CHECK(fundamental_dE(1, 1.0) == doctest::Approx(-std::exp(-1.0) / 2));
  CHECK(fundamental_dE(3, 1.0) == doctest::Approx(-std::exp(-1.0) / (2 * std::numbers::pi)));
  for (int N = 1; N <= 3; ++N)
    for (double r = 0.1; r <= 10.0; r += 0.05) {
      const double h = 1e-5;
      const double fd = (fundamental_E(N, r + h) - fundamental_E(N, r - h)) / (2 * h);
      CHECK(std::abs(fd - fundamental_dE(N, r)) <= 1e-6);
      CHECK(fundamental_dE(N, r) < 0.0);
    }
  // -E'' + E = 0 away from 0 (N = 1) and the radial form for N = 3.
  for (double r : {0.3, 1.0, 4.0}) {
    const double h = 1e-4;
    for (int N : {1, 3}) {
      const double e2 = (fundamental_E(N, r + h) - 2 * fundamental_E(N, r) + fundamental_E(N, r - h)) / (h * h);
      const double lap = e2 + (N - 1) / r * fundamental_dE(N, r);
      CHECK(std::abs(-lap + fundamental_E(N, r)) < 1e-5 * fundamental_E(N, r) + 1e-8);
    }
  }
  // E'(0+) = -1/2 in 1D: the jump of E' across 0 is -1.
  CHECK(fundamental_dE(1, 1e-12) == doctest::Approx(-0.5));
  CHECK_THROWS_AS(fundamental_E(4, 1.0), UnsupportedDimensionError);
  CHECK_THROWS_AS(fundamental_E(1, 0.0), DomainError);
}

TEST_CASE("Green function") {
  CHECK(green_G(1, Pt({}, 1.0), Pt({}, 2.0)) == doctest::Approx((std::exp(-1.0) - std::exp(-3.0)) / 2).epsilon(1e-7));
  std::mt19937_64 rng(11);
  for (int N = 1; N <= 3; ++N)
    for (int i = 0; i < 2000; ++i) {
      const Pt x = point(N, rng), y = point(N, rng);
      const double r = std::sqrt((x.lateral - y.lateral).squaredNorm() + std::pow(x.height - y.height, 2));
      const double g = green_G(N, x, y);
      CHECK(g > 0.0);
      CHECK(g == doctest::Approx(green_G(N, y, x)).epsilon(1e-12));
      // Naive difference of the two free-space terms where it is well conditioned.
      const Pt xs = x.reflected();
      const double r2 = std::sqrt((xs.lateral - y.lateral).squaredNorm() + std::pow(xs.height - y.height, 2));
      if (x.height * y.height > 0.05) CHECK(g == doctest::Approx(fundamental_E(N, r) - fundamental_E(N, r2)).epsilon(1e-9));
      CHECK(g <= std::min(fundamental_E(N, r), 4 * x.height * y.height * std::abs(fundamental_dE(N, r)) / r) *
                     (1 + 1e-12));
    }
  CHECK_THROWS_AS(green_G(1, Pt({}, 1.0), Pt({}, 1.0)), SingularityError);
  CHECK_THROWS_AS(green_G(1, Pt({}, -1.0), Pt({}, 1.0)), DomainError);
}

TEST_CASE("Green function near the boundary keeps relative accuracy") {
  // Both points within 1e-8 of the boundary: the reflection terms nearly cancel.
  const double x = 1e-9, y = 2e-9;
  const double exact = std::exp(-(y - x)) * -std::expm1(-2 * x) / 2;
  CHECK(green_G(1, Pt({}, x), Pt({}, y)) == doctest::Approx(exact).epsilon(1e-14));
}

TEST_CASE("Poisson kernel") {
  CHECK(poisson_P(1, Pt({}, 0.7), Pt::Lateral(0)) == doctest::Approx(0.4965853).epsilon(1e-7));
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    const Pt x = point(3, rng);
    Pt::Lateral z(2);
    z << 0.3, -0.2;
    const double rho = std::sqrt((x.lateral - z).squaredNorm() + x.height * x.height);
    const double closed = x.height * (1 + rho) * std::exp(-rho) / (2 * std::numbers::pi * std::pow(rho, 3));
    CHECK(poisson_P(3, x, z) == doctest::Approx(closed).epsilon(1e-13));
    // Normal derivative of G at the boundary point (z, 0).
    for (int N : {2, 3}) {
      Pt::Lateral zz = z.head(N - 1);
      Pt xx(x.lateral.head(N - 1), x.height);
      const double s = 1e-6;
      const double fd = green_G(N, xx, Pt(zz, s)) / s;
      CHECK(fd == doctest::Approx(poisson_P(N, xx, zz)).epsilon(1e-5));
    }
  }
}
