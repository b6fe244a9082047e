#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fixtures.hpp"
#include "halfspace/verify.hpp"

using namespace halfspace;

TEST_CASE("kernel identities") {
  for (int N = 1; N <= 3; ++N) {
    const auto reports = verify_kernel_identities(N, 2000, 42);
    REQUIRE(reports.size() == 6);
    for (const CheckReport& r : reports) {
      INFO(r.name << ": " << r.details << " statistic " << r.statistic);
      CHECK(r.passed);
      CHECK(r.samples > 0);
    }
  }
  // Same seed, same statistics.
  const auto a = verify_kernel_identities(2, 500, 9), b = verify_kernel_identities(2, 500, 9);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].statistic == b[i].statistic);
  CHECK_THROWS_AS(verify_kernel_identities(4, 10, 1), UnsupportedDimensionError);
}

TEST_CASE("Poisson mass over a disk") {
  // int over the disk of radius 30 of P(x, z) dz for N = 3 at x_N = 0.5, in polar coordinates.
  double s = 0.0;
  const int M = 400000;
  const double R = 30.0, x = 0.5;
  for (int k = 0; k < M; ++k) {
    const double r = R * (k + 0.5) / M;
    s += 2 * std::numbers::pi * r * poisson_from_geometry<double>(3, std::hypot(r, x), x) * (R / M);
  }
  CHECK(std::abs(s - std::exp(-x)) <= 1e-4);
}

TEST_CASE("gintest") {
  CHECK(gintest_admissible(1, 1.0, -1.5));
  CHECK(!gintest_admissible(1, 1.0, 0.0));
  CHECK(!gintest_admissible(3, 3.0, -1.0));  // s >= N/(N-2)
  // Small-x closed form for N = 1, s = 1: int min(x, y) y^{-3/2} dy ~ 4 sqrt(x) as x -> 0.
  const double x = 1e-6;
  CHECK(gintest_integral(1, 1.0, -1.5, x) / std::sqrt(x) == doctest::Approx(4.0).epsilon(1e-2));

  const std::vector<double> heights{1e-5, 3e-5, 1e-4, 3e-4, 1e-3};
  const CheckReport r = verify_gintest_scaling(1, 1.0, -1.5, heights);
  CHECK(r.passed);
  CHECK(r.statistic == doctest::Approx(0.5).epsilon(0.1));
  const CheckReport half = verify_gintest_scaling(1, 1.0, -1.5, {1e-5, 1e-4, 1e-3});
  CHECK(std::abs(half.statistic - r.statistic) <= 0.02);
  CHECK_THROWS_AS(verify_gintest_scaling(1, 1.0, 0.0, heights), PreconditionError);
  CHECK_THROWS_AS(verify_gintest_scaling(1, 1.0, -1.5, {1e-3}), PreconditionError);
  CHECK_THROWS_AS(verify_gintest_scaling(1, 1.0, -1.5, {1e-3, 2.0}), PreconditionError);
}

TEST_CASE("glaa") {
  CHECK(glaa_admissible(1, 4, 0, 4, 0));
  CHECK(!glaa_admissible(1, 4, 0, 2, 0));  // r < q
  CHECK(!glaa_admissible(1, 1.5, 1.5, 4, 0));
  const CheckReport b = verify_glaa_boundedness(1, 4, 0, 4, 0, 6, 3, {200, 10, 20.0});
  CHECK(b.passed);
  CHECK_THROWS_AS(verify_glaa_boundedness(1, 4, 0, 2, 0, 6, 3), PreconditionError);
  for (int N = 1; N <= 3; ++N)
    for (double sigma : {0.6, 0.8}) CHECK(verify_glaa_sharpness(N, 4, sigma).passed);
  CHECK_THROWS_AS(verify_glaa_sharpness(1, 4, 0.2), PreconditionError);
  const auto all = verify_glaa(1, 2, 0.5, 4, -0.5, 4, 1);
  CHECK(all.size() == 3);
  for (const auto& r : all) CHECK(r.passed);
}

TEST_CASE("solution structure") {
  const auto P = fixtures::problem_1d(1000);
  const auto reports = verify_solution_structure({0.8, 0.2, 0.4}, P.K, P.Pmu, 3.0);
  REQUIRE(reports.size() == 5);
  for (const CheckReport& r : reports) {
    INFO(r.name << ": " << r.details);
    CHECK(r.passed);
  }
  const auto failing = verify_solution_structure({0.2, 2.0}, P.K, P.Pmu, 3.0);
  for (const CheckReport& r : failing) CHECK(!r.passed);
  CHECK_THROWS_AS(verify_solution_structure({}, P.K, P.Pmu, 3.0), PreconditionError);
}
