#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fixtures.hpp"
#include "halfspace/kernels.hpp"

using namespace halfspace;

namespace {
GridPtr axisymmetric(int N, int n, double extent) {
  GridSpec s;
  s.dimension = N;
  s.lateral_extent = extent;
  s.height_extent = extent;
  s.nodes_lateral = n;
  s.nodes_height = n;
  return build_grid(s);
}
}  // namespace

TEST_CASE("two-node sanity") {
  GridSpec s;
  s.nodes_height = 2;
  s.height_extent = 2.0;
  s.grading = 1.0;
  const GridPtr g = build_grid(s);
  const KernelMatrix K = assemble_green(g);
  const double G01 = green_G(1, g->point(0), g->point(1));
  CHECK(K.entries(0, 1) / g->weight(1) == doctest::Approx(G01).epsilon(1e-15));
}

TEST_CASE("1D kernel matrix") {
  const auto P = fixtures::problem_1d(2000);
  const KernelMatrix& K = P.K;
  CHECK(K.entries.minCoeff() >= 0.0);
  double asym = 0.0;
  const auto& w = P.grid->weights();
  for (Eigen::Index i = 0; i < K.size(); i += 37)
    for (Eigen::Index j = 0; j < K.size(); j += 41)
      if (i != j) {
        const double a = K.entries(i, j) / w(j), b = K.entries(j, i) / w(i);
        asym = std::max(asym, std::abs(a - b) / std::max(a, b));
      }
  CHECK(asym <= 1e-12);

  // G[1 on (0, H)] = 1 - e^{-x} - e^{-H} sinh(x): the half-line solution minus the part of the
  // source beyond the truncation height.
  const Field v = apply_green(K, Field::constant(P.grid, 1.0));
  double err = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double x = P.grid->height(i);
    err = std::max(err, std::abs(v.values(i) - (1.0 - std::exp(-x) - std::exp(-20.0) * std::sinh(x))));
  }
  CHECK(err <= 1e-3);
  CHECK(v.values.maxCoeff() <= 1.0);
  CHECK((K.entries.rowwise().sum().array() <= 1.0).all());
}

TEST_CASE("apply_green is linear and positive") {
  const auto P = fixtures::problem_1d(300);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  Eigen::VectorXd a(300), b(300);
  for (int i = 0; i < 300; ++i) a(i) = U(rng), b(i) = U(rng);
  const Field fa(P.grid, a), fb(P.grid, b);
  const Field sum = apply_green(P.K, Field(P.grid, a + b));
  const Eigen::VectorXd parts = apply_green(P.K, fa).values + apply_green(P.K, fb).values;
  CHECK((sum.values - parts).cwiseAbs().maxCoeff() <= 1e-14 * parts.cwiseAbs().maxCoeff());
  CHECK(apply_green(P.K, Field::zeros(P.grid)).values.cwiseAbs().maxCoeff() == 0.0);
  CHECK(apply_green(P.K, fa).values.minCoeff() >= 0.0);
  const auto Q = fixtures::problem_1d(300);
  CHECK_THROWS_AS(apply_green(P.K, Field::zeros(Q.grid)), ShapeError);
}

TEST_CASE("axisymmetric kernels") {
  for (int N : {2, 3}) {
    const GridPtr g = axisymmetric(N, 20, 10.0);
    const KernelMatrix K = assemble_green(g);
    CHECK(K.entries.minCoeff() >= 0.0);
    const auto& w = g->weights();
    double asym = 0.0;
    for (Eigen::Index i = 0; i < K.size(); ++i)
      for (Eigen::Index j = 0; j < i; ++j) {
        const double a = K.entries(i, j) / w(j), b = K.entries(j, i) / w(i);
        asym = std::max(asym, std::abs(a - b) / std::max(a, b));
      }
    CHECK(asym <= 1e-12);
    // Near the axis and away from the truncation, G[1] is close to 1 - e^{-x_N}.
    const Field v = apply_green(K, Field::constant(g, 1.0));
    double err = 0.0;
    for (Eigen::Index i = 0; i < v.size(); ++i)
      if (g->radius(i) < 2.0 && g->height(i) < 2.0)
        err = std::max(err, std::abs(v.values(i) - (1.0 - std::exp(-g->height(i)))));
    MESSAGE("N=" << N << " G[1] error near the axis: " << err);
    CHECK(err <= 2e-2);
  }
}

TEST_CASE("ring average") {
  // The N = 3 ring mean against a brute-force angular average.
  const double rx = 0.7, zx = 0.4, ry = 0.9, zy = 0.5;
  double brute = 0.0;
  const int M = 200000;
  for (int k = 0; k < M; ++k) {
    const double phi = std::numbers::pi * (k + 0.5) / M;
    HalfSpacePoint<double>::Lateral a(2), b(2);
    a << rx, 0.0;
    b << ry * std::cos(phi), ry * std::sin(phi);
    brute += green_G(3, HalfSpacePoint<double>(a, zx), HalfSpacePoint<double>(b, zy));
  }
  brute /= M;
  CHECK(ring_green(3, rx, zx, ry, zy) == doctest::Approx(brute).epsilon(1e-6));
  CHECK_THROWS_AS(ring_green(4, rx, zx, ry, zy), UnsupportedDimensionError);
}

TEST_CASE("Poisson trace") {
  const auto P = fixtures::problem_1d(500);
  for (Eigen::Index i = 0; i < P.Pmu.size(); ++i)
    CHECK(P.Pmu.values(i) == doctest::Approx(std::exp(-P.grid->height(i))).epsilon(1e-15));
  const Field twice = poisson_trace(P.grid, PointMass{2.0});
  CHECK((twice.values - 2.0 * P.Pmu.values).cwiseAbs().maxCoeff() == 0.0);

  const GridPtr g3 = axisymmetric(3, 10, 5.0);
  const Field p3 = poisson_trace(g3, PointMass{1.0});
  for (Eigen::Index i = 0; i < p3.size(); ++i) {
    const double z = g3->height(i), rho = std::hypot(g3->radius(i), z);
    const double closed = z * (1 + rho) * std::exp(-rho) / (2 * std::numbers::pi * std::pow(rho, 3));
    CHECK(p3.values(i) == doctest::Approx(closed).epsilon(1e-13));
  }

  // A narrow radial density approaches the point mass of equal total mass.
  const GridPtr g2 = axisymmetric(2, 10, 5.0);
  const Field point = poisson_trace(g2, PointMass{1.0});
  RadialDensity d;
  const int m = 401;
  const double width = 1e-3;
  for (int k = 0; k < m; ++k) {
    d.radii.push_back(width * k / (m - 1));
    d.values.push_back(1.0 / (2 * width));  // mass 1 on (-width, width)
  }
  const Field spread = poisson_trace(g2, d);
  CHECK((spread.values - point.values).cwiseAbs().maxCoeff() <= 1e-3 * point.values.maxCoeff());

  CHECK_THROWS_AS(poisson_trace(P.grid, PointMass{0.0}), ConfigError);
  CHECK_THROWS_AS(poisson_trace(P.grid, RadialDensity{{0.0, 1.0}, {1.0, 1.0}}), ConfigError);
  CHECK_THROWS_AS(poisson_trace(g2, RadialDensity{{0.0, 1.0}, {0.0, 0.0}}), ConfigError);
  CHECK_THROWS_AS(poisson_trace(g2, RadialDensity{{1.0, 0.5}, {1.0, 1.0}}), ConfigError);
}

TEST_CASE("linearized spectrum at the turning-point profile") {
  const auto P = fixtures::problem_1d(2000);
  Eigen::VectorXd u(2000), mode(2000);
  for (Eigen::Index i = 0; i < 2000; ++i) {
    const double x = P.grid->height(i);
    u(i) = std::sqrt(2.0) / std::cosh(x);
    mode(i) = std::tanh(x) / std::cosh(x);
  }
  const EigenResult e = linearized_spectrum(P.K, Field(P.grid, u), 3.0);
  CHECK(e.lambda == doctest::Approx(1.0).epsilon(2e-2));
  CHECK(e.rho * e.lambda == doctest::Approx(1.0));
  CHECK(e.eigenfield.values.minCoeff() >= 0.0);
  CHECK(e.eigenfield.values.maxCoeff() == doctest::Approx(1.0));
  CHECK(e.residual <= 1e-8);
  mode /= mode.maxCoeff();
  CHECK((e.eigenfield.values - mode).cwiseAbs().maxCoeff() <= 1e-2);
  CHECK_THROWS_AS(linearized_spectrum(P.K, Field::zeros(P.grid), 3.0), PreconditionError);
}

TEST_CASE("stability form and singular values") {
  const auto P = fixtures::problem_1d(400);
  // Small positive profile: the form is positive for every test function.
  const Field u(P.grid, 0.3 * P.Pmu.values);
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  for (int t = 0; t < 10; ++t) {
    Eigen::VectorXd g(400);
    for (auto& x : g) x = U(rng);
    CHECK(stability_form(P.K, u, 3.0, Field(P.grid, g)) > 0.0);
  }
  const Eigen::VectorXd s = operator_singular_values(P.K, linearization_weight(u, 3.0));
  for (Eigen::Index k = 1; k < s.size(); ++k) CHECK(s(k) <= s(k - 1));
  CHECK(s(50) < 1e-2 * s(0));
  const double smin = jacobian_min_singular_value(P.K, u, 3.0);
  CHECK(smin > 0.5);
  CHECK(smin <= 1.0);
}
