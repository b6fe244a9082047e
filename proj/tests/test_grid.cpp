#include <doctest.h>

#include <cmath>
#include <numbers>

#include "halfspace/grid.hpp"

using namespace halfspace;

TEST_CASE("1D graded grid") {
  GridSpec s;
  const GridPtr g = build_grid(s);
  REQUIRE(g->size() == 2000);
  CHECK(g->weights().sum() == doctest::Approx(20.0).epsilon(1e-12));
  CHECK(g->volume() == doctest::Approx(20.0));
  for (Eigen::Index i = 0; i < g->size(); ++i) {
    CHECK(g->height(i) > 0.0);
    CHECK(g->height(i) < 20.0);
    CHECK(g->weight(i) > 0.0);
  }
  // Denser near the boundary.
  CHECK(g->weight(0) < g->weight(1999) / 100.0);
  for (Eigen::Index i = 1; i < g->size(); ++i) CHECK(g->height(i) > g->height(i - 1));
}

TEST_CASE("grading 1 is uniform") {
  const Eigen::VectorXd e = graded_edges(10.0, 50, 1.0);
  for (int k = 0; k < 50; ++k) CHECK(e(k + 1) - e(k) == doctest::Approx(0.2).epsilon(1e-12));
  const Eigen::VectorXd f = graded_edges(10.0, 50, 2.0);
  CHECK(f(0) == 0.0);
  CHECK(f(50) == 10.0);
  CHECK(f(1) == doctest::Approx(10.0 / 2500.0));
}

TEST_CASE("axisymmetric grids carry the ring measure in their weights") {
  for (int N : {2, 3}) {
    GridSpec s;
    s.dimension = N;
    s.lateral_extent = 3.0;
    s.height_extent = 5.0;
    s.nodes_lateral = 12;
    s.nodes_height = 9;
    const GridPtr g = build_grid(s);
    CHECK(g->size() == 108);
    const double vol = N == 2 ? 2 * 3.0 * 5.0 : std::numbers::pi * 9.0 * 5.0;
    CHECK(g->weights().sum() == doctest::Approx(vol).epsilon(1e-10));
    CHECK(g->volume() == doctest::Approx(vol));
    CHECK(g->point(5).dimension() == N);
  }
}

TEST_CASE("grid validation") {
  GridSpec s;
  s.height_extent = 0.0;
  CHECK_THROWS_AS(build_grid(s), ConfigError);
  s = {};
  s.nodes_height = 1;
  CHECK_THROWS_AS(build_grid(s), ConfigError);
  s = {};
  s.grading = 0.5;
  CHECK_THROWS_AS(build_grid(s), ConfigError);
  s = {};
  s.dimension = 2;
  s.nodes_lateral = 1;
  CHECK_THROWS_AS(build_grid(s), ConfigError);
  s = {};
  s.dimension = 4;
  CHECK_THROWS_AS(build_grid(s), ConfigError);
}

TEST_CASE("weight h") {
  CHECK(weight_h(0.5) == 0.5);
  CHECK(weight_h(2.0) == 1.0);
  CHECK(weight_h(1.0) == 1.0);
  CHECK_THROWS_AS(weight_h(0.0), DomainError);
}

TEST_CASE("weighted norms") {
  const GridPtr g = build_grid({});
  CHECK(weighted_norm(Field::constant(g, 1.0), 1.0, 0.0) == doctest::Approx(20.0).epsilon(1e-12));
  CHECK(weighted_norm(Field::zeros(g), 3.0, 0.5) == 0.0);
  Eigen::VectorXd v(g->size());
  for (Eigen::Index i = 0; i < g->size(); ++i) v(i) = std::exp(-g->height(i));
  const Field f(g, v);
  CHECK(std::abs(weighted_norm(f, 2.0, 0.0) - std::sqrt(0.5)) < 1e-3);
  // int_0^1 x e^{-x} dx + int_1^20 e^{-x} dx
  const double exact = (1.0 - 2.0 * std::exp(-1.0)) + (std::exp(-1.0) - std::exp(-20.0));
  CHECK(weighted_norm(f, 1.0, 1.0) == doctest::Approx(exact).epsilon(1e-4));
  CHECK(inner_product(f, Field::constant(g, 2.0)) == doctest::Approx(2.0 * (1 - std::exp(-20.0))).epsilon(1e-5));
  CHECK(sup_norm(f) == doctest::Approx(std::exp(-g->height(0))));
  CHECK_THROWS_AS(weighted_norm(f, 0.5, 0.0), DomainError);
  CHECK_THROWS_AS(Field(g, Eigen::VectorXd::Zero(3)), ShapeError);
  const GridPtr other = build_grid({});
  CHECK_THROWS_AS(require_same_grid(f, Field::zeros(other)), ShapeError);
}
