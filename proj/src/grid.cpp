#include "halfspace/grid.hpp"

#include <cmath>
#include <numbers>

namespace halfspace {

Eigen::VectorXd graded_edges(double extent, int n, double grading) {
  Eigen::VectorXd edges(n + 1);
  for (int k = 0; k <= n; ++k) edges(k) = extent * std::pow(double(k) / n, grading);
  edges(n) = extent;
  return edges;
}

Grid::Grid(const GridSpec& spec) : spec_(spec) {
  const int N = spec.dimension;
  if (N < 1 || N > 3) throw ConfigError("grid: dimension must be 1, 2 or 3");
  if (!(spec.height_extent > 0.0)) throw ConfigError("grid: H must be positive");
  if (N > 1 && !(spec.lateral_extent > 0.0)) throw ConfigError("grid: R must be positive");
  if (spec.nodes_height < 2) throw ConfigError("grid: nodes_height must be >= 2");
  if (N > 1 && spec.nodes_lateral < 2) throw ConfigError("grid: nodes_lateral must be >= 2");
  if (!(spec.grading >= 1.0)) throw ConfigError("grid: grading must be >= 1");
  if (spec.angular_order < 1) throw ConfigError("grid: angular_order must be positive");

  const int nz = spec.nodes_height;
  const int nr = N == 1 ? 1 : spec.nodes_lateral;
  if (N == 1) spec_.nodes_lateral = 1;
  const Eigen::VectorXd z_edges = graded_edges(spec.height_extent, nz, spec.grading);
  Eigen::VectorXd r_edges(2);
  r_edges << 0.0, 0.0;
  if (N > 1) r_edges = graded_edges(spec.lateral_extent, nr, spec.grading);

  const Eigen::Index n = Eigen::Index(nr) * nz;
  heights_.resize(n);
  radii_.resize(n);
  weights_.resize(n);
  cells_.resize(static_cast<std::size_t>(n));
  for (int a = 0; a < nr; ++a) {
    for (int k = 0; k < nz; ++k) {
      const Eigen::Index i = Eigen::Index(a) * nz + k;
      Cell c{r_edges(a), r_edges(a + 1), z_edges(k), z_edges(k + 1)};
      const double dz = c.z_hi - c.z_lo;
      const double rho = 0.5 * (c.rho_lo + c.rho_hi);
      double w = dz;
      if (N == 2) w *= 2.0 * (c.rho_hi - c.rho_lo);
      if (N == 3) w *= std::numbers::pi * (c.rho_hi * c.rho_hi - c.rho_lo * c.rho_lo);
      heights_(i) = 0.5 * (c.z_lo + c.z_hi);
      radii_(i) = rho;
      weights_(i) = w;
      cells_[static_cast<std::size_t>(i)] = c;
    }
  }
}

double Grid::volume() const {
  const double H = spec_.height_extent, R = spec_.lateral_extent;
  switch (spec_.dimension) {
    case 1: return H;
    case 2: return 2.0 * R * H;
    default: return std::numbers::pi * R * R * H;
  }
}

GridPtr build_grid(const GridSpec& spec) { return std::make_shared<const Grid>(spec); }

Field::Field(GridPtr g, Eigen::VectorXd v) : grid(std::move(g)), values(std::move(v)) {
  if (!grid) throw ShapeError("Field: null grid");
  if (values.size() != grid->size()) throw ShapeError("Field: value count does not match the grid");
}

Field Field::zeros(GridPtr g) {
  const auto n = g->size();
  return {std::move(g), Eigen::VectorXd::Zero(n)};
}

Field Field::constant(GridPtr g, double c) {
  const auto n = g->size();
  return {std::move(g), Eigen::VectorXd::Constant(n, c)};
}

void require_same_grid(const Field& a, const Field& b) {
  if (a.grid != b.grid || a.values.size() != b.values.size())
    throw ShapeError("fields live on different grids");
}

double weighted_norm(const Field& f, double q, double alpha) {
  if (!(q >= 1.0)) throw DomainError("weighted_norm: q must be >= 1");
  const Grid& g = *f.grid;
  double sum = 0.0;
  for (Eigen::Index i = 0; i < f.size(); ++i) {
    const double v = std::abs(f.values(i));
    if (v == 0.0) continue;
    sum += g.weight(i) * std::pow(v, q) * std::pow(weight_h(g.height(i)), q * alpha);
  }
  return std::pow(sum, 1.0 / q);
}

double inner_product(const Field& a, const Field& b) {
  require_same_grid(a, b);
  return (a.grid->weights().array() * a.values.array() * b.values.array()).sum();
}

}  // namespace halfspace
