#pragma once

// Truncated, graded discretization of the half space.
//
// N = 1: cells of (0, H) with edges t_k = H (k/n)^g, nodes at cell midpoints.
// N = 2, 3: axisymmetric (|x'|, x_N) tensor grid on (0, R) x (0, H), both axes
// graded the same way. A node stands for the ring {|x'| = rho}; the measure of
// that ring (2 points for N = 2, circumference 2 pi rho for N = 3) is folded
// into its quadrature weight, so sum(weights) is the volume of the truncated
// domain: H, 2RH, or pi R^2 H.

#include <Eigen/Core>
#include <memory>
#include <vector>

#include "halfspace/kernels.hpp"

namespace halfspace {

struct GridSpec {
  int dimension = 1;
  double lateral_extent = 20.0;  // R
  double height_extent = 20.0;   // H
  int nodes_lateral = 1;         // ignored for N = 1
  int nodes_height = 2000;
  double grading = 2.0;
  int angular_order = 32;        // Gauss order of ring averages (N = 3)
};

struct Cell {
  double rho_lo = 0.0, rho_hi = 0.0;
  double z_lo = 0.0, z_hi = 0.0;
};

class Grid {
 public:
  explicit Grid(const GridSpec& spec);

  const GridSpec& spec() const { return spec_; }
  int dimension() const { return spec_.dimension; }
  Eigen::Index size() const { return heights_.size(); }

  double height(Eigen::Index i) const { return heights_(i); }
  double radius(Eigen::Index i) const { return radii_(i); }
  double weight(Eigen::Index i) const { return weights_(i); }
  const Eigen::VectorXd& heights() const { return heights_; }
  const Eigen::VectorXd& radii() const { return radii_; }
  const Eigen::VectorXd& weights() const { return weights_; }
  const Cell& cell(Eigen::Index i) const { return cells_[static_cast<std::size_t>(i)]; }
  HalfSpacePoint<double> point(Eigen::Index i) const {
    return HalfSpacePoint<double>::on_axis_plane(dimension(), radii_(i), heights_(i));
  }
  /// Volume of the truncated domain.
  double volume() const;

 private:
  GridSpec spec_;
  Eigen::VectorXd heights_, radii_, weights_;
  std::vector<Cell> cells_;
};

using GridPtr = std::shared_ptr<const Grid>;

/// Throws ConfigError on nonpositive extents, counts < 2 or grading < 1.
GridPtr build_grid(const GridSpec& spec);

/// Graded cell edges t_k = extent (k/n)^grading, k = 0..n.
Eigen::VectorXd graded_edges(double extent, int n, double grading);

/// Real values on the nodes of a grid.
struct Field {
  GridPtr grid;
  Eigen::VectorXd values;

  Field() = default;
  Field(GridPtr g, Eigen::VectorXd v);
  static Field zeros(GridPtr g);
  static Field constant(GridPtr g, double c);

  Eigen::Index size() const { return values.size(); }
};

/// Throws ShapeError unless both fields live on the same grid.
void require_same_grid(const Field& a, const Field& b);

inline double sup_norm(const Field& f) { return f.values.size() ? f.values.cwiseAbs().maxCoeff() : 0.0; }

/// h(t) = t for 0 < t < 1 and 1 for t >= 1.
inline double weight_h(double t) {
  if (!(t > 0.0)) throw DomainError("weight_h: argument must be positive");
  return t < 1.0 ? t : 1.0;
}

/// Quadrature value of (int |f|^q h(x_N)^{q alpha} dx)^{1/q} over the truncated domain.
double weighted_norm(const Field& f, double q, double alpha);

/// Quadrature inner product sum_i w_i a_i b_i.
double inner_product(const Field& a, const Field& b);

}  // namespace halfspace
