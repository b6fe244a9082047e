#pragma once

#include <Eigen/Dense>
#include <variant>
#include <vector>

#include "halfspace/grid.hpp"

namespace halfspace {

/// Dense Nystrom matrix of G[.]: entry (i, j) = G(x_i, y_j) w_j off the diagonal.
/// For axisymmetric grids G is replaced by its average over the ring of node j.
/// The diagonal uses the kernel averaged over four sub-cell midpoints of cell i,
/// which never touch the singular point.
struct KernelMatrix {
  GridPtr grid;
  Eigen::MatrixXd entries;

  int dimension() const { return grid->dimension(); }
  Eigen::Index size() const { return entries.rows(); }
};

/// Dense assembly refuses grids above this many nodes.
inline constexpr Eigen::Index kMaxDenseNodes = 20000;

KernelMatrix assemble_green(GridPtr grid);

/// Kernel between node (rho_x, z_x) and the ring through (rho_y, z_y): plain G for N = 1,
/// the mean over the two points +-rho_y for N = 2, and the angular mean for N = 3.
double ring_green(int N, double rho_x, double z_x, double rho_y, double z_y, int angular_order = 32);

Field apply_green(const KernelMatrix& K, const Field& f);

/// Boundary data. Point masses sit at the origin of R^{N-1}; for N >= 2 the
/// axisymmetric grids also require densities to be radial.
struct PointMass {
  double mass = 1.0;
};
struct RadialDensity {
  std::vector<double> radii;   // ascending, >= 0
  std::vector<double> values;  // density samples at radii, >= 0
};
using BoundaryMeasure = std::variant<PointMass, RadialDensity>;

/// P[mu] on the grid nodes. Throws ConfigError for a zero or negative measure.
Field poisson_trace(const GridPtr& grid, const BoundaryMeasure& mu);

struct PowerIterationOptions {
  double tol = 1e-8;  // ||M psi - rho psi||_inf <= tol ||psi||_inf
  int max_iter = 20000;
};

struct EigenResult {
  double rho = 0.0;     // spectral radius of h -> G[p u^{p-1} h]
  double lambda = 0.0;  // 1 / rho
  Field eigenfield;     // nonnegative, unit sup norm
  int iterations = 0;
  double residual = 0.0;
};

/// Pointwise p u_+^{p-1}.
Eigen::VectorXd linearization_weight(const Field& u, double p);

/// First eigenpair of psi = lambda G[p u^{p-1} psi] by power iteration from the constant field.
/// Throws PreconditionError when u_+ vanishes and IterationLimitError on stagnation.
EigenResult linearized_spectrum(const KernelMatrix& K, const Field& u, double p,
                                const PowerIterationOptions& opts = {});

/// <G[g], g> - <p u^{p-1} G[g], G[g]>, i.e. the quadratic form
/// int |grad w|^2 + w^2 - p u^{p-1} w^2 evaluated at w = G[g].
double stability_form(const KernelMatrix& K, const Field& u, double p, const Field& g);

/// Smallest singular value of the Newton Jacobian I - G[p u^{p-1} .] in the
/// quadrature-weighted L^2 norm (inverse iteration on J^T J).
double jacobian_min_singular_value(const KernelMatrix& K, const Field& u, double p);

/// Singular values (descending) of the discretized operator f -> G[a f] on weighted L^2.
Eigen::VectorXd operator_singular_values(const KernelMatrix& K, const Eigen::VectorXd& a);

}  // namespace halfspace
