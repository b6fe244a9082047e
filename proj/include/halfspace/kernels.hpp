#pragma once

// Fundamental solution E of -Delta + 1 on R^N, its radial derivative, and the
// Dirichlet-Green and Poisson kernels of the half space R^N_+ = {x_N > 0}
// for N in {1, 2, 3}:
//
//   E(r)   = e^{-r}/2 (N=1),  K_0(r)/(2 pi) (N=2),  e^{-r}/(4 pi r) (N=3)
//   G(x,y) = E(|x - y|) - E(|x* - y|),   x* the reflection of x across x_N = 0
//   P(x,z) = d/ds G(x, (z,s)) at s = 0  =  2 x_N |E'(rho)| / rho,   rho = |(x' - z, x_N)|
//
// The closed form of P follows from d|x-y|/ds = -x_N/rho and d|x*-y|/ds = +x_N/rho at s = 0.
// For N = 1 it reduces to P(x) = e^{-x}.

#include <Eigen/Core>
#include <cmath>
#include <numbers>

#include "halfspace/errors.hpp"
#include "halfspace/special_functions.hpp"

namespace halfspace {

/// Lateral part x' (N-1 <= 2 coordinates, no heap) and height x_N.
template <class Scalar = double>
struct HalfSpacePoint {
  using Lateral = Eigen::Matrix<Scalar, Eigen::Dynamic, 1, 0, 2, 1>;
  Lateral lateral;
  Scalar height{};

  HalfSpacePoint() = default;
  HalfSpacePoint(Lateral lat, Scalar h) : lateral(std::move(lat)), height(h) {}
  /// Point of R^N with x' = (radius, 0, ...) for N >= 2 and no lateral part for N = 1.
  static HalfSpacePoint on_axis_plane(int N, Scalar radius, Scalar h) {
    Lateral lat = Lateral::Zero(N - 1);
    if (N > 1) lat(0) = radius;
    return {lat, h};
  }
  int dimension() const { return static_cast<int>(lateral.size()) + 1; }
  HalfSpacePoint reflected() const { return {lateral, -height}; }
};

namespace detail {

inline void require_dimension(int N) {
  if (N < 1 || N > 3) throw UnsupportedDimensionError("kernels: only N in {1, 2, 3} is supported");
}

template <class Scalar>
void require_positive_radius(Scalar r) {
  if (!(r > Scalar(0))) throw DomainError("kernels: radius must be positive");
}

}  // namespace detail

template <class Scalar = double>
Scalar fundamental_E(int N, Scalar r) {
  using std::exp;
  detail::require_dimension(N);
  detail::require_positive_radius(r);
  switch (N) {
    case 1: return exp(-r) / Scalar(2);
    case 2: return Scalar(bessel_k0(double(r))) / Scalar(2 * std::numbers::pi);
    default: return exp(-r) / (Scalar(4 * std::numbers::pi) * r);
  }
}

/// dE/dr, strictly negative.
template <class Scalar = double>
Scalar fundamental_dE(int N, Scalar r) {
  using std::exp;
  detail::require_dimension(N);
  detail::require_positive_radius(r);
  switch (N) {
    case 1: return -exp(-r) / Scalar(2);
    case 2: return -Scalar(bessel_k1(double(r))) / Scalar(2 * std::numbers::pi);
    default: return -exp(-r) * (Scalar(1) + r) / (Scalar(4 * std::numbers::pi) * r * r);
  }
}

/// Smallest separation green_G accepts; the discretization owns the diagonal.
inline constexpr double kMinSeparation = 1e-12;

/// G from the geometry of the pair: squared lateral distance and the two heights.
/// Uses r2 - r1 = 4 x_N y_N / (r1 + r2) so that the reflection difference stays
/// accurate when both points approach the boundary (N = 1, 3).
template <class Scalar = double>
Scalar green_from_geometry(int N, Scalar lateral_sq, Scalar x_height, Scalar y_height) {
  using std::exp;
  using std::expm1;
  using std::sqrt;
  detail::require_dimension(N);
  const Scalar dz = x_height - y_height;
  const Scalar sz = x_height + y_height;
  const Scalar r1 = sqrt(lateral_sq + dz * dz);
  const Scalar r2 = sqrt(lateral_sq + sz * sz);
  if (!(r1 >= Scalar(kMinSeparation))) throw SingularityError("green_G: coincident points");
  const Scalar d = Scalar(4) * x_height * y_height / (r1 + r2);
  switch (N) {
    case 1: return -exp(-r1) * expm1(-d) / Scalar(2);
    case 2: return (Scalar(bessel_k0(double(r1))) - Scalar(bessel_k0(double(r2)))) / Scalar(2 * std::numbers::pi);
    default: return exp(-r1) * (d - r1 * expm1(-d)) / (Scalar(4 * std::numbers::pi) * r1 * r2);
  }
}

template <class Scalar = double>
Scalar green_G(int N, const HalfSpacePoint<Scalar>& x, const HalfSpacePoint<Scalar>& y) {
  detail::require_dimension(N);
  if (x.dimension() != N || y.dimension() != N) throw ShapeError("green_G: point dimension mismatch");
  if (!(x.height > Scalar(0)) || !(y.height > Scalar(0)))
    throw DomainError("green_G: points must lie in the open half space");
  const Scalar lateral_sq = (x.lateral - y.lateral).squaredNorm();
  return green_from_geometry<Scalar>(N, lateral_sq, x.height, y.height);
}

/// P as a function of rho = |(x' - z, x_N)| and x_N.
template <class Scalar = double>
Scalar poisson_from_geometry(int N, Scalar rho, Scalar x_height) {
  return Scalar(-2) * x_height * fundamental_dE<Scalar>(N, rho) / rho;
}

template <class Scalar = double>
Scalar poisson_P(int N, const HalfSpacePoint<Scalar>& x,
                 const typename HalfSpacePoint<Scalar>::Lateral& z) {
  using std::sqrt;
  detail::require_dimension(N);
  if (!(x.height > Scalar(0))) throw DomainError("poisson_P: x must lie in the open half space");
  if (x.dimension() != N || z.size() != N - 1) throw ShapeError("poisson_P: dimension mismatch");
  const Scalar rho = sqrt((x.lateral - z).squaredNorm() + x.height * x.height);
  return poisson_from_geometry<Scalar>(N, rho, x.height);
}

}  // namespace halfspace
