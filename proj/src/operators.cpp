#include "halfspace/operators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <unordered_map>

#include "halfspace/kernels.hpp"
#include "halfspace/quadrature.hpp"

namespace halfspace {

namespace {

const GaussRule& angular_rule(int order) {
  thread_local std::unordered_map<int, GaussRule> cache;
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, gauss_legendre(order, 0.0, 1.0)).first;
  return it->second;
}

// (1/pi) int_0^pi f(phi) dphi. When the integrand peaks at phi = 0 on a scale
// phi_c << 1, the range is split into geometric panels [0, 4 phi_c], [4 phi_c, 16 phi_c], ...
template <class F>
double angular_mean(F&& f, double phi_c, int order) {
  const GaussRule& rule = angular_rule(order);
  auto panel = [&](double a, double b) {
    double s = 0.0;
    for (Eigen::Index k = 0; k < rule.nodes.size(); ++k) s += rule.weights(k) * f(a + (b - a) * rule.nodes(k));
    return s * (b - a);
  };
  const double pi = std::numbers::pi;
  if (!(phi_c < 0.25)) return panel(0.0, pi) / pi;
  double sum = 0.0, a = 0.0, b = 4.0 * phi_c;
  while (a < pi) {
    b = std::min(b, pi);
    sum += panel(a, b);
    a = b;
    b *= 4.0;
  }
  return sum / pi;
}

}  // namespace

double ring_green(int N, double rho_x, double z_x, double rho_y, double z_y, int angular_order) {
  switch (N) {
    case 1: return green_from_geometry<double>(1, 0.0, z_x, z_y);
    case 2: {
      const double dm = rho_x - rho_y, dp = rho_x + rho_y;
      return 0.5 * (green_from_geometry<double>(2, dm * dm, z_x, z_y) +
                    green_from_geometry<double>(2, dp * dp, z_x, z_y));
    }
    case 3: {
      const double dr = rho_x - rho_y, dz = z_x - z_y;
      const double prod = rho_x * rho_y;
      const double phi_c = std::sqrt(dr * dr + dz * dz) / std::sqrt(prod);
      auto f = [&](double phi) {
        // |x' - y'|^2 = (rho_x - rho_y)^2 + 4 rho_x rho_y sin^2(phi/2)
        const double s = std::sin(0.5 * phi);
        return green_from_geometry<double>(3, dr * dr + 4.0 * prod * s * s, z_x, z_y);
      };
      return angular_mean(f, phi_c, angular_order);
    }
    default: throw UnsupportedDimensionError("ring_green: only N in {1, 2, 3}");
  }
}

KernelMatrix assemble_green(GridPtr grid) {
  if (!grid) throw ShapeError("assemble_green: null grid");
  const Eigen::Index n = grid->size();
  if (n > kMaxDenseNodes) throw ConfigError("assemble_green: grid exceeds the dense-matrix node limit");
  const int N = grid->dimension();
  const int order = grid->spec().angular_order;
  KernelMatrix K{grid, Eigen::MatrixXd(n, n)};
  const Eigen::VectorXd& z = grid->heights();
  const Eigen::VectorXd& rho = grid->radii();
  const Eigen::VectorXd& w = grid->weights();

#pragma omp parallel for schedule(dynamic, 16)
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      if (i == j) continue;
      K.entries(i, j) = ring_green(N, rho(i), z(i), rho(j), z(j), order) * w(j);
    }
    const Cell& c = grid->cell(j);
    double avg = 0.0;
    if (N == 1) {
      const double dz = c.z_hi - c.z_lo;
      for (int k = 0; k < 4; ++k) avg += ring_green(1, 0.0, z(j), 0.0, c.z_lo + (k + 0.5) * 0.25 * dz, order);
    } else {
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
          const double ry = c.rho_lo + (a + 0.5) * 0.5 * (c.rho_hi - c.rho_lo);
          const double zy = c.z_lo + (b + 0.5) * 0.5 * (c.z_hi - c.z_lo);
          avg += ring_green(N, rho(j), z(j), ry, zy, order);
        }
    }
    K.entries(j, j) = 0.25 * avg * w(j);
  }
  return K;
}

Field apply_green(const KernelMatrix& K, const Field& f) {
  if (f.grid != K.grid) throw ShapeError("apply_green: field and kernel live on different grids");
  return {K.grid, K.entries * f.values};
}

namespace {

Eigen::VectorXd trapezoid_weights(const std::vector<double>& r) {
  const std::size_t m = r.size();
  Eigen::VectorXd w = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m));
  for (std::size_t k = 0; k + 1 < m; ++k) {
    const double h = 0.5 * (r[k + 1] - r[k]);
    w(static_cast<Eigen::Index>(k)) += h;
    w(static_cast<Eigen::Index>(k + 1)) += h;
  }
  return w;
}

}  // namespace

Field poisson_trace(const GridPtr& grid, const BoundaryMeasure& mu) {
  if (!grid) throw ShapeError("poisson_trace: null grid");
  const int N = grid->dimension();
  const Eigen::Index n = grid->size();
  Eigen::VectorXd values(n);

  if (const auto* pm = std::get_if<PointMass>(&mu)) {
    if (!(pm->mass > 0.0)) throw ConfigError("poisson_trace: point mass must be positive");
    for (Eigen::Index i = 0; i < n; ++i) {
      const double z = grid->height(i), r = grid->radius(i);
      values(i) = pm->mass * poisson_from_geometry<double>(N, std::sqrt(r * r + z * z), z);
    }
    return {grid, values};
  }

  const auto& dens = std::get<RadialDensity>(mu);
  if (N == 1) throw ConfigError("poisson_trace: the boundary of the half line is a point; use a point mass");
  if (dens.radii.size() < 2 || dens.radii.size() != dens.values.size())
    throw ConfigError("poisson_trace: density needs >= 2 matching radius/value samples");
  for (std::size_t k = 0; k < dens.radii.size(); ++k) {
    if (dens.radii[k] < 0.0 || dens.values[k] < 0.0)
      throw ConfigError("poisson_trace: density radii and values must be nonnegative");
    if (k > 0 && !(dens.radii[k] > dens.radii[k - 1]))
      throw ConfigError("poisson_trace: density radii must be strictly increasing");
  }
  const Eigen::VectorXd w = trapezoid_weights(dens.radii);
  double total = 0.0;
  for (std::size_t k = 0; k < dens.values.size(); ++k) total += w(static_cast<Eigen::Index>(k)) * dens.values[k];
  if (!(total > 0.0)) throw ConfigError("poisson_trace: density must be nontrivial");

  const int order = grid->spec().angular_order;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double z = grid->height(i), r = grid->radius(i);
    double acc = 0.0;
    for (std::size_t k = 0; k < dens.radii.size(); ++k) {
      const double mk = dens.values[k] * w(static_cast<Eigen::Index>(k));
      if (mk == 0.0) continue;
      const double s = dens.radii[k];
      if (N == 2) {
        const double dm = r - s, dp = r + s;
        acc += mk * (poisson_from_geometry<double>(2, std::sqrt(dm * dm + z * z), z) +
                     poisson_from_geometry<double>(2, std::sqrt(dp * dp + z * z), z));
      } else {
        const double dr = r - s;
        const double phi_c = s > 0.0 && r > 0.0 ? std::sqrt(dr * dr + z * z) / std::sqrt(r * s) : 1.0;
        auto f = [&](double phi) {
          const double sn = std::sin(0.5 * phi);
          return poisson_from_geometry<double>(3, std::sqrt(dr * dr + 4.0 * r * s * sn * sn + z * z), z);
        };
        acc += mk * 2.0 * std::numbers::pi * s * angular_mean(f, phi_c, order);
      }
    }
    values(i) = acc;
  }
  return {grid, values};
}

Eigen::VectorXd linearization_weight(const Field& u, double p) {
  return (p * u.values.array().max(0.0).pow(p - 1.0)).matrix();
}

EigenResult linearized_spectrum(const KernelMatrix& K, const Field& u, double p, const PowerIterationOptions& opts) {
  if (u.grid != K.grid) throw ShapeError("linearized_spectrum: field and kernel live on different grids");
  if (!(p > 1.0)) throw PreconditionError("linearized_spectrum: p must exceed 1");
  const Eigen::VectorXd a = linearization_weight(u, p);
  if (!(a.maxCoeff() > 0.0)) throw PreconditionError("linearized_spectrum: u_+ vanishes identically");
  const Eigen::VectorXd wa = (K.grid->weights().array() * a.array()).matrix();

  Eigen::VectorXd psi = Eigen::VectorXd::Ones(K.size());
  Eigen::VectorXd image(K.size());
  double rho = 0.0, residual = 0.0;
  for (int it = 1; it <= opts.max_iter; ++it) {
    image.noalias() = K.entries * (a.cwiseProduct(psi));
    // Rayleigh quotient in the inner product weighted by w a, where K diag(a) is self-adjoint.
    rho = wa.dot(image.cwiseProduct(psi)) / wa.dot(psi.cwiseProduct(psi));
    residual = (image - rho * psi).cwiseAbs().maxCoeff();
    if (residual <= opts.tol * psi.cwiseAbs().maxCoeff()) {
      EigenResult out;
      out.rho = rho;
      out.lambda = 1.0 / rho;
      out.eigenfield = Field(K.grid, psi / psi.maxCoeff());
      out.iterations = it;
      out.residual = residual / psi.maxCoeff();
      return out;
    }
    psi = image / image.cwiseAbs().maxCoeff();
  }
  throw IterationLimitError("linearized_spectrum: power iteration did not converge", residual);
}

double stability_form(const KernelMatrix& K, const Field& u, double p, const Field& g) {
  if (u.grid != K.grid || g.grid != K.grid) throw ShapeError("stability_form: grid mismatch");
  const Eigen::VectorXd omega = K.entries * g.values;
  const Eigen::VectorXd a = linearization_weight(u, p);
  const Eigen::VectorXd& w = K.grid->weights();
  const double energy = (w.array() * g.values.array() * omega.array()).sum();
  const double potential = (w.array() * a.array() * omega.array().square()).sum();
  return energy - potential;
}

namespace {

// W^{1/2} K diag(a) W^{-1/2}: the operator f -> G[a f] in coordinates where the
// quadrature inner product is Euclidean.
Eigen::MatrixXd weighted_operator(const KernelMatrix& K, const Eigen::VectorXd& a) {
  const Eigen::ArrayXd sw = K.grid->weights().array().sqrt();
  Eigen::MatrixXd S = K.entries;
  S.array().colwise() *= sw;
  S.array().rowwise() *= (a.array() / sw).transpose();
  return S;
}

}  // namespace

double jacobian_min_singular_value(const KernelMatrix& K, const Field& u, double p) {
  if (u.grid != K.grid) throw ShapeError("jacobian_min_singular_value: grid mismatch");
  Eigen::MatrixXd J = -weighted_operator(K, linearization_weight(u, p));
  J.diagonal().array() += 1.0;
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(J);
  Eigen::VectorXd x = Eigen::VectorXd::Ones(J.rows()).normalized();
  double growth = 0.0;
  for (int it = 0; it < 200; ++it) {
    const Eigen::VectorXd y = lu.solve(lu.transpose().solve(x));
    const double g = y.norm();
    x = y / g;
    if (it > 0 && std::abs(g - growth) <= 1e-12 * g) {
      growth = g;
      break;
    }
    growth = g;
  }
  return 1.0 / std::sqrt(growth);
}

Eigen::VectorXd operator_singular_values(const KernelMatrix& K, const Eigen::VectorXd& a) {
  if (a.size() != K.size()) throw ShapeError("operator_singular_values: weight size mismatch");
  const Eigen::BDCSVD<Eigen::MatrixXd> svd(weighted_operator(K, a));
  return svd.singularValues();
}

}  // namespace halfspace
