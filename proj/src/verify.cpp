#include "halfspace/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <numbers>
#include <random>

#include "halfspace/exponents.hpp"
#include "halfspace/kernels.hpp"
#include "halfspace/quadrature.hpp"

namespace halfspace {

namespace {

std::string format(const char* fmt, ...) {
  char buf[512];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buf, sizeof buf, fmt, args);
  va_end(args);
  return buf;
}

using Fn = std::function<double(double)>;

// int_{-inf}^{inf} f with the finite break points sorted ascending.
double integrate_line(const Fn& f, std::vector<double> breaks, const QuadratureOptions& opts) {
  std::sort(breaks.begin(), breaks.end());
  const double lo = breaks.front();
  double total = integrate_to_infinity([&](double t) { return f(-t); }, -lo, opts).value;
  breaks.push_back(std::numeric_limits<double>::infinity());
  return total + integrate_pieces(f, breaks, opts).value;
}

// int_a^b f where f behaves like (y - a)^e near a (e > -1): y = a + (b - a) t^m, m = 1/(1+e).
double integrate_power_start(const Fn& f, double a, double b, double e, const QuadratureOptions& opts) {
  const double m = e < 0.0 ? 1.0 / (1.0 + e) : 1.0;
  if (m == 1.0) return integrate(f, a, b, opts).value;
  const double L = b - a;
  auto g = [&](double t) {
    const double tm1 = std::pow(t, m - 1.0);
    return f(a + L * tm1 * t) * L * m * tm1;
  };
  return integrate(g, 0.0, 1.0, opts).value;
}

// lo, 4 lo, 16 lo, ... up to and including the first point >= hi.
std::vector<double> geometric_breaks(double lo, double hi) {
  std::vector<double> out;
  for (double b = lo; ; b *= 4.0) {
    out.push_back(std::min(b, hi));
    if (b >= hi) break;
  }
  return out;
}

HalfSpacePoint<double> random_point(int N, std::mt19937_64& rng, double lat_lo, double lat_hi, double h_lo,
                                    double h_hi, bool log_height) {
  std::uniform_real_distribution<double> lat(lat_lo, lat_hi);
  std::uniform_real_distribution<double> hd(log_height ? std::log(h_lo) : h_lo, log_height ? std::log(h_hi) : h_hi);
  HalfSpacePoint<double>::Lateral l(N - 1);
  for (int k = 0; k < N - 1; ++k) l(k) = lat(rng);
  const double h = hd(rng);
  return {l, log_height ? std::exp(h) : h};
}

double poisson_mass(int N, double x) {
  const QuadratureOptions opts{0.0, 1e-12, 4000};
  std::vector<double> breaks{0.0};
  for (double b : geometric_breaks(x, std::max(1.0, 4.0 * x))) breaks.push_back(b);
  breaks.push_back(std::numeric_limits<double>::infinity());
  if (N == 2) {
    auto f = [&](double z) { return 2.0 * poisson_from_geometry<double>(2, std::hypot(z, x), x); };
    return integrate_pieces(f, breaks, opts).value;
  }
  auto f = [&](double r) {
    return 2.0 * std::numbers::pi * r * poisson_from_geometry<double>(3, std::hypot(r, x), x);
  };
  return integrate_pieces(f, breaks, opts).value;
}

// int_{R^{N-1}} P(x, z - zeta) P(y, zeta) dzeta for N = 2, 3.
double poisson_convolution(int N, const HalfSpacePoint<double>& x, const HalfSpacePoint<double>& y,
                           const HalfSpacePoint<double>::Lateral& z) {
  const QuadratureOptions inner_opts{0.0, 1e-10, 2000};
  const QuadratureOptions outer_opts{0.0, 1e-9, 2000};
  auto integrand = [&](const HalfSpacePoint<double>::Lateral& zeta) {
    const HalfSpacePoint<double>::Lateral shifted = z - zeta;
    return poisson_P<double>(N, x, shifted) * poisson_P<double>(N, y, zeta);
  };
  // Peaks at zeta = z - x' and zeta = y'.
  const HalfSpacePoint<double>::Lateral c1 = z - x.lateral, c2 = y.lateral;
  if (N == 2) {
    auto f = [&](double t) {
      HalfSpacePoint<double>::Lateral zeta(1);
      zeta(0) = t;
      return integrand(zeta);
    };
    return integrate_line(f, {c1(0) - x.height, c1(0), c1(0) + x.height, c2(0) - y.height, c2(0), c2(0) + y.height},
                          outer_opts);
  }
  auto outer = [&](double t1) {
    auto inner = [&](double t2) {
      HalfSpacePoint<double>::Lateral zeta(2);
      zeta << t1, t2;
      return integrand(zeta);
    };
    return integrate_line(inner, {c1(1), c2(1)}, inner_opts);
  };
  return integrate_line(outer, {c1(0), c2(0)}, outer_opts);
}

}  // namespace

std::vector<CheckReport> verify_kernel_identities(int N, long samples, std::uint64_t seed) {
  if (N < 1 || N > 3) throw UnsupportedDimensionError("verify_kernel_identities: only N in {1, 2, 3}");
  if (samples < 1) throw PreconditionError("verify_kernel_identities: samples must be positive");
  std::vector<CheckReport> out;
  std::mt19937_64 rng(seed);

  {
    CheckReport r{"poisson_mass", false, 0.0, "", 0};
    const long m = std::min(samples, 50L);
    std::uniform_real_distribution<double> logh(std::log(1e-3), std::log(3.0));
    for (long i = 0; i < m; ++i) {
      const double x = std::exp(logh(rng));
      const double mass = N == 1 ? poisson_from_geometry<double>(1, x, x) : poisson_mass(N, x);
      r.statistic = std::max(r.statistic, std::abs(mass / std::exp(-x) - 1.0));
    }
    const double tol = N == 1 ? 1e-14 : kMassTol;
    r.samples = m;
    r.passed = r.statistic <= tol;
    r.details = format("max relative error of int P(x, z) dz against exp(-x_N); threshold %.1e", tol);
    out.push_back(r);
  }

  long asym_count = 0, nonpositive = 0, bound_violations = 0;
  double asym = 0.0, bound_ratio = 0.0;
  for (long i = 0; i < samples; ++i) {
    const auto x = random_point(N, rng, -2.0, 2.0, 1e-3, 3.0, true);
    const auto y = random_point(N, rng, -2.0, 2.0, 1e-3, 3.0, true);
    const double r = std::sqrt((x.lateral - y.lateral).squaredNorm() + (x.height - y.height) * (x.height - y.height));
    if (r < 1e-6) continue;
    const double gxy = green_G<double>(N, x, y), gyx = green_G<double>(N, y, x);
    const double rel = std::abs(gxy - gyx) / std::max(std::abs(gxy), std::numeric_limits<double>::min());
    asym = std::max(asym, rel);
    if (rel > kSymmetryTol) ++asym_count;
    const HalfSpacePoint<double>::Lateral z = y.lateral;
    if (!(gxy > 0.0) || !(poisson_P<double>(N, x, z) > 0.0)) ++nonpositive;
    const double bound = std::min(fundamental_E<double>(N, r),
                                  4.0 * x.height * y.height * std::abs(fundamental_dE<double>(N, r)) / r);
    bound_ratio = std::max(bound_ratio, gxy / bound);
    if (gxy > bound * (1.0 + kGestSlack)) ++bound_violations;
  }
  out.push_back({"green_symmetry", asym_count == 0, asym,
                 format("max relative asymmetry |G(x,y) - G(y,x)| / G(x,y); threshold %.0e", kSymmetryTol), samples});
  out.push_back({"green_positivity", nonpositive == 0, double(nonpositive),
                 "count of samples with G <= 0 or P <= 0", samples});
  out.push_back({"green_bound", bound_violations == 0, bound_ratio,
                 format("max of G / min{E, 4 x_N y_N |E'| / |x - y|}; %ld violations beyond %.0e slack",
                        bound_violations, kGestSlack),
                 samples});

  {
    CheckReport r{"poisson_semigroup", false, 0.0, "", 0};
    const long m = N == 1 ? samples : std::min(samples, 8L);
    for (long i = 0; i < m; ++i) {
      const auto x = random_point(N, rng, -1.0, 1.0, 0.2, 1.5, false);
      const auto y = random_point(N, rng, -1.0, 1.0, 0.2, 1.5, false);
      HalfSpacePoint<double>::Lateral z(N - 1);
      std::uniform_real_distribution<double> lat(-1.0, 1.0);
      for (int k = 0; k < N - 1; ++k) z(k) = lat(rng);
      const HalfSpacePoint<double> sum{x.lateral + y.lateral, x.height + y.height};
      const double lhs = poisson_P<double>(N, sum, z);
      const double rhs = N == 1 ? poisson_P<double>(1, x, z) * poisson_P<double>(1, y, z)
                                : poisson_convolution(N, x, y, z);
      r.statistic = std::max(r.statistic, std::abs(rhs / lhs - 1.0));
    }
    const double tol = N == 1 ? 1e-14 : kSemigroupTol;
    r.samples = m;
    r.passed = r.statistic <= tol;
    r.details = format("max relative error of P(x+y, z) = int P(x, z - w) P(y, w) dw; threshold %.0e", tol);
    out.push_back(r);
  }

  {
    // P / (x_N rho^{-N}) on rho^2 <= 2 depends on rho only; two independent resamples must
    // produce the same interval.
    auto interval = [&](std::mt19937_64& g) {
      std::uniform_real_distribution<double> rd(0.0, std::sqrt(2.0)), ud(0.0, 1.0);
      double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
      for (long i = 0; i < samples; ++i) {
        const double rho = std::sqrt(2.0) - rd(g);  // (0, sqrt 2]
        const double xn = rho * (1.0 - ud(g));      // (0, rho]
        const double ratio = poisson_from_geometry<double>(N, rho, xn) * std::pow(rho, N) / xn;
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
      }
      return std::pair{lo, hi};
    };
    std::mt19937_64 g1(seed ^ 0x5bd1e995ULL), g2(seed ^ 0x27d4eb2fULL);
    const auto [lo1, hi1] = interval(g1);
    const auto [lo2, hi2] = interval(g2);
    const double spread = std::max(std::abs(lo1 / lo2 - 1.0), std::abs(hi1 / hi2 - 1.0));
    out.push_back({"poisson_near_ratio", lo1 > 0.0 && std::isfinite(hi1) && spread <= 0.1, spread,
                   format("P / (x_N rho^-N) in [%.6g, %.6g] and [%.6g, %.6g] on two resamples", lo1, hi1, lo2, hi2),
                   2 * samples});
  }
  return out;
}

bool gintest_admissible(int N, double s, double theta) {
  using Cmp = ExponentCompare<double>;
  if (N < 1 || N > 3) return false;
  if (s < 1.0) return false;
  if (N >= 3 && !Cmp::less(s, double(N) / (N - 2))) return false;
  return Cmp::less(-1.0 - 1.0 / s, theta) && Cmp::less(theta, N - 1.0 - N / s);
}

double gintest_integral(int N, double s, double theta, double x) {
  if (N < 1 || N > 3) throw UnsupportedDimensionError("gintest_integral: only N in {1, 2, 3}");
  if (!(x > 0.0)) throw DomainError("gintest_integral: height must be positive");
  // K0(r1) - K0(r2) cancels far from the diagonal (N = 2); tolerances sit above that noise.
  const QuadratureOptions inner_opts{0.0, 1e-8, 300};
  const QuadratureOptions outer_opts{0.0, 1e-7, 600};
  const double e = (1.0 + theta) * s;  // integrand ~ y_N^e as y_N -> 0
  const double inf = std::numeric_limits<double>::infinity();

  Fn slice;  // int over y' of G(x, y)^s at height y_N, times h(y_N)^{theta s}
  if (N == 1) {
    slice = [&](double y) {
      if (y == x) return 0.0;
      return std::pow(green_from_geometry<double>(1, 0.0, x, y) * std::pow(weight_h(y), theta), s);
    };
  } else {
    slice = [&, N](double y) {
      const double d = std::abs(y - x);
      if (d == 0.0) return 0.0;
      std::vector<double> breaks{0.0};
      for (double b : geometric_breaks(d, std::max(1.0, 4.0 * (x + y)))) breaks.push_back(b);
      breaks.push_back(inf);
      auto f = [&](double rho) {
        const double g = std::pow(green_from_geometry<double>(N, rho * rho, x, y), s);
        return N == 2 ? 2.0 * g : 2.0 * std::numbers::pi * rho * g;
      };
      return integrate_pieces(f, breaks, inner_opts).value * std::pow(weight_h(y), theta * s);
    };
  }

  double total = integrate_power_start(slice, 0.0, 0.5 * x, e, outer_opts);
  std::vector<double> breaks{0.5 * x};
  for (double b : geometric_breaks(x, 1.0)) breaks.push_back(b);
  if (breaks.back() < 1.0) breaks.push_back(1.0);
  breaks.push_back(inf);
  total += integrate_pieces(slice, breaks, outer_opts).value;
  return std::pow(total, 1.0 / s);
}

CheckReport verify_gintest_scaling(int N, double s, double theta, const std::vector<double>& heights) {
  if (!gintest_admissible(N, s, theta))
    throw PreconditionError(format("verify_gintest_scaling: (N=%d, s=%g, theta=%g) violates the theta condition", N,
                                   s, theta));
  if (heights.size() < 2) throw PreconditionError("verify_gintest_scaling: need at least two heights");
  for (double h : heights)
    if (!(h > 0.0 && h < 1.0)) throw PreconditionError("verify_gintest_scaling: heights must lie in (0, 1)");

  const double predicted = 2.0 + theta - N * (1.0 - 1.0 / s);
  const Eigen::Index m = static_cast<Eigen::Index>(heights.size());
  Eigen::MatrixXd A(m, 2);
  Eigen::VectorXd b(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    A(i, 0) = 1.0;
    A(i, 1) = std::log(heights[static_cast<std::size_t>(i)]);
    b(i) = std::log(gintest_integral(N, s, theta, heights[static_cast<std::size_t>(i)]));
  }
  const Eigen::Vector2d coef = A.colPivHouseholderQr().solve(b);
  CheckReport r;
  r.name = format("gintest_N%d_s%g_theta%g", N, s, theta);
  r.statistic = coef(1);
  r.passed = std::abs(coef(1) - predicted) <= kSlopeTol;
  r.samples = static_cast<long>(m);
  r.details = format("fitted slope %.6f, predicted 2 + theta - N(1 - 1/s) = %.6f, tolerance %.2f", coef(1), predicted,
                     kSlopeTol);
  return r;
}

bool glaa_admissible(int N, double q, double alpha, double r, double beta) {
  using Cmp = ExponentCompare<double>;
  if (N < 1 || !(q > 1.0) || !std::isfinite(r) || !Cmp::less_equal(q, r)) return false;
  return Cmp::less(1.0 / q + alpha, 2.0) && Cmp::less(-1.0, 1.0 / r + beta) && Cmp::less(1.0 / q - 1.0 / r, 2.0 / N) &&
         Cmp::less_equal(N / q + alpha - 2.0, N / r + beta);
}

CheckReport verify_glaa_boundedness(int N, double q, double alpha, double r, double beta, int family_size,
                                    std::uint64_t seed, const GlaaOptions& opts) {
  if (N < 1 || N > 3) throw UnsupportedDimensionError("verify_glaa_boundedness: only N in {1, 2, 3}");
  if (!glaa_admissible(N, q, alpha, r, beta))
    throw PreconditionError(
        format("verify_glaa_boundedness: (q=%g, alpha=%g, r=%g, beta=%g) is not admissible", q, alpha, r, beta));
  if (family_size < 1) throw PreconditionError("verify_glaa_boundedness: family_size must be positive");

  struct Member {
    bool bump;
    double center, width, gamma;
  };
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> cd(0.05, 1.5), wd(N == 1 ? 0.05 : 0.5, 1.0);
  std::uniform_real_distribution<double> gd(0.0, 0.8 * (alpha + 1.0 / q));
  std::vector<Member> family;
  for (int k = 0; k < family_size; ++k) {
    if (k % 2 == 0) family.push_back({true, cd(rng), wd(rng), 0.0});
    else family.push_back({false, 0.0, 0.0, gd(rng)});
  }

  auto max_ratio = [&](const GridSpec& spec) {
    const GridPtr g = build_grid(spec);
    const KernelMatrix K = assemble_green(g);
    double best = 0.0;
    for (const Member& m : family) {
      Eigen::VectorXd v(g->size());
      for (Eigen::Index i = 0; i < g->size(); ++i) {
        const double z = g->height(i), rho = g->radius(i);
        v(i) = m.bump ? std::exp(-((z - m.center) * (z - m.center) + rho * rho) / (m.width * m.width))
                      : std::pow(z, -m.gamma) * std::exp(-z - rho);
      }
      const Field f(g, v);
      const double fn = weighted_norm(f, q, alpha);
      if (fn == 0.0) continue;
      best = std::max(best, weighted_norm(apply_green(K, f), r, beta) / fn);
    }
    return best;
  };

  GridSpec coarse, fine;
  coarse.dimension = fine.dimension = N;
  if (N == 1) {
    coarse.height_extent = fine.height_extent = opts.extent;
    coarse.nodes_height = opts.nodes;
    fine.nodes_height = 2 * opts.nodes;
  } else {
    coarse.height_extent = fine.height_extent = coarse.lateral_extent = fine.lateral_extent = 0.5 * opts.extent;
    coarse.nodes_height = coarse.nodes_lateral = opts.nodes_axis;
    fine.nodes_height = fine.nodes_lateral = static_cast<int>(std::lround(1.4 * opts.nodes_axis));
  }
  const double rc = max_ratio(coarse), rf = max_ratio(fine);
  const double growth = rf / rc - 1.0;
  CheckReport rep;
  rep.name = format("glaa_bounded_N%d_q%g_a%g_r%g_b%g", N, q, alpha, r, beta);
  rep.statistic = growth;
  rep.passed = std::isfinite(growth) && std::abs(growth) <= kGlaaGrowthTol;
  rep.samples = family_size;
  rep.details = format("max ||G f||_{L^r_beta} / ||f||_{L^q_alpha}: %.6g (coarse), %.6g (fine); growth tolerance %.0f%%",
                       rc, rf, 100.0 * kGlaaGrowthTol);
  return rep;
}

CheckReport verify_glaa_sharpness(int N, double q, double sigma) {
  if (N < 1 || N > 3) throw UnsupportedDimensionError("verify_glaa_sharpness: only N in {1, 2, 3}");
  if (!(q > 1.0) || !(sigma > 1.0 / q) || !(sigma < 1.0))
    throw PreconditionError("verify_glaa_sharpness: need q > 1 and 1/q < sigma < 1");
  // Lateral cross-section of the half ball |x| < 1/2 at height t.
  auto cross = [N](double t) {
    const double r2 = std::max(0.0, 0.25 - t * t);
    switch (N) {
      case 1: return 1.0;
      case 2: return 2.0 * std::sqrt(r2);
      default: return std::numbers::pi * r2;
    }
  };
  const double c0 = cross(0.0);
  const QuadratureOptions opts{0.0, 1e-12, 4000};
  // With t = e^{-l}: int_{eps}^{1/2} c(t) t^{-1} (log 1/t)^{-sigma} dt = int_{log 2}^{log 1/eps} c(e^{-l}) l^{-sigma} dl.
  auto moment = [&](double L) {
    return integrate([&](double l) { return cross(std::exp(-l)) * std::pow(l, -sigma); }, std::log(2.0), L, opts).value;
  };
  const int m = 10;
  Eigen::MatrixXd A(m, 2);
  Eigen::VectorXd b(m);
  for (int k = 0; k < m; ++k) {
    const double L = (k + 3) * std::log(10.0);  // eps = 1e-3 .. 1e-12
    A(k, 0) = 1.0;
    A(k, 1) = std::pow(L, 1.0 - sigma) / (1.0 - sigma);
    b(k) = moment(L);
  }
  const Eigen::Vector2d coef = A.colPivHouseholderQr().solve(b);
  // ||f||_{L^q_{2-1/q}}^q stays finite: int c(e^{-l}) l^{-sigma q} dl with sigma q > 1.
  const double norm_q = integrate_to_infinity([&](double l) { return cross(std::exp(-l)) * std::pow(l, -sigma * q); },
                                              std::log(2.0), opts)
                            .value;
  CheckReport r;
  r.name = format("glaa_sharpness_N%d_sigma%g", N, sigma);
  r.statistic = coef(1) / c0;
  r.passed = std::abs(r.statistic - 1.0) <= kSharpnessTol;
  r.samples = m;
  r.details = format(
      "fitted growth coefficient / cross-section %.6f (tolerance %.0f%%); leading-term factor eps 1e-3 -> 1e-6: %.6f; "
      "||f||^q in L^q_{2-1/q} = %.6g (finite)",
      r.statistic, 100.0 * kSharpnessTol, std::pow(2.0, 1.0 - sigma), norm_q);
  return r;
}

std::vector<CheckReport> verify_glaa(int N, double q, double alpha, double r, double beta, int family_size,
                                     std::uint64_t seed) {
  std::vector<CheckReport> out{verify_glaa_boundedness(N, q, alpha, r, beta, family_size, seed)};
  for (double sigma : {0.6, 0.8})
    if (sigma > 1.0 / q) out.push_back(verify_glaa_sharpness(N, q, sigma));
  return out;
}

std::vector<CheckReport> verify_solution_structure(const std::vector<double>& kappas, const KernelMatrix& K,
                                                   const Field& Pmu, double p, const IterationOptions& opts) {
  if (kappas.empty()) throw PreconditionError("verify_solution_structure: no kappas");
  std::vector<double> ks = kappas;
  std::sort(ks.begin(), ks.end());
  IterationOptions io = opts;
  io.record_iterates = std::min(io.max_iter + 1, 5000);

  std::vector<SolveResult> runs;
  std::string failed;
  for (double k : ks) {
    runs.push_back(monotone_iterate(k, K, Pmu, p, io));
    if (runs.back().status != SolveStatus::Converged) failed += format(" %g(%s)", k, to_string(runs.back().status));
  }
  std::vector<CheckReport> out;
  const long nk = static_cast<long>(ks.size());
  if (!failed.empty()) {
    for (const char* name : {"iterate_domination", "iterate_monotonicity", "limit_ordering", "boundary_domination",
                             "minimal_stability"})
      out.push_back({name, false, std::numeric_limits<double>::quiet_NaN(),
                     "monotone iteration did not converge for kappa =" + failed, nk});
    return out;
  }

  auto slack = [](const Eigen::VectorXd& v) { return kStructureSlack * std::max(1.0, v.cwiseAbs().maxCoeff()); };

  double dom = -std::numeric_limits<double>::infinity();
  bool dom_ok = true;
  long dom_samples = 0;
  for (std::size_t a = 0; a < ks.size(); ++a)
    for (std::size_t b = a + 1; b < ks.size(); ++b) {
      const auto& Ua = runs[a].iterates;
      const auto& Ub = runs[b].iterates;
      const std::size_t J = std::min(Ua.size(), Ub.size());
      for (std::size_t j = 0; j < J; ++j) {
        const Eigen::VectorXd excess = Ua[j].values - (ks[a] / ks[b]) * Ub[j].values;
        const double e = excess.maxCoeff();
        dom = std::max(dom, e);
        if (e > slack(Ub[j].values)) dom_ok = false;
        ++dom_samples;
      }
    }
  out.push_back({"iterate_domination", dom_ok, dom,
                 format("max over pairs, j and nodes of U_j^k - (k/k') U_j^k'; slack %.0e", kStructureSlack),
                 dom_samples});

  double mono = -std::numeric_limits<double>::infinity();
  bool mono_ok = true;
  long mono_samples = 0;
  for (const SolveResult& run : runs)
    for (std::size_t j = 0; j + 1 < run.iterates.size(); ++j) {
      const double drop = (run.iterates[j].values - run.iterates[j + 1].values).maxCoeff();
      mono = std::max(mono, drop);
      if (drop > slack(run.iterates[j + 1].values)) mono_ok = false;
      ++mono_samples;
    }
  out.push_back({"iterate_monotonicity", mono_ok, mono, "max over j and nodes of U_j - U_{j+1}", mono_samples});

  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a + 1 < ks.size(); ++a)
    gap = std::min(gap, (runs[a + 1].solution.values - runs[a].solution.values).minCoeff());
  out.push_back({"limit_ordering", ks.size() < 2 || gap > 0.0, ks.size() < 2 ? 0.0 : gap,
                 "min over consecutive kappas and nodes of u^k' - u^k (must be > 0)", nk});

  double bd = std::numeric_limits<double>::infinity();
  bool bd_ok = true;
  for (std::size_t a = 0; a < ks.size(); ++a) {
    const double m = (runs[a].solution.values - ks[a] * Pmu.values).minCoeff();
    bd = std::min(bd, m);
    if (m < -slack(runs[a].solution.values)) bd_ok = false;
  }
  out.push_back({"boundary_domination", bd_ok, bd, "min over kappas and nodes of u^k - k Pmu", nk});

  double lmin = std::numeric_limits<double>::infinity();
  std::string lambdas;
  for (std::size_t a = 0; a < ks.size(); ++a) {
    const double l = linearized_spectrum(K, runs[a].solution, p).lambda;
    lmin = std::min(lmin, l);
    lambdas += format("%s%g:%.6g", a ? ", " : "", ks[a], l);
  }
  out.push_back({"minimal_stability", lmin > 1.0, lmin, "lambda by kappa: " + lambdas, nk});
  return out;
}

}  // namespace halfspace
