// Acceptance suite: one PASS/FAIL line per criterion, exit code 1 if any fails.

#include <chrono>
#include <cstdarg>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "fixtures.hpp"
#include "halfspace/cli.hpp"
#include "halfspace/continuation.hpp"
#include "halfspace/exponents.hpp"
#include "halfspace/verify.hpp"

using namespace halfspace;

namespace {

struct Line {
  bool ok = true;
  std::string text;
  void check(bool cond, const char* fmt, ...) __attribute__((format(printf, 3, 4)));
};

void Line::check(bool cond, const char* fmt, ...) {
  char buf[512];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buf, sizeof buf, fmt, args);
  va_end(args);
  ok = ok && cond;
  if (!text.empty()) text += "; ";
  text += buf;
  if (!cond) text += " [x]";
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int failures = 0;

void report(int id, const char* title, const std::function<void(Line&)>& body) {
  Line line;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(line);
  } catch (const std::exception& e) {
    line.ok = false;
    line.text += std::string(line.text.empty() ? "" : "; ") + "exception: " + e.what();
  }
  if (!line.ok) ++failures;
  std::printf("criterion %d %s  %s (%.1fs): %s\n", id, line.ok ? "PASS" : "FAIL", title, seconds_since(t0),
              line.text.c_str());
  std::fflush(stdout);
}

// Smallest j whose D_j agrees with D_* on a scan of (1/r, beta) that includes points just
// above the limit boundary and 1/r near 0 and 1.
int brute_force_index(const DSetParams& P) {
  std::vector<double> inv_r;
  for (double s = 1e-6; s < 1.0; s *= 1.5) inv_r.push_back(s);
  for (int k = 1; k < 400; ++k) inv_r.push_back(k / 400.0);
  for (double s = 1e-6; s < 0.1; s *= 1.5) inv_r.push_back(1.0 - s);
  const double offsets[] = {1e-9, 1e-6, 1e-3, 0.01, 0.1, 0.3, 1.0, 2.0, 5.0};
  for (int j = 1; j < 1000; ++j) {
    bool equal = true;
    for (double s : inv_r) {
      for (double off : offsets) {
        const double beta = -1.0 - s + off;
        if (d_membership(j, 1.0 / s, beta, P) != in_limit_set(1.0 / s, beta)) equal = false;
      }
      if (!equal) break;
    }
    if (equal) return j;
  }
  return -1;
}

}  // namespace

int main() {
  const double sqrt2 = std::sqrt(2.0);
  const auto ref = fixtures::problem_1d(2000);  // H = 20, 2000 nodes, grading 2
  double kappa_star = 0.0;

  report(1, "threshold reproduction", [&](Line& L) {
    for (double p : {3.0, 2.0}) {
      const double exact = std::pow((p + 1) / 2, 1 / (p - 1));
      const auto t0 = std::chrono::steady_clock::now();
      const auto P = fixtures::problem_1d(2000);
      const KappaStarEstimate e = estimate_kappa_star(P.K, P.Pmu, p, 0.05, 5.0, 1e-2);
      const double dt = seconds_since(t0);
      L.check(e.lower <= exact && exact <= e.upper && e.width <= 1e-2 && dt <= 60.0,
              "p=%g: [%.6f, %.6f] contains %.6f, width %.2e, %.2fs", p, e.lower, e.upper, exact, e.width, dt);
      if (p == 3.0) kappa_star = 0.5 * (e.lower + e.upper);
    }
  });

  report(2, "minimal-solution accuracy", [&](Line& L) {
    for (double kappa : {0.1, 1.2}) {
      const SolveResult r = monotone_iterate(kappa, ref.K, ref.Pmu, 3.0);
      const double err = fixtures::max_error(r.solution, fixtures::soliton, kappa);
      L.check(r.status == SolveStatus::Converged && err <= 1e-3 && r.residual_sup <= 1e-7,
              "kappa=%g: %s, sup error %.2e, residual %.2e", kappa, to_string(r.status), err, r.residual_sup);
    }
  });

  Branch branch;
  report(3, "multiplicity", [&](Line& L) {
    branch = trace_branch(0.1, ref.K, ref.Pmu, 3.0);
    const KappaSolutions s = solutions_at_kappa(branch, 1.2, ref.K, ref.Pmu, 3.0);
    L.check(s.fields.size() == 2, "%zu solutions at kappa=1.2 (branch of %zu points)", s.fields.size(),
            branch.points.size());
    if (s.fields.size() == 2) {
      const double lo = sup_norm(s.fields[0]), up = sup_norm(s.fields[1]);
      L.check(std::abs(up - sqrt2) <= 1e-2, "upper sup %.6f", up);
      L.check(up - lo >= 0.15, "sup gap %.4f", up - lo);
    }
  });

  report(4, "fold and stability", [&](Line& L) {
    const SolveResult half = monotone_iterate(0.5 * kappa_star, ref.K, ref.Pmu, 3.0);
    const double lam_half = linearized_spectrum(ref.K, half.solution, 3.0).lambda;
    L.check(lam_half > 1.05, "lambda(0.5 k*) = %.4f", lam_half);
    const FoldEstimate f = detect_fold(branch);
    L.check(std::abs(f.point.lambda - 1.0) <= 2e-2, "lambda at fold %.6f", f.point.lambda);
    const KappaSolutions s = solutions_at_kappa(branch, 0.8 * kappa_star, ref.K, ref.Pmu, 3.0);
    if (s.fields.size() == 2) {
      const double lam_up = linearized_spectrum(ref.K, s.fields[1], 3.0).lambda;
      L.check(lam_up < 0.95, "upper lambda(0.8 k*) = %.4f", lam_up);
    } else {
      L.check(false, "%zu solutions at 0.8 k*", s.fields.size());
    }
    L.check(std::abs(f.kappa - kappa_star) <= 1.5e-2, "fold kappa %.6f vs bisection %.6f", f.kappa, kappa_star);
  });

  report(5, "kernel identities", [&](Line& L) {
    for (int N = 1; N <= 3; ++N)
      for (const CheckReport& r : verify_kernel_identities(N, 10000, 20240 + N))
        if (r.name == "poisson_mass" || r.name == "green_symmetry" || r.name == "green_bound")
          L.check(r.passed, "N=%d %s %.2e", N, r.name.c_str(), r.statistic);
  });

  report(6, "gintest scaling", [&](Line& L) {
    const std::vector<double> heights{1e-5, 3e-5, 1e-4, 3e-4, 1e-3};
    const CheckReport base = verify_gintest_scaling(1, 1.0, -1.5, heights);
    L.check(base.passed, "(1,1,-1.5) slope %.4f", base.statistic);
    struct T {
      int N;
      double s, theta;
    };
    int extra = 0;
    for (const T& t : {T{1, 2.0, -1.2}, T{2, 1.0, -1.5}, T{2, 1.5, -1.2}, T{3, 1.0, -1.5}, T{3, 1.5, -1.3}}) {
      const CheckReport r = verify_gintest_scaling(t.N, t.s, t.theta, heights);
      const double predicted = 2 + t.theta - t.N * (1 - 1 / t.s);
      L.check(true, "(%d,%g,%g) %.4f vs %.4f", t.N, t.s, t.theta, r.statistic, predicted);
      extra += r.passed;
    }
    L.check(extra >= 4, "%d additional triples pass", extra);
  });

  report(7, "integral inequality", [&](Line& L) {
    for (int N = 1; N <= 3; ++N)
      for (double sigma : {0.6, 0.8}) {
        const CheckReport r = verify_glaa_sharpness(N, 4.0, sigma);
        L.check(r.passed, "N=%d sigma=%g fit %.4f", N, sigma, r.statistic);
      }
    struct Tuple {
      double q, alpha, r, beta;
    };
    for (const Tuple& t : {Tuple{4, 0, 4, 0}, Tuple{2, 0.5, 4, -0.5}, Tuple{2, 1, 2, 0}}) {
      const CheckReport r = verify_glaa_boundedness(1, t.q, t.alpha, t.r, t.beta, 12, 77);
      L.check(r.passed, "(%g,%g,%g,%g) growth %.2e", t.q, t.alpha, t.r, t.beta, r.statistic);
    }
  });

  report(8, "exponent algebra", [&](Line& L) {
    const double jl = critical_exponents(11).joseph_lundgren.value();
    L.check(joseph_lundgren_text(11) == "(37+8*sqrt(10))/9" &&
                std::abs(jl - (37 + 8 * std::sqrt(10.0)) / 9) <= 1e-15 * jl,
            "p_JL(11) = %s = %.15f", joseph_lundgren_text(11).c_str(), jl);
    bool ordered = true;
    for (int N = 3; N <= 30; ++N) {
      const CriticalExponents c = critical_exponents(N);
      ordered = ordered && c.sobolev < c.joseph_lundgren;
    }
    L.check(ordered, "p_JL > p_S for N=3..30");
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    int sets = 0, matched = 0;
    while (sets < 25) {
      const int N = 1 + static_cast<int>(U(rng) * 3);
      const double p = 1.2 + 3.0 * U(rng);
      const double q = std::max(p, N * (p - 1) / 2) * (1.05 + 2.0 * U(rng));
      const double alpha = 0.5 * U(rng);
      if (!check_admissible<double>(N, p, q, alpha).valid) continue;
      const double inv_r0 = (1.0 - (p - 1) / q) * (0.05 + 0.9 * U(rng));
      const double hi = 2.0 - (p - 1) * (1 / q + alpha) - inv_r0, lo = -1.0 - inv_r0;
      const DSetParams P = make_dset_params(N, p, q, alpha, 1 / inv_r0, lo + (hi - lo) * (0.02 + 0.96 * U(rng)));
      ++sets;
      matched += stabilization_index(P) == brute_force_index(P);
    }
    L.check(matched == sets, "stabilization index matches the scan on %d/%d sets", matched, sets);
    const int j = stabilization_index(make_dset_params(1, 3, 4, 0, 4, 0));
    L.check(j == 2, "j*(1,3,4,0,4,0) = %d", j);
  });

  report(9, "structural invariants", [&](Line& L) {
    for (const CheckReport& r : verify_solution_structure({0.2, 0.4, 0.8}, ref.K, ref.Pmu, 3.0))
      L.check(r.passed, "%s %.2e", r.name.c_str(), r.statistic);
    double prev = INFINITY;
    bool decreasing = true;
    std::string values;
    for (int n : {1000, 2000, 4000}) {
      const auto P = fixtures::problem_1d(n);
      Eigen::VectorXd u(n);
      for (int i = 0; i < n; ++i) u(i) = sqrt2 / std::cosh(P.grid->height(i));
      const double s = jacobian_min_singular_value(P.K, Field(P.grid, u), 3.0);
      decreasing = decreasing && s < prev;
      prev = s;
      L.check(true, "sigma_min(n=%d) = %.3e", n, s);
    }
    L.check(decreasing, "sigma_min decreases under refinement");
  });

  std::printf("%s: %d criteria failed\n", failures ? "FAILED" : "ALL PASSED", failures);
  return failures ? 1 : 0;
}
