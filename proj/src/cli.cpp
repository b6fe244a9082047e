#include "halfspace/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>

#include "halfspace/config.hpp"
#include "halfspace/continuation.hpp"
#include "halfspace/exponents.hpp"
#include "halfspace/verify.hpp"

namespace halfspace {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr const char* kVersion = "1.0.0";

class IoError : public Error {
 public:
  using Error::Error;
};

json versions() {
  return {{"halfspace", kVersion},
          {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                        std::to_string(EIGEN_MINOR_VERSION)},
          {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                std::to_string(NLOHMANN_JSON_VERSION_PATCH)},
          {"cli11", CLI11_VERSION},
          {"compiler", __VERSION__}};
}

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json extended(const ExtendedReal& x) { return x.is_infinite() ? json(nullptr) : json(x.value()); }

struct Setup {
  RunConfig cfg;
  GridPtr grid;
  KernelMatrix K;
  Field Pmu;
};

Setup make_setup(const RunConfig& cfg) {
  Setup s{cfg, build_grid(cfg.grid), {}, {}};
  s.K = assemble_green(s.grid);
  s.Pmu = poisson_trace(s.grid, boundary_measure(cfg));
  return s;
}

fs::path output_dir(const RunConfig& cfg, const std::string& flag) {
  std::string dir = flag;
  if (dir.empty()) dir = cfg.output_dir;
  if (dir.empty()) {
    const char* env = std::getenv("HALFSPACE_OUTPUT_DIR");
    dir = env && *env ? env : ".";
  }
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw IoError("cannot create output directory '" + dir + "': " + ec.message());
  return dir;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  out.close();
  if (!out) throw IoError("cannot write '" + path.string() + "'");
}

void write_summary(const fs::path& dir, const std::string& command, const RunConfig& cfg, const json& results) {
  const json summary = {{"command", command},
                        {"config", to_json(cfg)},
                        {"versions", versions()},
                        {"seed", cfg.seed},
                        {"results", results}};
  write_file(dir / "summary.json", summary.dump(2) + "\n");
}

std::string kappa_tag(double kappa) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%g", kappa);
  return buf;
}

void write_solution(const fs::path& dir, double kappa, const Field& u) {
  std::string text = "index,radius,height,weight,value\n";
  const Grid& g = *u.grid;
  for (Eigen::Index i = 0; i < u.size(); ++i)
    text += std::to_string(i) + "," + format_number(g.radius(i)) + "," + format_number(g.height(i)) + "," +
            format_number(g.weight(i)) + "," + format_number(u.values(i)) + "\n";
  write_file(dir / ("solution_" + kappa_tag(kappa) + ".csv"), text);
}

double require_kappa(const RunConfig& cfg, double flag) {
  if (flag > 0.0) return flag;
  if (cfg.problem.kappa) return *cfg.problem.kappa;
  throw ConfigError("config: field 'problem.kappa' is required (or pass --kappa)");
}

// --- subcommands ---------------------------------------------------------

struct ExponentArgs {
  int N = 0;
  double p = 0.0;
  std::optional<double> q, nu, r0, beta0;
  double alpha = 0.0;
};

int cmd_exponents(const ExponentArgs& a) {
  if (a.N < 1) throw ConfigError("exponents: --N must be >= 1");
  if (!(a.p > 1.0)) throw ConfigError("exponents: --p must exceed 1");
  const CriticalExponents ce = critical_exponents(a.N);
  json out = {{"N", a.N}, {"p", a.p}};
  out["p_S"] = {{"value", extended(ce.sobolev)}, {"exact", sobolev_exponent_text(a.N)}};
  out["p_JL"] = {{"value", extended(ce.joseph_lundgren)}, {"exact", joseph_lundgren_text(a.N)}};
  out["p_JL_above_p_S"] = ce.sobolev < ce.joseph_lundgren || ce.sobolev.is_infinite();
  out["p_below_p_S"] = ExtendedReal(a.p) < ce.sobolev;
  out["p_below_p_JL"] = ExtendedReal(a.p) < ce.joseph_lundgren;

  long scanned = 0, admissible = 0;
  std::optional<double> min_q;
  for (int iq = 5; iq <= 160; ++iq)
    for (int ia = 0; ia <= 16; ++ia) {
      const double q = 0.25 * iq, alpha = 0.125 * ia;
      ++scanned;
      if (check_admissible<double>(a.N, a.p, q, alpha).valid) {
        ++admissible;
        if (ia == 0 && !min_q) min_q = q;
      }
    }
  out["admissibility_scan"] = {{"q_grid", {1.25, 40.0, 0.25}},
                               {"alpha_grid", {0.0, 2.0, 0.125}},
                               {"scanned", scanned},
                               {"admissible", admissible},
                               {"min_q_at_alpha_0", min_q ? json(*min_q) : json(nullptr)},
                               {"q_lower_bound", std::max(a.p, a.N * (a.p - 1.0) / 2.0)}};

  const EnergyExponentWindow w = energy_exponent_window(a.p);
  out["energy_window"] = {{"lower", w.lower}, {"upper", w.upper}};
  if (a.nu) out["energy_window"]["nu"] = *a.nu, out["energy_window"]["nu_inside"] = in_energy_window(*a.nu, a.p);

  if (a.q) {
    const AdmissiblePair pr = check_admissible<double>(a.N, a.p, *a.q, a.alpha);
    json violated = json::array();
    for (AdmissibilityCondition c : pr.violated) violated.push_back(to_string(c));
    out["pair"] = {{"q", *a.q}, {"alpha", a.alpha}, {"valid", pr.valid}, {"violated", violated}};
    if (a.r0 && a.beta0 && pr.valid) {
      const DSetParams params = make_dset_params(a.N, a.p, *a.q, a.alpha, *a.r0, *a.beta0);
      out["stabilization"] = {{"r0", *a.r0},
                              {"beta0", *a.beta0},
                              {"tau", params.tau},
                              {"delta", params.delta},
                              {"j_star", stabilization_index(params)}};
    }
  } else if (a.r0 || a.beta0) {
    throw ConfigError("exponents: --r0/--beta0 need --q");
  }
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_solve(const RunConfig& cfg, double kappa_flag, const std::string& out_flag, bool eigen) {
  const double kappa = require_kappa(cfg, kappa_flag);
  const fs::path dir = output_dir(cfg, out_flag);
  const Setup s = make_setup(cfg);
  const SolveResult r = monotone_iterate(kappa, s.K, s.Pmu, cfg.problem.p, iteration_options(cfg));
  json res = {{"kappa", kappa},
              {"status", to_string(r.status)},
              {"iterations", r.iterations},
              {"residual_sup", number(r.residual_sup)}};
  if (r.status == SolveStatus::Converged) {
    res["sup_norm"] = sup_norm(r.solution);
    res["lq_alpha_norm"] = weighted_norm(r.solution, cfg.exponents.q, cfg.exponents.alpha);
  }
  int code = r.status == SolveStatus::Converged ? 0 : 1;
  if (eigen && code == 0) {
    try {
      const EigenResult e = linearized_spectrum(s.K, r.solution, cfg.problem.p);
      res["eigen"] = {{"lambda", e.lambda}, {"rho", e.rho}, {"iterations", e.iterations}, {"residual", e.residual}};
    } catch (const IterationLimitError& e) {
      res["eigen"] = {{"error", e.what()}};
      code = 1;
    }
  }
  if (code == 0) write_solution(dir, kappa, r.solution);
  write_summary(dir, eigen ? "eigen" : "solve", cfg, res);
  std::cout << res.dump(2) << "\n";
  return code;
}

int cmd_kappa_star(const RunConfig& cfg, const std::string& out_flag) {
  const fs::path dir = output_dir(cfg, out_flag);
  const Setup s = make_setup(cfg);
  const KappaStarEstimate e = estimate_kappa_star(s.K, s.Pmu, cfg.problem.p, cfg.solver.bracket_lo,
                                                  cfg.solver.bracket_hi, cfg.solver.kappa_tol, iteration_options(cfg));
  const json res = {
      {"kappa_star", {{"lower", e.lower}, {"upper", e.upper}, {"width", e.width}, {"probes", e.probes}}}};
  write_summary(dir, "kappa-star", cfg, res);
  std::cout << res.dump(2) << "\n";
  return 0;
}

int cmd_branch(const RunConfig& cfg, const std::string& out_flag) {
  const fs::path dir = output_dir(cfg, out_flag);
  const Setup s = make_setup(cfg);
  ContinuationOptions o;
  o.step = cfg.continuation.step;
  o.min_step = cfg.continuation.min_step;
  o.max_step = cfg.continuation.max_step;
  o.max_points = cfg.continuation.max_points;
  o.stop_kappa = cfg.continuation.stop_kappa;
  o.newton_tol = cfg.solver.newton_tol;
  o.norm_q = cfg.exponents.q;
  o.norm_alpha = cfg.exponents.alpha;
  o.start = iteration_options(cfg);
  const Branch b = trace_branch(cfg.continuation.start_kappa, s.K, s.Pmu, cfg.problem.p, o);
  write_file(dir / "branch.csv", branch_csv(b));

  json res = {{"points", b.points.size()}, {"termination", b.termination}};
  json crossing = nullptr;
  for (std::size_t i = 1; i < b.points.size(); ++i)
    if (b.points[i - 1].lambda > 1.0 && b.points[i].lambda <= 1.0) {
      crossing = i;
      break;
    }
  res["lambda_crossing_index"] = crossing;
  try {
    const FoldEstimate f = detect_fold(b);
    res["fold"] = {{"kappa", f.kappa},
                   {"index", b.fold_index ? json(*b.fold_index) : json(nullptr)},
                   {"lambda", number(f.point.lambda)},
                   {"sup_norm", f.point.sup_norm}};
  } catch (const NotFoundError&) {
    res["fold"] = nullptr;
  }
  write_summary(dir, "branch", cfg, res);
  std::cout << res.dump(2) << "\n";
  return 0;
}

json report_json(const CheckReport& r) {
  return {{"name", r.name},
          {"passed", r.passed},
          {"statistic", number(r.statistic)},
          {"details", r.details},
          {"samples", r.samples}};
}

int cmd_verify(const RunConfig& cfg, const std::string& suite, const std::string& out_flag) {
  const fs::path dir = output_dir(cfg, out_flag);
  std::vector<CheckReport> all;
  auto add = [&](std::vector<CheckReport> v) { all.insert(all.end(), v.begin(), v.end()); };
  const bool every = suite == "all";
  if (every || suite == "kernels")
    for (int N = 1; N <= 3; ++N) {
      auto v = verify_kernel_identities(N, cfg.verify.kernel_samples, cfg.seed + std::uint64_t(N));
      for (CheckReport& r : v) r.name += "_N" + std::to_string(N);
      add(std::move(v));
    }
  if (every || suite == "gintest") {
    const std::vector<double> heights{1e-5, 3e-5, 1e-4, 3e-4, 1e-3};
    struct Triple {
      int N;
      double s, theta;
    };
    for (const Triple& t : {Triple{1, 1.0, -1.5}, Triple{1, 2.0, -1.2}, Triple{2, 1.0, -1.5}, Triple{2, 1.5, -1.2},
                            Triple{3, 1.0, -1.5}, Triple{3, 1.5, -1.3}})
      all.push_back(verify_gintest_scaling(t.N, t.s, t.theta, heights));
  }
  if (every || suite == "glaa") {
    struct Tuple {
      double q, alpha, r, beta;
    };
    for (const Tuple& t : {Tuple{4, 0, 4, 0}, Tuple{2, 0.5, 4, -0.5}, Tuple{2, 1, 2, 0}})
      all.push_back(verify_glaa_boundedness(1, t.q, t.alpha, t.r, t.beta, cfg.verify.glaa_family, cfg.seed));
    for (int N = 1; N <= 3; ++N)
      for (double sigma : {0.6, 0.8}) all.push_back(verify_glaa_sharpness(N, 4.0, sigma));
  }
  if (every || suite == "structure") {
    const Setup s = make_setup(cfg);
    add(verify_solution_structure(cfg.verify.kappas, s.K, s.Pmu, cfg.problem.p, iteration_options(cfg)));
  }

  json arr = json::array();
  bool ok = true;
  for (const CheckReport& r : all) {
    arr.push_back(report_json(r));
    ok = ok && r.passed;
  }
  write_file(dir / "verify.json", arr.dump(2) + "\n");
  write_summary(dir, "verify", cfg,
                {{"suite", suite}, {"checks", all.size()}, {"passed", ok}, {"reports", arr}});
  std::cout << arr.dump(2) << "\n";
  return ok ? 0 : 1;
}

}  // namespace

std::string branch_csv(const Branch& b) {
  std::string text = "index,kappa,sup_norm,lq_alpha_norm,lambda,arclength,fold_flag\n";
  for (std::size_t i = 0; i < b.points.size(); ++i) {
    const BranchPoint& pt = b.points[i];
    text += std::to_string(i) + "," + format_number(pt.kappa) + "," + format_number(pt.sup_norm) + "," +
            format_number(pt.lq_alpha_norm) + "," + format_number(pt.lambda) + "," + format_number(pt.arclength) +
            "," + (pt.fold_flag ? "1" : "0") + "\n";
  }
  return text;
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string sobolev_exponent_text(int N) {
  if (N <= 2) return "inf";
  const long a = N + 2, b = N - 2, g = std::gcd(a, b);
  return b / g == 1 ? std::to_string(a / g) : std::to_string(a / g) + "/" + std::to_string(b / g);
}

std::string joseph_lundgren_text(int N) {
  if (N <= 10) return "inf";
  long a = long(N) * N - 8L * N + 4, d = long(N - 2) * (N - 10);
  // 8 sqrt(N - 1) = b sqrt(m) with m squarefree
  long m = N - 1, k = 1;
  for (long f = 2; f * f <= m; ++f)
    while (m % (f * f) == 0) m /= f * f, k *= f;
  long b = 8 * k;
  if (m == 1) {
    a += b;
    const long g = std::gcd(a, d);
    return d / g == 1 ? std::to_string(a / g) : std::to_string(a / g) + "/" + std::to_string(d / g);
  }
  const long g = std::gcd(std::gcd(a, b), d);
  a /= g, b /= g, d /= g;
  const std::string num = std::to_string(a) + "+" + std::to_string(b) + "*sqrt(" + std::to_string(m) + ")";
  return d == 1 ? num : "(" + num + ")/" + std::to_string(d);
}

int run_command(const std::vector<std::string>& args) {
  std::vector<char*> argv;
  for (const std::string& s : args) argv.push_back(const_cast<char*>(s.c_str()));
  return run_command(static_cast<int>(argv.size()), argv.data());
}

int run_command(int argc, char** argv) {
  CLI::App app{"Boundary blow-up threshold solver for -Lu + u = u^p on the half space"};
  app.require_subcommand(1);

  ExponentArgs ea;
  auto* exp = app.add_subcommand("exponents", "critical exponents and admissibility");
  exp->add_option("--N", ea.N, "dimension")->required();
  exp->add_option("--p", ea.p, "nonlinearity exponent")->required();
  exp->add_option("--q", ea.q, "integrability exponent to check");
  exp->add_option("--alpha", ea.alpha, "weight exponent (default 0)");
  exp->add_option("--nu", ea.nu, "energy exponent to test");
  exp->add_option("--r0", ea.r0, "starting exponent of the D_j recursion");
  exp->add_option("--beta0", ea.beta0, "starting weight of the D_j recursion");

  std::string config_path, out_dir, suite = "all";
  double kappa = 0.0;
  auto with_config = [&](const char* name, const char* help) {
    auto* sc = app.add_subcommand(name, help);
    sc->add_option("--config", config_path, "JSON run configuration")->required();
    sc->add_option("--output-dir", out_dir, "overrides output_dir and HALFSPACE_OUTPUT_DIR");
    return sc;
  };
  auto* solve = with_config("solve", "minimal solution by monotone iteration");
  solve->add_option("--kappa", kappa, "overrides problem.kappa");
  auto* kstar = with_config("kappa-star", "bisection bracket of the existence threshold");
  auto* eigen = with_config("eigen", "first eigenvalue of the linearization at the minimal solution");
  eigen->add_option("--kappa", kappa, "overrides problem.kappa");
  auto* branch = with_config("branch", "pseudo-arclength continuation through the fold");
  auto* verify = with_config("verify", "empirical checks");
  verify->add_option("--suite", suite, "kernels | gintest | glaa | structure | all")
      ->check(CLI::IsMember({"kernels", "gintest", "glaa", "structure", "all"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (exp->parsed()) return cmd_exponents(ea);
    const RunConfig cfg = load_config(config_path);
    if (solve->parsed()) return cmd_solve(cfg, kappa, out_dir, false);
    if (eigen->parsed()) return cmd_solve(cfg, kappa, out_dir, true);
    if (kstar->parsed()) return cmd_kappa_star(cfg, out_dir);
    if (branch->parsed()) return cmd_branch(cfg, out_dir);
    if (verify->parsed()) return cmd_verify(cfg, suite, out_dir);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace halfspace
