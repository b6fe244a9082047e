#include "halfspace/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "halfspace/errors.hpp"

namespace halfspace {

namespace {

using nlohmann::json;

// Reads the keys of one JSON object and rejects whatever it did not read.
class Section {
 public:
  Section(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError("config: '" + display() + "' must be an object");
  }

  bool has(const char* key) const { return j_.contains(key); }

  template <class T>
  void read(const char* key, T& out) {
    seen_.insert(key);
    if (!j_.contains(key)) return;
    const json& v = j_.at(key);
    try {
      if constexpr (std::is_same_v<T, int> || std::is_same_v<T, long>) {
        if (!v.is_number_integer()) throw ConfigError("");
        out = v.get<T>();
      } else if constexpr (std::is_same_v<T, std::uint64_t>) {
        if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) throw ConfigError("");
        out = v.get<T>();
      } else if constexpr (std::is_same_v<T, double>) {
        if (!v.is_number()) throw ConfigError("");
        out = v.get<double>();
      } else if constexpr (std::is_same_v<T, std::string>) {
        if (!v.is_string()) throw ConfigError("");
        out = v.get<std::string>();
      } else {
        if (!v.is_array()) throw ConfigError("");
        out.clear();
        for (const json& e : v) {
          if (!e.is_number()) throw ConfigError("");
          out.push_back(e.get<double>());
        }
      }
    } catch (const ConfigError&) {
      throw ConfigError("config: field '" + field(key) + "' has the wrong type (expected " + type_name<T>() + ")");
    }
  }

  void read_optional(const char* key, std::optional<double>& out) {
    seen_.insert(key);
    if (!j_.contains(key) || j_.at(key).is_null()) return;
    double v = 0.0;
    read(key, v);
    out = v;
  }

  Section sub(const char* key) {
    seen_.insert(key);
    static const json empty = json::object();
    return Section(j_.contains(key) ? j_.at(key) : empty, field(key));
  }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it)
      if (!seen_.count(it.key())) throw ConfigError("config: unknown field '" + field(it.key()) + "'");
  }

  std::string field(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  [[noreturn]] void fail(const char* key, const std::string& why) const {
    throw ConfigError("config: field '" + field(key) + "' " + why);
  }

 private:
  std::string display() const { return path_.empty() ? "<root>" : path_; }
  template <class T>
  static const char* type_name() {
    if constexpr (std::is_same_v<T, int> || std::is_same_v<T, long>) return "integer";
    else if constexpr (std::is_same_v<T, std::uint64_t>) return "nonnegative integer";
    else if constexpr (std::is_same_v<T, double>) return "number";
    else if constexpr (std::is_same_v<T, std::string>) return "string";
    else return "array of numbers";
  }

  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

void require(bool ok, Section& s, const char* key, const char* why) {
  if (!ok) s.fail(key, why);
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') ++line, col = 1;
      else ++col;
    }
    throw ConfigError("config: syntax error at line " + std::to_string(line) + ", column " + std::to_string(col) +
                      ": " + e.what());
  }

  RunConfig c;
  Section root(j, "");

  Section pr = root.sub("problem");
  pr.read("N", c.problem.N);
  pr.read("p", c.problem.p);
  pr.read_optional("kappa", c.problem.kappa);
  require(c.problem.N >= 1 && c.problem.N <= 3, pr, "N", "must be 1, 2 or 3");
  require(c.problem.p > 1.0, pr, "p", "must exceed 1");
  require(!c.problem.kappa || *c.problem.kappa > 0.0, pr, "kappa", "must be positive");
  {
    Section mu = pr.sub("mu");
    mu.read("type", c.problem.mu.type);
    mu.read("mass", c.problem.mu.mass);
    mu.read("radii", c.problem.mu.radii);
    mu.read("values", c.problem.mu.values);
    const MuSpec& m = c.problem.mu;
    if (m.type == "point_mass") {
      require(m.mass > 0.0, mu, "mass", "must be positive");
      require(!mu.has("radii") && !mu.has("values"), mu, "type", "point_mass takes no radii/values");
    } else if (m.type == "radial_density") {
      require(c.problem.N >= 2, mu, "type", "radial_density needs N >= 2");
      require(m.radii.size() >= 2 && m.radii.size() == m.values.size(), mu, "radii",
              "needs >= 2 entries, as many as values");
      require(!mu.has("mass"), mu, "mass", "is only used by point_mass");
    } else {
      mu.fail("type", "must be point_mass or radial_density");
    }
    mu.finish();
  }
  pr.finish();

  Section ex = root.sub("exponents");
  ex.read("q", c.exponents.q);
  ex.read("alpha", c.exponents.alpha);
  require(c.exponents.q >= 1.0, ex, "q", "must be >= 1");
  ex.finish();

  c.grid.dimension = c.problem.N;
  Section gr = root.sub("grid");
  gr.read("R", c.grid.lateral_extent);
  gr.read("H", c.grid.height_extent);
  gr.read("nodes_lateral", c.grid.nodes_lateral);
  gr.read("nodes_height", c.grid.nodes_height);
  gr.read("grading", c.grid.grading);
  gr.read("angular_order", c.grid.angular_order);
  require(c.grid.lateral_extent > 0.0, gr, "R", "must be positive");
  require(c.grid.height_extent > 0.0, gr, "H", "must be positive");
  require(c.grid.nodes_height >= 2, gr, "nodes_height", "must be >= 2");
  require(c.problem.N == 1 || c.grid.nodes_lateral >= 2, gr, "nodes_lateral", "must be >= 2 for N >= 2");
  require(c.grid.grading >= 1.0, gr, "grading", "must be >= 1");
  require(c.grid.angular_order >= 2, gr, "angular_order", "must be >= 2");
  {
    const long n = long(c.grid.nodes_height) * (c.problem.N == 1 ? 1 : c.grid.nodes_lateral);
    require(n <= kMaxDenseNodes, gr, "nodes_height", "times nodes_lateral exceeds the dense limit of 20000 nodes");
  }
  gr.finish();

  Section so = root.sub("solver");
  so.read("tol", c.solver.tol);
  so.read("max_iter", c.solver.max_iter);
  so.read("blowup_cap", c.solver.blowup_cap);
  so.read("start", c.solver.start);
  so.read("bracket_lo", c.solver.bracket_lo);
  so.read("bracket_hi", c.solver.bracket_hi);
  so.read("kappa_tol", c.solver.kappa_tol);
  so.read("newton_tol", c.solver.newton_tol);
  require(c.solver.tol > 0.0, so, "tol", "must be positive");
  require(c.solver.max_iter >= 1, so, "max_iter", "must be >= 1");
  require(c.solver.blowup_cap > 0.0, so, "blowup_cap", "must be positive");
  require(c.solver.start == "scaled_boundary" || c.solver.start == "boundary" || c.solver.start == "zero", so, "start",
          "must be scaled_boundary, boundary or zero");
  require(c.solver.bracket_lo > 0.0, so, "bracket_lo", "must be positive");
  require(c.solver.bracket_hi > c.solver.bracket_lo, so, "bracket_hi", "must exceed bracket_lo");
  require(c.solver.kappa_tol > 0.0, so, "kappa_tol", "must be positive");
  require(c.solver.newton_tol > 0.0, so, "newton_tol", "must be positive");
  so.finish();

  Section co = root.sub("continuation");
  co.read("start_kappa", c.continuation.start_kappa);
  co.read("step", c.continuation.step);
  co.read("max_points", c.continuation.max_points);
  co.read("min_step", c.continuation.min_step);
  co.read("max_step", c.continuation.max_step);
  co.read("stop_kappa", c.continuation.stop_kappa);
  require(c.continuation.start_kappa > 0.0, co, "start_kappa", "must be positive");
  require(c.continuation.min_step > 0.0, co, "min_step", "must be positive");
  require(c.continuation.step >= c.continuation.min_step, co, "step", "must be >= min_step");
  require(c.continuation.max_step >= c.continuation.step, co, "max_step", "must be >= step");
  require(c.continuation.max_points >= 2, co, "max_points", "must be >= 2");
  co.finish();

  Section ve = root.sub("verify");
  ve.read("kappas", c.verify.kappas);
  ve.read("kernel_samples", c.verify.kernel_samples);
  ve.read("glaa_family", c.verify.glaa_family);
  require(!c.verify.kappas.empty(), ve, "kappas", "must not be empty");
  for (double k : c.verify.kappas) require(k > 0.0, ve, "kappas", "entries must be positive");
  require(c.verify.kernel_samples >= 1, ve, "kernel_samples", "must be >= 1");
  require(c.verify.glaa_family >= 1, ve, "glaa_family", "must be >= 1");
  ve.finish();

  root.read("seed", c.seed);
  root.read("output_dir", c.output_dir);
  root.finish();
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

nlohmann::json to_json(const RunConfig& c) {
  json mu = {{"type", c.problem.mu.type}};
  if (c.problem.mu.type == "point_mass") {
    mu["mass"] = c.problem.mu.mass;
  } else {
    mu["radii"] = c.problem.mu.radii;
    mu["values"] = c.problem.mu.values;
  }
  json problem = {{"N", c.problem.N}, {"p", c.problem.p}, {"mu", mu}};
  problem["kappa"] = c.problem.kappa ? json(*c.problem.kappa) : json(nullptr);
  return {
      {"problem", problem},
      {"exponents", {{"q", c.exponents.q}, {"alpha", c.exponents.alpha}}},
      {"grid",
       {{"R", c.grid.lateral_extent},
        {"H", c.grid.height_extent},
        {"nodes_lateral", c.grid.nodes_lateral},
        {"nodes_height", c.grid.nodes_height},
        {"grading", c.grid.grading},
        {"angular_order", c.grid.angular_order}}},
      {"solver",
       {{"tol", c.solver.tol},
        {"max_iter", c.solver.max_iter},
        {"blowup_cap", c.solver.blowup_cap},
        {"start", c.solver.start},
        {"bracket_lo", c.solver.bracket_lo},
        {"bracket_hi", c.solver.bracket_hi},
        {"kappa_tol", c.solver.kappa_tol},
        {"newton_tol", c.solver.newton_tol}}},
      {"continuation",
       {{"start_kappa", c.continuation.start_kappa},
        {"step", c.continuation.step},
        {"max_points", c.continuation.max_points},
        {"min_step", c.continuation.min_step},
        {"max_step", c.continuation.max_step},
        {"stop_kappa", c.continuation.stop_kappa}}},
      {"verify",
       {{"kappas", c.verify.kappas},
        {"kernel_samples", c.verify.kernel_samples},
        {"glaa_family", c.verify.glaa_family}}},
      {"seed", c.seed},
      {"output_dir", c.output_dir},
  };
}

IterationOptions iteration_options(const RunConfig& c) {
  IterationOptions o;
  o.tol = c.solver.tol;
  o.max_iter = c.solver.max_iter;
  o.blowup_cap = c.solver.blowup_cap;
  o.start = c.solver.start == "zero"       ? StartGuess::Zero
            : c.solver.start == "boundary" ? StartGuess::Boundary
                                           : StartGuess::ScaledBoundary;
  return o;
}

BoundaryMeasure boundary_measure(const RunConfig& c) {
  if (c.problem.mu.type == "point_mass") return PointMass{c.problem.mu.mass};
  return RadialDensity{c.problem.mu.radii, c.problem.mu.values};
}

}  // namespace halfspace
