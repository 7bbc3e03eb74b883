#include "dicke2/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <numbers>
#include <ostream>
#include <set>
#include <sstream>

namespace dicke2::cli {

using json = nlohmann::json;

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

namespace {

std::string format_optional(const std::optional<double>& x) {
  return x ? format_double(*x) : std::string();
}

json optional_json(const std::optional<double>& x) {
  return x ? json(*x) : json(nullptr);
}

json state_json(const SystemState& s) {
  return {{"a1", s.a1},
          {"a2", s.a2},
          {"j1", {s.j1.x(), s.j1.y(), s.j1.z()}},
          {"j2", {s.j2.x(), s.j2.y(), s.j2.z()}}};
}

json params_json(const ModelParams& p) {
  return {{"omega1", p.omega1}, {"omega2", p.omega2}, {"omega-c", p.omega_c},
          {"kappa", p.kappa},   {"n1", p.n1},         {"n2", p.n2},
          {"lambda1", p.lambda1}, {"lambda2", p.lambda2}};
}

json grid_json(const GridSpec& g) {
  return {{"l1-min", g.l1_min}, {"l1-max", g.l1_max}, {"l1-count", g.l1_count},
          {"l2-min", g.l2_min}, {"l2-max", g.l2_max}, {"l2-count", g.l2_count}};
}

} // namespace

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
  os << "t,a1,a2,j1x,j1y,j1z,j2x,j2y,j2z,drift\n";
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    const StateVector v = traj.states[k].to_vector();
    os << format_double(traj.times[k]);
    for (int c = 0; c < kStateDim; ++c) os << ',' << format_double(v[c]);
    os << ',' << format_double(std::max(traj.drift[k].first, traj.drift[k].second)) << '\n';
  }
}

void write_scan_csv(std::ostream& os, const ScanResult& result) {
  os << "lambda1,lambda2,superradiant,max_growth_rate,boundary_b,omega_plus,omega_minus\n";
  for (const ScanCell& c : result.cells) {
    os << format_double(c.lambda1) << ',' << format_double(c.lambda2) << ','
       << (c.superradiant ? "true" : "false") << ',' << format_double(c.max_growth_rate) << ','
       << format_double(c.boundary_b) << ',' << format_optional(c.omega_plus) << ','
       << format_optional(c.omega_minus) << '\n';
  }
}

void write_scan_json(std::ostream& os, const ScanResult& result) {
  json cells = json::array();
  for (const ScanCell& c : result.cells) {
    cells.push_back({{"lambda1", c.lambda1},
                     {"lambda2", c.lambda2},
                     {"superradiant", c.superradiant},
                     {"max_growth_rate", c.max_growth_rate},
                     {"boundary_b", c.boundary_b},
                     {"omega_plus", optional_json(c.omega_plus)},
                     {"omega_minus", optional_json(c.omega_minus)}});
  }
  json curve = json::array();
  for (const auto& [l1, l2] : result.boundary_curve) curve.push_back({l1, l2});
  const json doc = {{"phase", phase_name(result.phase)},
                    {"grid", grid_json(result.grid)},
                    {"params", params_json(result.params)},
                    {"cells", std::move(cells)},
                    {"boundary_curve", std::move(curve)}};
  os << doc.dump(2) << '\n';
}

void write_scan_matrix(std::ostream& os, const ScanResult& result, std::string_view field) {
  auto value = [field](const ScanCell& c) -> std::string {
    if (field == "superradiant") return c.superradiant ? "1" : "0";
    if (field == "max_growth_rate") return format_double(c.max_growth_rate);
    if (field == "boundary_b") return format_double(c.boundary_b);
    if (field == "omega_plus") return c.omega_plus ? format_double(*c.omega_plus) : "nan";
    if (field == "omega_minus") return c.omega_minus ? format_double(*c.omega_minus) : "nan";
    throw std::invalid_argument("unknown matrix field '" + std::string(field) + "'");
  };
  for (int i = 0; i < result.grid.l1_count; ++i) {
    for (int j = 0; j < result.grid.l2_count; ++j) {
      if (j > 0) os << ' ';
      os << value(result.at(i, j));
    }
    os << '\n';
  }
}

void write_boundary_csv(std::ostream& os, const Polyline& line) {
  os << "lambda1,lambda2\n";
  for (const auto& [l1, l2] : line) os << format_double(l1) << ',' << format_double(l2) << '\n';
}

unsigned threads_from_env() {
  const char* raw = std::getenv("DICKE2_THREADS");
  if (raw == nullptr || *raw == '\0') return 0;
  unsigned value = 0;
  const char* end = raw + std::char_traits<char>::length(raw);
  const auto res = std::from_chars(raw, end, value);
  if (res.ec != std::errc() || res.ptr != end) return 0;
  return value;
}

namespace {

class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Flags registered on one subcommand. Values are only trusted when the
// option was actually given; otherwise the config file or the default wins.
struct Flags {
  std::map<std::string, std::pair<double, CLI::Option*>> numbers;
  std::map<std::string, std::pair<std::string, CLI::Option*>> texts;
  std::vector<double> state;
  CLI::Option* state_opt = nullptr;

  void number(CLI::App* app, const std::string& name, const std::string& help) {
    auto& slot = numbers[name];
    slot.second = app->add_option("--" + name, slot.first, help);
  }
  // Counts are parsed as numbers and checked for integrality when resolved.
  void integer(CLI::App* app, const std::string& name, const std::string& help) {
    number(app, name, help);
    numbers[name].second->type_name("INT");
  }
  void text(CLI::App* app, const std::string& name, const std::string& help) {
    auto& slot = texts[name];
    slot.second = app->add_option("--" + name, slot.first, help);
  }
};

void add_common(CLI::App* app, Flags& f) {
  f.number(app, "omega1", "transition frequency of species 1 (default 1)");
  f.number(app, "omega2", "transition frequency of species 2 (default 1)");
  f.number(app, "omega-c", "cavity frequency (default 1)");
  f.number(app, "kappa", "cavity decay rate (default 1)");
  f.number(app, "n1", "atom number of species 1 (default 1)");
  f.number(app, "n2", "atom number of species 2 (default 1)");
  f.number(app, "lambda1", "coupling of species 1 (default 0)");
  f.number(app, "lambda2", "coupling of species 2 (default 0)");
  f.text(app, "phase", "normal | inverted | mixed1 | mixed2");
  f.text(app, "config", "JSON file with keys named after the flags");
  f.text(app, "out", "output path (default: standard output)");
  f.text(app, "format", "csv | json | matrix");
}

void add_grid(CLI::App* app, Flags& f) {
  f.number(app, "l1-min", "lambda1 axis start (default 0)");
  f.number(app, "l1-max", "lambda1 axis end (default 1.5)");
  f.integer(app, "l1-count", "lambda1 axis points (default 61)");
  f.number(app, "l2-min", "lambda2 axis start (default 0)");
  f.number(app, "l2-max", "lambda2 axis end (default 1.5)");
  f.integer(app, "l2-count", "lambda2 axis points (default 61)");
}

// Resolves each setting as flag > config file > default and records the
// effective value for the output header.
class Resolver {
public:
  explicit Resolver(const Flags& flags) : flags_(flags) {
    const auto& cfg = flags.texts.at("config");
    if (cfg.second->count() == 0) return;
    std::ifstream in(cfg.first);
    if (!in) throw UsageError("cannot read config file '" + cfg.first + "'");
    try {
      file_ = json::parse(in);
    } catch (const json::parse_error& e) {
      throw UsageError("config file '" + cfg.first + "' is not valid JSON: " + e.what());
    }
    if (!file_.is_object()) throw UsageError("config file must hold a JSON object");
    for (const auto& [key, _] : file_.items()) {
      const bool known = flags.numbers.contains(key) ||
                         (flags.texts.contains(key) && key != "config") ||
                         (key == "state" && flags.state_opt != nullptr);
      if (!known) throw UsageError("unknown config key '" + key + "'");
    }
  }

  bool given(const std::string& name) const {
    if (auto it = flags_.numbers.find(name); it != flags_.numbers.end() && it->second.second->count())
      return true;
    if (auto it = flags_.texts.find(name); it != flags_.texts.end() && it->second.second->count())
      return true;
    if (name == "state" && flags_.state_opt != nullptr && flags_.state_opt->count()) return true;
    return file_.contains(name);
  }

  double number(const std::string& name, double fallback) {
    double value = fallback;
    const auto& slot = flags_.numbers.at(name);
    if (slot.second->count()) {
      value = slot.first;
    } else if (file_.contains(name)) {
      if (!file_[name].is_number()) throw UsageError("config key '" + name + "' must be a number");
      value = file_[name].get<double>();
    }
    effective_[name] = value;
    return value;
  }

  int count(const std::string& name, int fallback) {
    const double v = number(name, fallback);
    if (!(v >= 1.0) || v != std::floor(v) || v > 1e7)
      throw UsageError("'" + name + "' must be a positive integer");
    effective_[name] = static_cast<int>(v);
    return static_cast<int>(v);
  }

  std::string text(const std::string& name, const std::string& fallback, bool record = true) {
    std::string value = fallback;
    const auto& slot = flags_.texts.at(name);
    if (slot.second->count()) {
      value = slot.first;
    } else if (file_.contains(name)) {
      if (!file_[name].is_string()) throw UsageError("config key '" + name + "' must be a string");
      value = file_[name].get<std::string>();
    }
    if (record) effective_[name] = value;
    return value;
  }

  std::optional<std::vector<double>> state() {
    std::optional<std::vector<double>> v;
    if (flags_.state_opt != nullptr && flags_.state_opt->count()) {
      v = flags_.state;
    } else if (file_.contains("state")) {
      try {
        v = file_["state"].get<std::vector<double>>();
      } catch (const json::exception&) {
        throw UsageError("config key 'state' must be an array of 8 numbers");
      }
    }
    if (v) {
      if (v->size() != static_cast<std::size_t>(kStateDim))
        throw UsageError("state needs exactly 8 components: a1 a2 j1x j1y j1z j2x j2y j2z");
      effective_["state"] = *v;
    }
    return v;
  }

  ModelParams params() {
    ModelParams p;
    p.omega1 = number("omega1", p.omega1);
    p.omega2 = number("omega2", p.omega2);
    p.omega_c = number("omega-c", p.omega_c);
    p.kappa = number("kappa", p.kappa);
    p.n1 = number("n1", p.n1);
    p.n2 = number("n2", p.n2);
    p.lambda1 = number("lambda1", p.lambda1);
    p.lambda2 = number("lambda2", p.lambda2);
    try {
      validate_params(p);
    } catch (const InvalidParameter& e) {
      throw UsageError(e.what());
    }
    return p;
  }

  PhaseLabel phase(const std::string& fallback) {
    const std::string name = text("phase", fallback);
    try {
      return parse_phase(name);
    } catch (const InvalidParameter& e) {
      throw UsageError(e.what());
    }
  }

  GridSpec grid() {
    GridSpec g;
    g.l1_min = number("l1-min", g.l1_min);
    g.l1_max = number("l1-max", g.l1_max);
    g.l1_count = count("l1-count", g.l1_count);
    g.l2_min = number("l2-min", g.l2_min);
    g.l2_max = number("l2-max", g.l2_max);
    g.l2_count = count("l2-count", g.l2_count);
    try {
      validate_grid(g);
    } catch (const InvalidParameter& e) {
      throw UsageError(e.what());
    }
    return g;
  }

  std::string format(const std::string& fallback, std::initializer_list<std::string_view> allowed) {
    const std::string f = text("format", fallback);
    for (auto a : allowed) {
      if (f == a) return f;
    }
    throw UsageError("unsupported --format '" + f + "' for this command");
  }

  const json& effective() const { return effective_; }

private:
  const Flags& flags_;
  json file_ = json::object();
  json effective_ = json::object();
};

void write_header(std::ostream& os, std::string_view command, const json& effective) {
  os << "# dicke2 " << kVersion << '\n';
  os << "# command: " << command << '\n';
  os << "# config: " << effective.dump() << '\n';
}

// All computation finishes before anything is written; a single writer then
// emits the document.
int emit(const std::string& path, const std::string& document, std::ostream& out,
         std::ostream& err) {
  if (path.empty()) {
    out << document;
    return kOk;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) {
    err << "error: cannot open output file '" << path << "'\n";
    return kRuntimeFailure;
  }
  file << document;
  file.flush();
  if (!file) {
    err << "error: failed writing '" << path << "'\n";
    return kRuntimeFailure;
  }
  return kOk;
}

json report_json(const StabilityReport& r) {
  json ev = json::array();
  for (const auto& z : r.eigenvalues) ev.push_back({{"re", z.real()}, {"im", z.imag()}});
  return {{"eigenvalues", std::move(ev)},
          {"structural_zero_count", r.structural_zero_count},
          {"neutral_mode_count", r.neutral_mode_count},
          {"max_growth_rate", r.max_growth_rate},
          {"classification", stability_name(r.classification)}};
}

int cmd_simulate(Resolver& cfg, const CLI::App& sub, std::ostream& out, std::ostream& err) {
  const ModelParams p = cfg.params();
  IntegratorConfig ic;
  ic.t_final = cfg.number("t-final", ic.t_final);
  ic.sample_interval = cfg.number("sample-interval", ic.sample_interval);
  ic.rel_tol = cfg.number("rel-tol", ic.rel_tol);
  ic.abs_tol = cfg.number("abs-tol", ic.abs_tol);
  ic.max_step = cfg.number("max-step", ic.max_step);
  try {
    validate_config(ic);
  } catch (const InvalidParameter& e) {
    throw UsageError(e.what());
  }

  SystemState s0;
  if (auto explicit_state = cfg.state()) {
    StateVector v;
    for (int k = 0; k < kStateDim; ++k) v[k] = (*explicit_state)[k];
    s0 = SystemState::from_vector(v);
  } else {
    if (!cfg.given("phase")) {
      err << "error: simulate needs an initial state: --phase or --state\n\n" << sub.help();
      return kUsageError;
    }
    s0 = trivial_fixed_point(cfg.phase("normal"), p);
    s0.a1 = cfg.number("a1", 0.0);
    s0.a2 = cfg.number("a2", 0.0);
    s0.a1 += cfg.number("perturb", 0.0);
  }
  const std::string path = cfg.text("out", "", false);
  cfg.format("csv", {"csv"});

  Trajectory traj;
  try {
    traj = integrate(s0, p, ic);
  } catch (const IntegrationError& e) {
    err << "error: " << e.what() << '\n';
    return kRuntimeFailure;
  }
  std::ostringstream doc;
  write_header(doc, "simulate", cfg.effective());
  write_trajectory_csv(doc, traj);
  return emit(path, doc.str(), out, err);
}

int cmd_stability(Resolver& cfg, std::ostream& out, std::ostream& err) {
  const ModelParams p = cfg.params();
  const PhaseLabel phase = cfg.phase("normal");
  const std::string path = cfg.text("out", "", false);
  cfg.format("json", {"json"});

  const StabilityReport report = assess(trivial_fixed_point(phase, p), p);
  const BoundaryRoots roots = omega_pm(phase, p.lambda1, p.lambda2, p);
  json doc = report_json(report);
  doc["phase"] = phase_name(phase);
  doc["lambda1"] = p.lambda1;
  doc["lambda2"] = p.lambda2;
  doc["boundary_b"] = boundary_value(phase, p.lambda1, p.lambda2, p);
  doc["lambda_combined"] = roots.lambda_combined;
  doc["omega_plus"] = optional_json(roots.omega_plus);
  doc["omega_minus"] = optional_json(roots.omega_minus);

  std::ostringstream text;
  write_header(text, "stability", cfg.effective());
  text << doc.dump(2) << '\n';
  return emit(path, text.str(), out, err);
}

int cmd_scan(Resolver& cfg, std::ostream& out, std::ostream& err) {
  const ModelParams p = cfg.params();
  const PhaseLabel phase = cfg.phase("normal");
  const GridSpec grid = cfg.grid();
  const std::string path = cfg.text("out", "", false);
  const std::string format = cfg.format("csv", {"csv", "json", "matrix"});
  std::string field;
  if (format == "matrix") {
    field = cfg.text("field", "omega_plus");
    static const std::set<std::string> fields = {"superradiant", "max_growth_rate", "boundary_b",
                                                 "omega_plus", "omega_minus"};
    if (!fields.contains(field)) throw UsageError("unknown --field '" + field + "'");
  }

  const ScanResult result = scan(phase, grid, p, threads_from_env());
  std::ostringstream doc;
  write_header(doc, "scan", cfg.effective());
  if (format == "csv") {
    write_scan_csv(doc, result);
  } else if (format == "json") {
    write_scan_json(doc, result);
  } else {
    write_scan_matrix(doc, result, field);
  }
  return emit(path, doc.str(), out, err);
}

int cmd_boundary(Resolver& cfg, std::ostream& out, std::ostream& err) {
  const ModelParams p = cfg.params();
  const PhaseLabel phase = cfg.phase("normal");
  const int samples = cfg.count("samples", 101);
  if (samples < 2) throw UsageError("'samples' must be at least 2");
  BoundaryWindow window;
  window.l1_max = cfg.number("l1-max", window.l1_max);
  window.l2_max = cfg.number("l2-max", window.l2_max);
  if (!(window.l1_max > 0.0) || !(window.l2_max > 0.0))
    throw UsageError("boundary window maxima must be positive");
  const std::string path = cfg.text("out", "", false);
  cfg.format("csv", {"csv"});

  const Polyline line = analytic_boundary_curve(phase, p, samples, window);
  std::ostringstream doc;
  write_header(doc, "boundary", cfg.effective());
  write_boundary_csv(doc, line);
  return emit(path, doc.str(), out, err);
}

std::vector<SuperradiantSeed> default_seeds(const ModelParams& p) {
  constexpr double pi = std::numbers::pi;
  const std::array<double, 6> angles = {0.0, pi / 3.0, 2.0 * pi / 3.0, pi, -pi / 3.0, -2.0 * pi / 3.0};
  const double a = 0.5 * std::sqrt(std::max(p.n1, p.n2));
  std::vector<SuperradiantSeed> seeds;
  for (double sign : {+1.0, -1.0}) {
    for (double t1 : angles) {
      for (double t2 : angles) {
        const bool both_poles = (t1 == 0.0 || t1 == pi) && (t2 == 0.0 || t2 == pi);
        if (!both_poles) seeds.push_back({t1, t2, sign * a});
      }
    }
  }
  return seeds;
}

int cmd_fixed_points(Resolver& cfg, std::ostream& out, std::ostream& err) {
  const ModelParams p = cfg.params();
  const std::string path = cfg.text("out", "", false);
  cfg.format("json", {"json"});

  json points = json::array();
  json failures = json::array();
  auto entry = [&p](const FixedPointSolution& sol) {
    json e = {{"branch", branch_kind_name(sol.branch.kind)},
              {"state", state_json(sol.state)},
              {"residual_norm", sol.residual_norm},
              {"newton_iterations", sol.newton_iterations}};
    if (sol.branch.pole_phase) e["phase"] = phase_name(*sol.branch.pole_phase);
    if (sol.branch.kind != BranchKind::Trivial) e["a1_sign"] = sol.branch.a1_sign;
    try {
      const StabilityReport r = assess(sol.state, p);
      e["classification"] = stability_name(r.classification);
      e["max_growth_rate"] = r.max_growth_rate;
    } catch (const std::exception& ex) {
      e["classification"] = nullptr;
      e["stability_error"] = ex.what();
    }
    return e;
  };

  for (PhaseLabel phase : kAllPhases) {
    FixedPointSolution sol;
    sol.state = trivial_fixed_point(phase, p);
    sol.branch.pole_phase = phase;
    sol.residual_norm = eom_rhs(sol.state.to_vector(), p).lpNorm<Eigen::Infinity>();
    points.push_back(entry(sol));
  }

  if (p.lambda1 > 0.0 || p.lambda2 > 0.0) {
    std::vector<StateVector> found;
    const double scale = std::max({1.0, p.n1, p.n2});
    for (const SuperradiantSeed& seed : default_seeds(p)) {
      try {
        const FixedPointSolution sol = solve_superradiant(p, seed);
        if (sol.branch.kind == BranchKind::Trivial) continue;
        const StateVector v = sol.state.to_vector();
        const bool duplicate = std::any_of(found.begin(), found.end(), [&](const StateVector& w) {
          return (v - w).lpNorm<Eigen::Infinity>() < 1e-6 * scale;
        });
        if (duplicate) continue;
        found.push_back(v);
        points.push_back(entry(sol));
      } catch (const NumericalError& e) {
        failures.push_back({{"seed", {{"theta1", seed.theta1}, {"theta2", seed.theta2}, {"a1", seed.a1}}},
                            {"error", e.what()}});
      }
    }
  }

  const json doc = {{"fixed_points", std::move(points)}, {"solver_failures", std::move(failures)}};
  std::ostringstream text;
  write_header(text, "fixed-points", cfg.effective());
  text << doc.dump(2) << '\n';
  return emit(path, text.str(), out, err);
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Two-species open Dicke model: dynamics, steady states and phase diagrams",
               "dicke2"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));
  app.failure_message(CLI::FailureMessage::help);

  Flags sim_flags, stab_flags, scan_flags, bound_flags, fp_flags;

  CLI::App* sim = app.add_subcommand("simulate", "integrate the equations of motion");
  add_common(sim, sim_flags);
  sim_flags.number(sim, "t-final", "end time in units of 1/kappa (default 100)");
  sim_flags.number(sim, "sample-interval", "output cadence (default 0.1)");
  sim_flags.number(sim, "rel-tol", "relative tolerance (default 1e-10)");
  sim_flags.number(sim, "abs-tol", "absolute tolerance (default 1e-12)");
  sim_flags.number(sim, "max-step", "largest step (default 0.5)");
  sim_flags.number(sim, "a1", "initial Re(a) (default 0)");
  sim_flags.number(sim, "a2", "initial Im(a) (default 0)");
  sim_flags.number(sim, "perturb", "kick added to Re(a) (default 0)");
  sim_flags.state_opt = sim->add_option("--state", sim_flags.state,
                                        "explicit initial state a1 a2 j1x j1y j1z j2x j2y j2z")
                            ->expected(kStateDim);

  CLI::App* stab = app.add_subcommand("stability", "spectrum and boundary data of a pole phase");
  add_common(stab, stab_flags);

  CLI::App* scn = app.add_subcommand("scan", "phase diagram over the (lambda1, lambda2) plane");
  add_common(scn, scan_flags);
  add_grid(scn, scan_flags);
  scan_flags.text(scn, "field", "matrix format value: superradiant | max_growth_rate | "
                                "boundary_b | omega_plus | omega_minus (default omega_plus)");

  CLI::App* bnd = app.add_subcommand("boundary", "analytic zero-eigenvalue boundary polyline");
  add_common(bnd, bound_flags);
  bound_flags.integer(bnd, "samples", "number of points (default 101)");
  bound_flags.number(bnd, "l1-max", "window lambda1 limit (default 1.5)");
  bound_flags.number(bnd, "l2-max", "window lambda2 limit (default 1.5)");

  CLI::App* fp = app.add_subcommand("fixed-points", "pole and superradiant steady states");
  add_common(fp, fp_flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  CLI::App* active = nullptr;
  Flags* flags = nullptr;
  for (auto [candidate, f] : {std::pair{sim, &sim_flags}, std::pair{stab, &stab_flags},
                              std::pair{scn, &scan_flags}, std::pair{bnd, &bound_flags},
                              std::pair{fp, &fp_flags}}) {
    if (candidate->parsed()) {
      active = candidate;
      flags = f;
    }
  }

  try {
    Resolver cfg(*flags);
    if (active == sim) return cmd_simulate(cfg, *sim, out, err);
    if (active == stab) return cmd_stability(cfg, out, err);
    if (active == scn) return cmd_scan(cfg, out, err);
    if (active == bnd) return cmd_boundary(cfg, out, err);
    return cmd_fixed_points(cfg, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n\n" << active->help();
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRuntimeFailure;
  }
}

} // namespace dicke2::cli
