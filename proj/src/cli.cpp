#include "dym/cli.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include "dym/calculus.hpp"
#include "dym/gauge.hpp"
#include "dym/io.hpp"

namespace dym {

using nlohmann::json;

namespace {

const std::string kFilePrefix = "file:";

bool is_file_source(const std::string& s) { return s.rfind(kFilePrefix, 0) == 0 && s.size() > kFilePrefix.size(); }

std::string file_path(const std::string& s) { return s.substr(kFilePrefix.size()); }

template <typename T>
T get_field(const json& j, const char* key, const char* what) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string("'") + key + "' must be " + what);
  }
}

void reject_unknown(const json& j, const std::set<std::string>& known, const std::string& where) {
  for (const auto& [key, value] : j.items()) {
    if (!known.contains(key)) throw ConfigError("unknown key '" + key + "' in " + where);
  }
}

SolverConfig solver_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("'solver' must be an object");
  reject_unknown(j, {"max_iters", "grad_tol", "armijo_c", "backtrack_factor", "initial_step", "objective", "seed"},
                 "solver");
  SolverConfig s;
  if (j.contains("max_iters")) s.max_iters = get_field<int>(j, "max_iters", "an integer");
  if (j.contains("grad_tol")) s.grad_tol = get_field<double>(j, "grad_tol", "a number");
  if (j.contains("armijo_c")) s.armijo_c = get_field<double>(j, "armijo_c", "a number");
  if (j.contains("backtrack_factor")) s.backtrack_factor = get_field<double>(j, "backtrack_factor", "a number");
  if (j.contains("initial_step")) s.initial_step = get_field<double>(j, "initial_step", "a number");
  if (j.contains("seed")) s.seed = get_field<std::uint64_t>(j, "seed", "an unsigned integer");
  if (j.contains("objective")) {
    try {
      s.objective = objective_from_string(get_field<std::string>(j, "objective", "a string"));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  return s;
}

std::string connection_path_for(const RunConfig& c, const std::string& report_path) {
  if (!c.connection_output.empty()) return c.connection_output;
  for (const std::string suffix : {".report.json", ".json"}) {
    if (report_path.size() > suffix.size() && report_path.ends_with(suffix)) {
      return report_path.substr(0, report_path.size() - suffix.size()) + ".connection.json";
    }
  }
  return report_path + ".connection.json";
}

std::string sizes_string(const std::array<int, kDim>& n) {
  return std::to_string(n[0]) + "x" + std::to_string(n[1]) + "x" + std::to_string(n[2]) + "x" + std::to_string(n[3]);
}

std::string fmt(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, v);
  return buf;
}

json checks_json(const std::vector<Check>& checks) {
  json out = json::array();
  for (const Check& c : checks) {
    json entry{{"name", c.name}, {"defect", c.defect}, {"tol", c.tol}, {"expect", c.expect}, {"pass", c.pass()}};
    if (!c.note.empty()) entry["note"] = c.note;
    out.push_back(std::move(entry));
  }
  return out;
}

json trace_json(const std::vector<IterationRecord>& trace) {
  json out = json::array();
  for (const IterationRecord& r : trace) {
    out.push_back(
        {{"iteration", r.iteration}, {"objective", r.objective}, {"grad_max_norm", r.grad_max_norm}, {"step", r.step}});
  }
  return out;
}

json diagnostics_json(const Diagnostics& d) {
  return json{{"action", d.action},
              {"ym_residual_norm", d.ym_residual_norm},
              {"sd_residual", d.sd_residual},
              {"anti_sd_residual", d.anti_sd_residual},
              {"bianchi_residual", d.bianchi_residual},
              {"sd_defects", d.sd_defects},
              {"anti_sd_defects", d.anti_sd_defects}};
}

json base_report(const std::string& command, const RunConfig& c) {
  return json{{"tool", kToolName},
              {"version", kToolVersion},
              {"cell_ordering_version", kCellOrderingVersion},
              {"command", command},
              {"config", to_json(c)},
              {"checks", json::array()},
              {"scalars", json::object()},
              {"trace", json::array()}};
}

std::string summary_table(const std::string& command, const RunConfig& c, const std::vector<Check>& checks,
                          const json& scalars) {
  std::ostringstream os;
  os << kToolName << " " << command << "  topology=" << to_string(c.topology) << " sizes=" << sizes_string(c.sizes)
     << " seed=" << c.seed << "\n";
  if (!checks.empty()) {
    char line[160];
    std::snprintf(line, sizeof line, "  %-28s %12s %12s  %-6s %s\n", "check", "defect", "tol", "expect", "result");
    os << line;
    for (const Check& k : checks) {
      std::snprintf(line, sizeof line, "  %-28s %12.3e %12.3e  %-6s %s\n", k.name.c_str(), k.defect, k.tol,
                    k.expect.c_str(), k.pass() ? "PASS" : "FAIL");
      os << line;
    }
  }
  for (const auto& [key, value] : scalars.items()) {
    if (value.is_number()) {
      os << "  " << key << " = " << fmt("%.9e", value.get<double>()) << "\n";
    } else {
      os << "  " << key << " = " << value.dump() << "\n";
    }
  }
  std::size_t passed = 0;
  for (const Check& k : checks) passed += k.pass();
  os << "  result: " << (passed == checks.size() ? "PASS" : "FAIL") << " (" << passed << "/" << checks.size()
     << " checks)\n";
  return os.str();
}

CommandResult finish(const std::string& command, const RunConfig& c, json report, const std::vector<Check>& checks) {
  report["checks"] = checks_json(checks);
  CommandResult r;
  r.summary = summary_table(command, c, checks, report["scalars"]);
  r.report = std::move(report);
  for (const Check& k : checks) {
    if (!k.pass()) r.exit_code = kExitCheckFailed;
  }
  return r;
}

json connection_scalars(const Cochain& a) {
  json s = diagnostics_json(diagnose(a));
  s["connection_su2_deviation"] = max_su2_algebra_deviation(a);
  return s;
}

CommandResult run_solver(const std::string& command, const RunConfig& c, SolverConfig cfg) {
  const Connection a0 = make_connection(c);
  const SolverReport sr = minimize(a0, cfg);
  json report = base_report(command, c);
  report["trace"] = trace_json(sr.trace);
  json scalars = diagnostics_json(sr.final);
  scalars["objective"] = to_string(cfg.objective);
  scalars["status"] = to_string(sr.status);
  scalars["iterations"] = sr.iterations;
  scalars["initial_objective"] = sr.trace.front().objective;
  scalars["final_objective"] = sr.trace.back().objective;
  scalars["max_su2_deviation"] = sr.max_su2_deviation;
  report["scalars"] = std::move(scalars);

  double increase = 0;
  for (std::size_t i = 1; i < sr.trace.size(); ++i) {
    increase = std::max(increase, sr.trace[i].objective - sr.trace[i - 1].objective);
  }
  std::vector<Check> checks{
      {"converged", sr.trace.back().grad_max_norm, cfg.grad_tol, "any", to_string(sr.status)},
      {"objective_monotone", increase, 0, "hold", "largest increase between accepted iterates"},
      {"iterates_su2", sr.max_su2_deviation, kAlgebraTolerance, "hold", {}},
  };
  CommandResult r = finish(command, c, std::move(report), checks);
  r.connection = sr.final_connection.form();
  return r;
}

}  // namespace

void RunConfig::validate() const {
  for (int n : sizes) {
    if (n < 2) throw ConfigError("sizes must be >= 2 on every axis");
  }
  if (!(amplitude >= 0) || !std::isfinite(amplitude)) throw ConfigError("amplitude must be a finite number >= 0");
  if (samples < 1) throw ConfigError("samples must be >= 1");
  if (connection != "zero" && connection != "random" && !is_file_source(connection)) {
    throw ConfigError("connection must be zero, random or file:<path>");
  }
  if (gauge != "identity" && gauge != "random" && gauge != "sum_profile" && !is_file_source(gauge)) {
    throw ConfigError("gauge must be identity, random, sum_profile or file:<path>");
  }
  try {
    solver.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("solver: ") + e.what());
  }
}

RunConfig run_config_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  reject_unknown(j,
                 {"topology", "sizes", "seed", "amplitude", "connection", "gauge", "solver", "output",
                  "connection_output", "samples", "anti_self_dual"},
                 "config");
  RunConfig c;
  if (j.contains("topology")) {
    const auto t = get_field<std::string>(j, "topology", "\"block\" or \"sphere\"");
    if (t == "block") {
      c.topology = Topology::Block;
    } else if (t == "sphere") {
      c.topology = Topology::Sphere;
    } else {
      throw ConfigError("'topology' must be \"block\" or \"sphere\"");
    }
  }
  if (j.contains("sizes")) {
    const auto v = get_field<std::vector<int>>(j, "sizes", "an array of 4 integers");
    if (v.size() != kDim) throw ConfigError("'sizes' must be an array of 4 integers");
    std::copy(v.begin(), v.end(), c.sizes.begin());
  }
  if (j.contains("seed")) c.seed = get_field<std::uint64_t>(j, "seed", "an unsigned integer");
  if (j.contains("amplitude")) c.amplitude = get_field<double>(j, "amplitude", "a number");
  if (j.contains("connection")) c.connection = get_field<std::string>(j, "connection", "a string");
  if (j.contains("gauge")) c.gauge = get_field<std::string>(j, "gauge", "a string");
  if (j.contains("solver")) c.solver = solver_from_json(j.at("solver"));
  if (j.contains("output")) c.output = get_field<std::string>(j, "output", "a string");
  if (j.contains("connection_output")) c.connection_output = get_field<std::string>(j, "connection_output", "a string");
  if (j.contains("samples")) c.samples = get_field<int>(j, "samples", "an integer");
  if (j.contains("anti_self_dual")) c.anti_self_dual = get_field<bool>(j, "anti_self_dual", "a boolean");
  c.validate();
  return c;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open config " + path);
  json j = json::parse(is, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) throw ConfigError("config " + path + " is not valid JSON");
  return run_config_from_json(j);
}

json to_json(const RunConfig& c) {
  return json{{"topology", to_string(c.topology)},
              {"sizes", c.sizes},
              {"seed", c.seed},
              {"amplitude", c.amplitude},
              {"connection", c.connection},
              {"gauge", c.gauge},
              {"solver",
               {{"max_iters", c.solver.max_iters},
                {"grad_tol", c.solver.grad_tol},
                {"armijo_c", c.solver.armijo_c},
                {"backtrack_factor", c.solver.backtrack_factor},
                {"initial_step", c.solver.initial_step},
                {"objective", to_string(c.solver.objective)},
                {"seed", c.solver.seed}}},
              {"output", c.output},
              {"connection_output", c.connection_output},
              {"samples", c.samples},
              {"anti_self_dual", c.anti_self_dual}};
}

namespace {

Cochain read_source(const RunConfig& c, const std::string& source, int degree) {
  Cochain f = [&] {
    try {
      return read_cochain(file_path(source));
    } catch (const std::exception& e) {
      throw ConfigError("cannot load " + file_path(source) + ": " + e.what());
    }
  }();
  if (!(f.domain() == c.domain())) throw ConfigError(file_path(source) + " does not match the configured domain");
  if (f.degree() != degree || f.copy() != Copy::Base) {
    throw ConfigError(file_path(source) + " must hold a base-copy form of degree " + std::to_string(degree));
  }
  return f;
}

}  // namespace

Connection make_connection(const RunConfig& c) {
  const Domain d = c.domain();
  if (c.connection == "zero") return Connection::zero(d);
  if (c.connection == "random") return random_connection(d, c.amplitude, c.seed);
  try {
    return Connection(read_source(c, c.connection, 1));
  } catch (const InvalidCoefficients& e) {
    throw ConfigError(std::string("connection file: ") + e.what());
  }
}

GaugeField make_gauge(const RunConfig& c) {
  const Domain d = c.domain();
  const std::uint64_t seed = c.seed ^ 0x9e3779b97f4a7c15ULL;
  if (c.gauge == "identity") return GaugeField::identity(d);
  if (c.gauge == "random") return random_gauge(d, seed);
  if (c.gauge == "sum_profile") return sum_gauge(d, std::numbers::pi, seed);
  try {
    return GaugeField(read_source(c, c.gauge, 0));
  } catch (const InvalidCoefficients& e) {
    throw ConfigError(std::string("gauge file: ") + e.what());
  }
}

CommandResult cmd_verify(const RunConfig& c) {
  const std::vector<Check> checks = run_verification(c);
  json report = base_report("verify", c);
  const Connection a = make_connection(c);
  const GaugeField h = make_gauge(c);
  json scalars = connection_scalars(a.form());
  scalars["gauge_condition_violation"] = max_417_violation(h.form());
  scalars["gauge_transform_su2_deviation"] = max_su2_algebra_deviation(gauge_transform(a.form(), h.form()));
  report["scalars"] = std::move(scalars);
  return finish("verify", c, std::move(report), checks);
}

CommandResult cmd_action(const RunConfig& c) {
  c.validate();
  const Connection a = make_connection(c);
  json report = base_report("action", c);
  report["scalars"] = connection_scalars(a.form());
  return finish("action", c, std::move(report), {});
}

CommandResult cmd_relax(const RunConfig& c) {
  c.validate();
  SolverConfig cfg = c.solver;
  cfg.objective = Objective::Action;
  return run_solver("relax", c, cfg);
}

CommandResult cmd_selfdual(const RunConfig& c) {
  c.validate();
  SolverConfig cfg = c.solver;
  cfg.objective = c.anti_self_dual ? Objective::AntiSelfDual : Objective::SelfDual;
  return run_solver("selfdual", c, cfg);
}

int run_command(const std::string& command, const RunConfig& c, std::ostream& out, std::ostream& err) {
  try {
    CommandResult r;
    if (command == "verify") {
      r = cmd_verify(c);
    } else if (command == "action") {
      r = cmd_action(c);
    } else if (command == "relax") {
      r = cmd_relax(c);
    } else if (command == "selfdual") {
      r = cmd_selfdual(c);
    } else {
      throw ConfigError("unknown command '" + command + "'");
    }
    const std::string path = c.output.empty() ? command + ".report.json" : c.output;
    {
      std::ofstream os(path, std::ios::binary);
      if (!os) throw ConfigError("cannot write report " + path);
      os << r.report.dump(2) << '\n';
    }
    out << r.summary << "  report: " << path << "\n";
    if (r.connection) {
      const std::string cpath = connection_path_for(c, path);
      write_cochain(cpath, *r.connection);
      out << "  connection: " << cpath << "\n";
    }
    return r.exit_code;
  } catch (const ConfigError& e) {
    err << kToolName << ": config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const SolverAbort& e) {
    err << kToolName << ": solver abort: " << e.what() << "\n";
    return kExitSolverAbort;
  }
}

}  // namespace dym
