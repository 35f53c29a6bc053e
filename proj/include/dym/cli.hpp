#pragma once

// Batch front end: run configuration, the invariant verification suite and the
// action / relax / selfdual commands, each producing a JSON report.

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "dym/cochain.hpp"
#include "dym/solver.hpp"

namespace dym {

inline constexpr const char* kToolName = "dym";
inline constexpr const char* kToolVersion = "1.0.0";

/// Exit codes of every command.
enum ExitCode : int { kExitPass = 0, kExitCheckFailed = 1, kExitConfigError = 2, kExitSolverAbort = 3 };

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  Topology topology = Topology::Sphere;
  std::array<int, kDim> sizes{2, 2, 2, 2};
  std::uint64_t seed = 7;
  double amplitude = 0.1;
  /// "zero" | "random" | "file:<path>"
  std::string connection = "random";
  /// "identity" | "random" | "sum_profile" | "file:<path>"
  std::string gauge = "sum_profile";
  SolverConfig solver;
  /// Report path; defaults to "<command>.report.json".
  std::string output;
  /// Final connection of relax / selfdual; defaults to the report path with
  /// ".report.json" (or ".json") replaced by ".connection.json".
  std::string connection_output;
  /// Random draws per identity in verify.
  int samples = 5;
  /// selfdual: solve the anti-self-dual system instead.
  bool anti_self_dual = false;

  Domain domain() const { return Domain(sizes, topology); }
  /// Throws ConfigError on any invalid field.
  void validate() const;
};

/// Parses a RunConfig; unknown keys are rejected. Throws ConfigError.
RunConfig run_config_from_json(const nlohmann::json& j);
RunConfig load_run_config(const std::string& path);
nlohmann::json to_json(const RunConfig& c);

Connection make_connection(const RunConfig& c);
GaugeField make_gauge(const RunConfig& c);

struct Check {
  std::string name;
  double defect = 0;
  double tol = 0;
  /// "hold": pass iff defect <= tol. "fail": pass iff defect > tol (an
  /// identity that must break, e.g. for a gauge outside the condition group).
  /// "any": informational, always passes.
  std::string expect = "hold";
  std::string note;

  bool pass() const;
};

struct CommandResult {
  int exit_code = kExitPass;
  nlohmann::json report;
  std::string summary;
  /// Final connection of relax / selfdual.
  std::optional<Cochain> connection;
};

std::vector<Check> run_verification(const RunConfig& c);

CommandResult cmd_verify(const RunConfig& c);
CommandResult cmd_action(const RunConfig& c);
CommandResult cmd_relax(const RunConfig& c);
CommandResult cmd_selfdual(const RunConfig& c);

/// Dispatches by subcommand name, writes the report (and the final connection
/// for relax / selfdual), prints the summary table to `out`.
int run_command(const std::string& command, const RunConfig& c, std::ostream& out, std::ostream& err);

}  // namespace dym
