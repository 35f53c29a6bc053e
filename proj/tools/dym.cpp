#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "dym/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Discrete Yang-Mills calculus on a 4-D block and a glued 4-sphere"};
  app.set_version_flag("--version", std::string(dym::kToolName) + " " + dym::kToolVersion);
  app.require_subcommand(1);

  std::string config_path;
  std::string output;
  std::optional<std::uint64_t> seed;

  for (const char* name : {"verify", "action", "relax", "selfdual"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "RunConfig JSON file");
    sub->add_option("--output", output, "report path");
    sub->add_option("--seed", seed, "overrides the config seed");
  }
  app.get_subcommand("verify")->description("run the invariant suite");
  app.get_subcommand("action")->description("action, Yang-Mills, self-dual and Bianchi residuals of the connection");
  app.get_subcommand("relax")->description("minimize the action from the configured connection");
  app.get_subcommand("selfdual")->description("minimize the (anti-)self-dual residual");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : dym::kExitConfigError;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    dym::RunConfig config = config_path.empty() ? dym::RunConfig{} : dym::load_run_config(config_path);
    if (seed) config.seed = *seed;
    if (!output.empty()) config.output = output;
    config.validate();
    return dym::run_command(command, config, std::cout, std::cerr);
  } catch (const dym::ConfigError& e) {
    std::cerr << dym::kToolName << ": config error: " << e.what() << "\n";
    return dym::kExitConfigError;
  }
}
