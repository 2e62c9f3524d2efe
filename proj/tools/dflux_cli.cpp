#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "dflux/commands.hpp"
#include "dflux/verify_suites.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Staggered central schemes for conservation laws with a discontinuous flux coefficient"};
  app.require_subcommand(1);

  std::string out_dir;
  app.add_option("--out", out_dir, "Output directory (overrides DFLUX_OUTPUT_DIR and the config)");

  std::string config_path;
  auto* run = app.add_subcommand("run", "Run one simulation from a config file");
  run->add_option("config", config_path, "Config file")->required();

  int example_id = 0;
  auto* reproduce = app.add_subcommand("reproduce", "Reproduce a published example (1 or 2)");
  reproduce->add_option("example", example_id, "Example id")->required();

  std::string suite;
  auto* verify = app.add_subcommand("verify", "Run a property suite");
  std::string names;
  for (const auto& n : dflux::verify_suite_names()) names += (names.empty() ? "" : ", ") + n;
  verify->add_option("suite", suite, "One of: " + names)->required();

  int halvings = 3;
  auto* study = app.add_subcommand("study", "Mesh refinement study against the fine LF reference");
  study->add_option("config", config_path, "Config file")->required();
  study->add_option("--halvings", halvings, "Number of resolutions dx, dx/2, ...");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : dflux::kExitConfigError;
  }

  const dflux::CommandContext ctx{
      out_dir.empty() ? std::nullopt : std::optional<std::filesystem::path>(out_dir), std::cout, std::cerr};
  try {
    if (*run) return dflux::cmd_run(config_path, ctx);
    if (*reproduce) return dflux::cmd_reproduce(example_id, ctx);
    if (*verify) return dflux::cmd_verify(suite, ctx);
    if (*study) return dflux::cmd_study(config_path, halvings, ctx);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return dflux::kExitConfigError;
  }
  return dflux::kExitConfigError;
}
