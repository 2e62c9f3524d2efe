#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

namespace dflux {

/// Environment variable that overrides every configured output directory
/// except an explicit --out.
inline constexpr const char* kOutputDirEnv = "DFLUX_OUTPUT_DIR";

struct CommandContext {
  std::optional<std::filesystem::path> output_dir;  // --out
  std::ostream& out;
  std::ostream& err;
};

/// Exit statuses shared by all commands.
enum ExitStatus : int { kExitOk = 0, kExitConfigError = 1, kExitCflRefused = 2, kExitVerifyFailed = 3 };

/// `run <config>`: u_t<time>.csv per requested time and diagnostics.json.
int cmd_run(const std::filesystem::path& config_path, const CommandContext& ctx);

/// `reproduce <1|2>`: LF, NT and the LF reference at each output time, an
/// error table and one diagnostics file per run.
int cmd_reproduce(int example_id, const CommandContext& ctx);

/// `verify <suite>`: 0 when every scenario holds, 3 naming the failing one.
int cmd_verify(const std::string& suite, const CommandContext& ctx);

/// `study <config> --halvings N`: error_table.csv for the configured scheme.
int cmd_study(const std::filesystem::path& config_path, int halvings, const CommandContext& ctx);

/// Output directory in order of precedence: --out, the environment override,
/// the config's output_dir, then `fallback`.
std::filesystem::path resolve_output_dir(const CommandContext& ctx,
                                         const std::optional<std::filesystem::path>& configured,
                                         const std::filesystem::path& fallback);

/// "u_t0.800000.csv" style name for a snapshot at time t.
std::string snapshot_file_name(const std::string& prefix, double t);

}  // namespace dflux
