#include "dflux/commands.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <future>
#include <ostream>
#include <stdexcept>

#include <fmt/format.h>

#include "dflux/experiments.hpp"
#include "dflux/run_config.hpp"
#include "dflux/verify_suites.hpp"

namespace dflux {

namespace fs = std::filesystem;

std::filesystem::path resolve_output_dir(const CommandContext& ctx, const std::optional<fs::path>& configured,
                                         const fs::path& fallback) {
  if (ctx.output_dir) return *ctx.output_dir;
  if (const char* env = std::getenv(kOutputDirEnv); env != nullptr && *env != '\0') return fs::path(env);
  if (configured) return *configured;
  return fallback;
}

std::string snapshot_file_name(const std::string& prefix, double t) {
  return fmt::format("{}u_t{:.6f}.csv", prefix, t);
}

namespace {

std::ofstream open_output(const fs::path& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write '" + path.string() + "'");
  return f;
}

void write_json(const fs::path& path, const nlohmann::json& j) {
  auto f = open_output(path);
  f << j.dump(2) << '\n';
}

// One diagnosed march over all requested times.
struct DiagnosedRun {
  std::vector<MarchResult> snapshots;
  DiagnosticsReport report;
};

DiagnosedRun diagnosed_run(const ExperimentSpec& spec, const SchemeConfig& cfg, double dx,
                           const std::vector<double>& times, const DiagnosticsOptions& options) {
  const ModelSetup setup = spec.setup();
  const StaggeredState initial = make_initial_state(spec.mesh(dx), spec.u0, setup.coefficient);
  DiagnosticsObserver obs(setup.model, setup.coefficient, cfg, options);
  obs.start(initial);
  StepObserver* observers[] = {&obs};
  DiagnosedRun run;
  run.snapshots = march_to_times(initial, setup.model, setup.coefficient, cfg, times, observers);
  run.report = obs.report();
  return run;
}

void write_snapshots(const fs::path& dir, const std::string& prefix, const std::vector<double>& times,
                     const DiagnosedRun& run) {
  for (std::size_t i = 0; i < times.size(); ++i) {
    auto f = open_output(dir / snapshot_file_name(prefix, times[i]));
    write_state_csv(f, run.snapshots[i].state);
  }
}

void report_warnings(std::ostream& err, const DiagnosedRun& run) {
  for (const auto& snap : run.snapshots) {
    for (const auto& w : snap.warnings) err << "warning: " << w << '\n';
  }
}

void prepare_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory '" + dir.string() + "': " + ec.message());
}

}  // namespace

int cmd_run(const fs::path& config_path, const CommandContext& ctx) {
  RunConfig config;
  try {
    config = load_run_config(config_path);
  } catch (const ConfigError& e) {
    ctx.err << "config error: " << e.what() << '\n';
    return kExitConfigError;
  }
  try {
    const ExperimentSpec spec = config.to_experiment();
    const SchemeConfig cfg = config.scheme_config(config.dx);
    const ModelSetup setup = spec.setup();
    enforce_cfl(setup.model, cfg);

    const fs::path dir = resolve_output_dir(ctx, config.output_dir, "dflux_out");
    prepare_dir(dir);
    const DiagnosedRun run = diagnosed_run(spec, cfg, config.dx, config.t_end, config.diagnostics);
    write_snapshots(dir, "", config.t_end, run);
    write_json(dir / "diagnostics.json", diagnostics_json(summarize(run.snapshots.back(), cfg), run.report));
    report_warnings(ctx.err, run);
    for (std::size_t i = 0; i < config.t_end.size(); ++i) {
      ctx.out << fmt::format("t = {} -> {} steps, snapped t = {:.17g}\n", config.t_end[i], run.snapshots[i].steps,
                             run.snapshots[i].snapped_time);
    }
    ctx.out << "wrote " << dir.string() << '\n';
  } catch (const CflViolation& e) {
    ctx.err << "refused: " << e.what() << '\n';
    return kExitCflRefused;
  } catch (const std::invalid_argument& e) {
    ctx.err << "config error: " << e.what() << '\n';
    return kExitConfigError;
  }
  return kExitOk;
}

int cmd_reproduce(int example_id, const CommandContext& ctx) {
  if (example_id != 1 && example_id != 2) {
    ctx.err << "unknown example " << example_id << " (expected 1 or 2)\n";
    return kExitConfigError;
  }
  const ExperimentSpec spec = example_id == 1 ? example_1() : example_2();
  const fs::path dir = resolve_output_dir(ctx, std::nullopt, fmt::format("dflux_example_{}", example_id));
  prepare_dir(dir);

  const SchemeConfig lf = experiment_config(spec, Scheme::LaxFriedrichs);
  const SchemeConfig nt = experiment_config(spec, Scheme::NessyahuTadmor);
  auto lf_run = std::async(std::launch::async, [&] { return diagnosed_run(spec, lf, spec.dx, spec.times, {}); });
  auto nt_run = std::async(std::launch::async, [&] { return diagnosed_run(spec, nt, spec.dx, spec.times, {}); });
  const DiagnosedRun coarse_lf = lf_run.get();
  const DiagnosedRun coarse_nt = nt_run.get();

  // reference snapshots at the coarse runs' snapped times
  std::vector<double> ref_times;
  for (const auto& s : coarse_lf.snapshots) ref_times.push_back(s.snapped_time);
  DiagnosticsOptions ref_options;
  ref_options.onesided = ref_options.quadratic = ref_options.entropy = ref_options.correction = false;
  const DiagnosedRun ref = diagnosed_run(spec, lf, spec.reference_dx, ref_times, ref_options);

  write_snapshots(dir, "lf_", spec.times, coarse_lf);
  write_snapshots(dir, "nt_", spec.times, coarse_nt);
  write_snapshots(dir, "ref_", spec.times, ref);
  write_json(dir / "diagnostics_lf.json", diagnostics_json(summarize(coarse_lf.snapshots.back(), lf), coarse_lf.report));
  write_json(dir / "diagnostics_nt.json", diagnostics_json(summarize(coarse_nt.snapshots.back(), nt), coarse_nt.report));
  write_json(dir / "diagnostics_ref.json", diagnostics_json(summarize(ref.snapshots.back(), lf), ref.report));

  ErrorTable table;
  for (std::size_t i = 0; i < spec.times.size(); ++i) {
    for (const DiagnosedRun* run : {&coarse_lf, &coarse_nt}) {
      const MarchResult& snap = run->snapshots[i];
      ErrorRow row;
      row.dx = spec.dx;
      row.scheme = run == &coarse_lf ? Scheme::LaxFriedrichs : Scheme::NessyahuTadmor;
      row.time = snap.snapped_time;
      row.reference_time = ref.snapshots[i].snapped_time;
      row.l1_error = l1_error(snap.state, ref.snapshots[i].state, spec.dt());
      table.rows.push_back(row);
      ctx.out << fmt::format("t = {:.6f}  {:<3} L1 = {:.6e}\n", row.time, to_string(row.scheme), row.l1_error);
    }
  }
  auto f = open_output(dir / "error_table.csv");
  write_error_table_csv(f, table);
  ctx.out << "wrote " << dir.string() << '\n';
  return kExitOk;
}

int cmd_verify(const std::string& suite, const CommandContext& ctx) {
  VerifyOutcome outcome;
  try {
    outcome = run_verify_suite(suite, ctx.out);
  } catch (const std::invalid_argument& e) {
    ctx.err << e.what() << '\n';
    return kExitConfigError;
  }
  ctx.out << fmt::format("worst margin: {:.6e}\n", outcome.worst_margin);
  if (!outcome.passed) {
    ctx.err << "verify " << suite << " failed: " << outcome.failing_scenario << '\n';
    return kExitVerifyFailed;
  }
  return kExitOk;
}

int cmd_study(const fs::path& config_path, int halvings, const CommandContext& ctx) {
  RunConfig config;
  try {
    config = load_run_config(config_path);
    if (halvings < 1) throw ConfigError("--halvings must be at least 1");
  } catch (const ConfigError& e) {
    ctx.err << "config error: " << e.what() << '\n';
    return kExitConfigError;
  }
  try {
    const ExperimentSpec spec = config.to_experiment();
    const double finest = spec.dx / std::pow(2.0, halvings - 1);
    const SchemeConfig cfg = config.scheme_config(finest);
    enforce_cfl(spec.setup().model, cfg);
    StudyOptions opt;
    opt.scheme = cfg.scheme;
    opt.limiter = cfg.limiter;
    opt.halvings = halvings;
    opt.cfl_level = cfg.cfl_level;
    const ErrorTable table = refinement_study(spec, opt);

    const fs::path dir = resolve_output_dir(ctx, config.output_dir, "dflux_study");
    prepare_dir(dir);
    auto f = open_output(dir / "error_table.csv");
    write_error_table_csv(f, table);
    write_error_table_csv(ctx.out, table);
  } catch (const CflViolation& e) {
    ctx.err << "refused: " << e.what() << '\n';
    return kExitCflRefused;
  } catch (const std::invalid_argument& e) {
    ctx.err << "config error: " << e.what() << '\n';
    return kExitConfigError;
  }
  return kExitOk;
}

}  // namespace dflux
