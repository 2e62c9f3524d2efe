#include "dflux/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <ostream>
#include <stdexcept>

#include <fmt/format.h>

namespace dflux {

ExperimentSpec example_1() {
  ExperimentSpec s;
  s.name = "example-1";
  s.model_name = "multiplicative";
  s.model_params = {3.0, 1.0};
  s.x_min = -1.0;
  s.x_max = 1.0;
  s.dx = 2.0 / 50.0;
  s.lambda = (1.0 / 750.0) / s.dx;
  s.u0 = PiecewiseFunction::constant(0.15);
  s.times = {0.8, 1.6};
  s.reference_dx = 2.0 / 1000.0;
  return s;
}

ExperimentSpec example_2() {
  ExperimentSpec s;
  s.name = "example-2";
  s.model_name = "two-flux-rational";
  s.x_min = -4.0;
  s.x_max = 4.0;
  s.dx = 8.0 / 50.0;
  s.lambda = 0.008 / s.dx;
  s.u0 = PiecewiseFunction::step(0.0, 0.9, 0.2);
  s.times = {1.0, 2.0};
  s.reference_dx = 8.0 / 2000.0;
  return s;
}

double l1_error(const StaggeredState& coarse, const StaggeredState& reference, double max_time_gap) {
  if (coarse.parity != Parity::Base || reference.parity != Parity::Base) {
    throw std::invalid_argument("l1_error compares Base-parity states");
  }
  const Mesh& mc = coarse.mesh;
  const Mesh& mr = reference.mesh;
  const double scale = std::max({1.0, std::abs(mc.x_min), std::abs(mc.x_max)});
  if (std::abs(mc.x_min - mr.x_min) > 1e-12 * scale || std::abs(mc.x_max - mr.x_max) > 1e-12 * scale) {
    throw std::invalid_argument("l1_error: meshes cover different domains");
  }
  if (mr.n_cells % mc.n_cells != 0) throw std::invalid_argument("l1_error: meshes are not nested");
  if (std::abs(coarse.time - reference.time) > max_time_gap) {
    throw std::invalid_argument("l1_error: snapshots are too far apart in time");
  }
  const int ratio = mr.n_cells / mc.n_cells;
  double sum = 0.0;
  for (int i = 0; i < mr.n_cells; ++i) {
    sum += std::abs(reference.values[static_cast<std::size_t>(i)] - coarse.values[static_cast<std::size_t>(i / ratio)]);
  }
  return sum * mr.dx;
}

void write_error_table_csv(std::ostream& out, const ErrorTable& table) {
  out << "dx,scheme,time,l1_error,observed_order\n";
  for (const auto& r : table.rows) {
    out << fmt::format("{:.16e},{},{:.16e},{:.16e},", r.dx, to_string(r.scheme), r.time, r.l1_error);
    if (r.observed_order) out << fmt::format("{:.16e}", *r.observed_order);
    out << '\n';
  }
}

SchemeConfig experiment_config(const ExperimentSpec& spec, Scheme scheme, LimiterConfig limiter) {
  return SchemeConfig{scheme, limiter, spec.lambda, CflLevel::MaxPrinciple};
}

std::vector<MarchResult> run_experiment(const ExperimentSpec& spec, const SchemeConfig& cfg, double dx,
                                        std::span<const double> times, std::span<StepObserver* const> observers) {
  const ModelSetup setup = spec.setup();
  const StaggeredState initial = make_initial_state(spec.mesh(dx), spec.u0, setup.coefficient);
  return march_to_times(initial, setup.model, setup.coefficient, cfg, times, observers);
}

namespace {

const MarchResult& snapshot_at(const std::vector<MarchResult>& snaps, double t, double dt_ref) {
  for (const auto& s : snaps) {
    if (std::abs(s.snapped_time - t) <= 0.5 * dt_ref) return s;
  }
  throw std::logic_error(fmt::format("no reference snapshot at t = {}", t));
}

}  // namespace

ErrorTable refinement_study(const ExperimentSpec& spec, const StudyOptions& opt) {
  if (opt.halvings < 1) throw std::invalid_argument("refinement study needs at least one resolution");
  const std::vector<double> times = opt.times.empty() ? spec.times : opt.times;
  SchemeConfig cfg{opt.scheme, opt.limiter, spec.lambda, opt.cfl_level};

  // Resolutions are independent marches; results are merged in a fixed order.
  std::vector<std::future<std::vector<MarchResult>>> levels;
  std::vector<double> spacings;
  for (int h = 0; h < opt.halvings; ++h) {
    const double dx = spec.dx / std::pow(2.0, h);
    spacings.push_back(dx);
    levels.push_back(std::async(std::launch::async, [&spec, cfg, dx, &times] {
      return run_experiment(spec, cfg, dx, times);
    }));
  }
  std::vector<std::vector<MarchResult>> runs;
  for (auto& f : levels) runs.push_back(f.get());

  std::vector<double> ref_times;
  for (const auto& level : runs) {
    for (const auto& snap : level) ref_times.push_back(snap.snapped_time);
  }
  std::sort(ref_times.begin(), ref_times.end());
  ref_times.erase(std::unique(ref_times.begin(), ref_times.end()), ref_times.end());

  const SchemeConfig ref_cfg{Scheme::LaxFriedrichs, {}, spec.lambda, opt.cfl_level};
  const auto reference = run_experiment(spec, ref_cfg, spec.reference_dx, ref_times);
  const double dt_ref = spec.lambda * spec.reference_dx;

  ErrorTable table;
  for (std::size_t t = 0; t < times.size(); ++t) {
    const std::size_t first_row = table.rows.size();
    for (std::size_t h = 0; h < runs.size(); ++h) {
      const MarchResult& snap = runs[h][t];
      const MarchResult& ref = snapshot_at(reference, snap.snapped_time, dt_ref);
      ErrorRow row;
      row.dx = spacings[h];
      row.scheme = opt.scheme;
      row.time = snap.snapped_time;
      row.reference_time = ref.snapped_time;
      row.l1_error = l1_error(snap.state, ref.state, spec.lambda * spacings[h]);
      table.rows.push_back(row);
    }
    for (std::size_t r = first_row; r + 1 < table.rows.size(); ++r) {
      const double e0 = table.rows[r].l1_error;
      const double e1 = table.rows[r + 1].l1_error;
      if (e0 > 0.0 && e1 > 0.0) table.rows[r].observed_order = std::log2(e0 / e1);
    }
  }
  return table;
}

}  // namespace dflux
