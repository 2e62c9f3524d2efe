#pragma once

#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "dflux/central_schemes.hpp"
#include "dflux/diagnostics.hpp"

namespace dflux {

/// Parameters of a reproducible run: model, domain, mesh ratio, data, output
/// times and the fine-mesh LF reference.
struct ExperimentSpec {
  std::string name;
  std::string model_name;
  std::vector<double> model_params;
  double x_min = -1.0;
  double x_max = 1.0;
  double dx = 0.04;
  double lambda = 0.0;
  PiecewiseFunction u0 = PiecewiseFunction::constant(0.0);
  std::vector<double> times;
  double reference_dx = 0.002;

  ModelSetup setup() const { return make_model(model_name, model_params); }
  Mesh mesh(double spacing) const { return Mesh::with_spacing(x_min, x_max, spacing); }
  int reference_cells() const { return mesh(reference_dx).n_cells; }
  double dt() const { return lambda * dx; }
};

/// Multiplicative flux k u(1-u), k = 3 | 1 across x = 0, u0 = 0.15 on [-1, 1],
/// dx = 2/50, dt = 1/750, t in {0.8, 1.6}, LF reference at dx = 2/1000.
ExperimentSpec example_1();

/// Rational two-flux model, u0 = 0.9 (x <= 0) | 0.2 on [-4, 4], dx = 8/50,
/// dt = 0.008, t in {1.0, 2.0}, LF reference at dx = 8/2000.
ExperimentSpec example_2();

/// dx_ref * Σ |u_ref - u_coarse(cell containing x)| over the reference cells.
/// Both states must be Base parity on nested meshes of the same domain, with
/// times no further apart than max_time_gap.
double l1_error(const StaggeredState& coarse, const StaggeredState& reference,
                double max_time_gap = std::numeric_limits<double>::infinity());

struct ErrorRow {
  double dx = 0.0;
  Scheme scheme = Scheme::NessyahuTadmor;
  double time = 0.0;            // snapped time of the coarse run
  double reference_time = 0.0;  // snapped time of the reference snapshot
  double l1_error = 0.0;
  std::optional<double> observed_order;  // log2(e_i / e_{i+1}); empty on the finest row
};

struct ErrorTable {
  std::vector<ErrorRow> rows;
};

/// Header `dx,scheme,time,l1_error,observed_order`; the order is blank when absent.
void write_error_table_csv(std::ostream& out, const ErrorTable& table);

/// Runs `scheme` on spec's data at mesh spacing dx, stopping at each time.
std::vector<MarchResult> run_experiment(const ExperimentSpec& spec, const SchemeConfig& cfg, double dx,
                                        std::span<const double> times,
                                        std::span<StepObserver* const> observers = {});

/// Scheme config for an experiment run: spec.lambda under the MaxPrinciple level.
SchemeConfig experiment_config(const ExperimentSpec& spec, Scheme scheme, LimiterConfig limiter = {});

struct StudyOptions {
  Scheme scheme = Scheme::NessyahuTadmor;
  LimiterConfig limiter;
  int halvings = 3;
  std::vector<double> times;  // empty: spec.times
  CflLevel cfl_level = CflLevel::MaxPrinciple;
};

/// Runs at dx, dx/2, ..., dx/2^(halvings-1) and compares each snapshot to the
/// LF reference at the same snapped time. Rows are grouped by time, coarse to fine.
ErrorTable refinement_study(const ExperimentSpec& spec, const StudyOptions& options);

}  // namespace dflux
