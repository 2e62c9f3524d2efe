#pragma once

#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "dflux/central_schemes.hpp"

namespace dflux {

/// Absolute slack used by every diagnostic inequality.
constexpr double kDiagnosticTolerance = 1e-12;

/// Ψ of the one-sided jump estimate, evaluated from model suprema, C_u0 and
/// the coefficient sup norm (sup |k|). Multiplies ||k||_BV in the estimate.
double psi_constant(const FluxModel& model, const Coefficient& coeff, double lambda);

/// Σ (Δu)_+^p over consecutive entries for convex fluxes, Σ |(Δu)_-|^p for
/// concave ones.
double signed_jump_sum(std::span<const double> values, Convexity convexity, int power);

struct OneSidedCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = true;
  double margin() const { return rhs - lhs; }
};

/// One-sided jump estimate between consecutive states:
///   lhs = Σ (Δu^{n+1})_±^2
///   rhs = Σ (Δu^n)_±^2 - (λ γ1 / 500) Σ |(Δu^n)_±|^3 + Ψ ||k||_BV
OneSidedCheck onesided_check(const StaggeredState& prev, const StaggeredState& next, const FluxModel& model,
                             const Coefficient& coeff, double lambda);

/// ν_{j+1/2} at each interface of `values` (length n-1). For concave fluxes
/// |f_uu| replaces f_uu. When Δu = 0 the slope ratios are taken as 0.
std::vector<double> nu_coefficient(std::span<const double> values, std::span<const double> kbar,
                                   std::span<const double> sigma, const FluxModel& model, double lambda);

/// Entropy numerical flux F(k,u,c) = sgn(u - c)(f(k,u) - f(k,c)).
double kruzkov_flux(const FluxModel& model, double k, double u, double c);

/// Max over cells and c of the discrete LF cell entropy functional
///   |u'_{j+1/2} - c| - |u_{j+1} - c|/2 - |u_j - c|/2
///     + λ (F(k_{j+1},u_{j+1},c) - F(k_j,u_j,c)) - λ |f(k_{j+1},c) - f(k_j,c)|
/// with `prev` padded by one absorbing ghost cell per side. Non-positive
/// (up to rounding) whenever `next` came from an LF step.
double entropy_residual_lf(const StaggeredState& prev, const StaggeredState& next, const FluxModel& model,
                           double lambda, std::span<const double> c_grid);

/// 11 equispaced values on [u_lo, u_hi].
std::vector<double> default_kruzkov_grid(const FluxModel& model);

struct DiagnosticsReport {
  double u_min = std::numeric_limits<double>::infinity();
  double u_max = -std::numeric_limits<double>::infinity();
  std::vector<double> onesided_series;  // lhs per step
  bool onesided_holds = true;
  double onesided_worst_margin = std::numeric_limits<double>::infinity();
  double cubic_accumulator = 0.0;
  double quad_accumulator = 0.0;
  double nu_min = std::numeric_limits<double>::infinity();
  double entropy_max_residual = -std::numeric_limits<double>::infinity();  // LF runs only
  double correction_max = 0.0;
  double correction_bound = std::numeric_limits<double>::quiet_NaN();
  bool correction_holds = true;
  double psi = 0.0;
  long steps = 0;
};

/// Adds dx Σ_{|x_{j+1/2}| <= X} |Δu_{j+1/2}|^3 of `state` to the cubic accumulator.
void accumulate_cubic(DiagnosticsReport& report, const StaggeredState& state, double window_x);

struct CorrectionCheck {
  double max_a = 0.0;
  double bound = 0.0;
  bool holds = true;
};

/// max |a_j| against (λ² sup|f_u|² / 2 + 1/8) K~ dx^α. Not applicable
/// (nullopt) unless the modified limiter is configured.
std::optional<CorrectionCheck> correction_bound_check(const CorrectionTerms& corrections, const SchemeConfig& cfg,
                                                      const FluxModel& model, double dx);

struct DiagnosticsOptions {
  bool bounds = true;
  bool onesided = true;
  bool cubic = true;
  bool quadratic = true;
  bool entropy = true;
  bool correction = true;
  double window_x = std::numeric_limits<double>::infinity();
  std::vector<double> kruzkov_constants;  // empty: default_kruzkov_grid
};

/// Folds every transition of a march into a DiagnosticsReport.
class DiagnosticsObserver : public StepObserver {
 public:
  DiagnosticsObserver(const FluxModel& model, const Coefficient& coeff, const SchemeConfig& cfg,
                      DiagnosticsOptions options = {});

  /// Records the initial state's extrema. Called automatically on the first
  /// step if not called explicitly.
  void start(const StaggeredState& initial);
  void on_step(const StepRecord& record) override;

  const DiagnosticsReport& report() const { return report_; }

 private:
  void track_bounds(const StaggeredState& s);

  const FluxModel& model_;
  DiagnosticsOptions options_;
  DiagnosticsReport report_;
  bool started_ = false;
};

/// March metadata that accompanies a report in the JSON output.
struct RunSummary {
  Scheme scheme = Scheme::NessyahuTadmor;
  double lambda = 0.0;
  double dx = 0.0;
  long steps = 0;
  double snapped_time = 0.0;
  CflLevel cfl_level = CflLevel::MaxPrinciple;
  double kappa_used = 0.0;
  double kappa_bound = 0.0;
};

RunSummary summarize(const MarchResult& result, const SchemeConfig& cfg);

/// Diagnostics JSON object; non-finite numbers become null.
nlohmann::json diagnostics_json(const RunSummary& run, const DiagnosticsReport& report);

}  // namespace dflux
