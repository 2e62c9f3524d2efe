#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "dflux/flux_model.hpp"
#include "dflux/grid_state.hpp"
#include "dflux/limiter.hpp"

namespace dflux {

enum class Scheme { LaxFriedrichs, NessyahuTadmor };

/// Which time-step restriction a run is held to.
///   MaxPrinciple:  kappa <= (sqrt(2) - 1)/2
///   OneSided:      kappa <= min{g1/(7500 g2), 1/4000}
///   CubicEstimate: OneSided and kappa <= 7/(85 + 16 C), g1/(g2 chi)
///   Manual:        no bound, a warning is recorded
enum class CflLevel { MaxPrinciple, OneSided, CubicEstimate, Manual };

const char* to_string(Scheme s);
const char* to_string(CflLevel c);

struct SchemeConfig {
  Scheme scheme = Scheme::NessyahuTadmor;
  LimiterConfig limiter;
  double lambda = 0.0;  // dt / dx, fixed for the whole run
  CflLevel cfl_level = CflLevel::MaxPrinciple;

  /// Ghost width the scheme's stencil needs: 2 for NT, 1 for LF.
  int ghost_width() const { return scheme == Scheme::NessyahuTadmor ? 2 : 1; }
};

/// chi = 228 + 13 C + 174 C g2 + 12 C^2 g2 with C = C_u0.
double cubic_estimate_chi(const FluxModel& model);

/// Admissible kappa for the level; +inf for Manual.
double cfl_bound(const FluxModel& model, CflLevel level);

struct CflCheck {
  double kappa_used = 0.0;  // lambda * sup|f_u|
  double kappa_bound = 0.0;
  bool ok = true;
};

CflCheck check_cfl(const FluxModel& model, const SchemeConfig& cfg);

class CflViolation : public std::runtime_error {
 public:
  CflViolation(double kappa_used, double kappa_bound, CflLevel level);
  double kappa_used() const { return kappa_used_; }
  double kappa_bound() const { return kappa_bound_; }

 private:
  double kappa_used_;
  double kappa_bound_;
};

/// Throws CflViolation when lambda * sup|f_u| exceeds the configured level.
CflCheck enforce_cfl(const FluxModel& model, const SchemeConfig& cfg);

/// Correction terms a_j of the predictor-corrector form, indexed like the
/// extended (ghost-padded) input arrays of the step.
struct CorrectionTerms {
  std::vector<double> a;
};

/// u_j - (lambda/2) f_u(k_j, u_j) sigma_j, elementwise.
std::vector<double> mid_time_values(std::span<const double> values, std::span<const double> kbar,
                                    std::span<const double> sigma, const FluxModel& model, double lambda);

/// Everything a staggered step computed on its padded input.
struct StepDetail {
  ExtendedArrays extended;
  std::vector<double> slopes;  // empty for LF
  CorrectionTerms corrections;  // empty for LF
};

struct StepResult {
  StaggeredState state;
  StepDetail detail;
};

/// First-order staggered Lax-Friedrichs step.
StaggeredState lf_step(const StaggeredState& state, const FluxModel& model, const Coefficient& coeff,
                       const SchemeConfig& cfg);

/// Second-order staggered central (Nessyahu-Tadmor type) step with the
/// configured limiter. Also returns the correction terms a_j.
StepResult nt_step(const StaggeredState& state, const FluxModel& model, const Coefficient& coeff,
                   const SchemeConfig& cfg);

/// The NT step computed as an LF predictor followed by u = u_LF - a_{j+1} + a_j.
StaggeredState predictor_corrector_step(const StaggeredState& state, const FluxModel& model,
                                        const Coefficient& coeff, const SchemeConfig& cfg);

/// One step of cfg.scheme with the padded inputs and intermediate arrays.
StepResult advance(const StaggeredState& state, const FluxModel& model, const Coefficient& coeff,
                   const SchemeConfig& cfg);

/// A transition n -> n+1 as seen by observers. Slopes and corrections are
/// indexed like `extended` and are empty for LF.
struct StepRecord {
  const StaggeredState& prev;
  const StaggeredState& next;
  const StepDetail& detail;
  const FluxModel& model;
  const Coefficient& coeff;
  const SchemeConfig& cfg;
};

class StepObserver {
 public:
  virtual ~StepObserver() = default;
  virtual void on_step(const StepRecord& record) = 0;
};

struct MarchResult {
  StaggeredState state;
  long steps = 0;
  double requested_time = 0.0;
  double snapped_time = 0.0;
  bool snapped = false;
  CflCheck cfl;
  std::vector<std::string> warnings;
};

/// Largest even n with n dt <= duration (up to a relative 1e-9 rounding slack).
long even_step_count(double duration, double dt);

/// Marches a Base-parity state to the last even step at or before t_end,
/// feeding every transition to each observer in order.
MarchResult march(const StaggeredState& initial, const FluxModel& model, const Coefficient& coeff,
                  const SchemeConfig& cfg, double t_end, std::span<StepObserver* const> observers = {});

/// Single run stopping at each of the (ascending) times; element i is the
/// snapshot for times[i]. Step counts are snapped against the initial time.
std::vector<MarchResult> march_to_times(const StaggeredState& initial, const FluxModel& model,
                                        const Coefficient& coeff, const SchemeConfig& cfg,
                                        std::span<const double> times,
                                        std::span<StepObserver* const> observers = {});

}  // namespace dflux
