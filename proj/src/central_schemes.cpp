#include "dflux/central_schemes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

namespace dflux {

namespace {

// Relative slack on the CFL comparison; lambda = kappa / sup|f_u| sits on the bound.
constexpr double kCflSlack = 1e-12;

StaggeredState next_shell(const StaggeredState& prev, const Coefficient& coeff, double lambda) {
  StaggeredState next;
  next.mesh = prev.mesh;
  next.parity = flip(prev.parity);
  next.step_index = prev.step_index + 1;
  next.time = prev.time + lambda * prev.mesh.dx;
  next.kbar = cell_average_coefficient(prev.mesh, coeff, next.parity);
  next.values.resize(next.kbar.size());
  return next;
}

void check_input(const StaggeredState& state) {
  if (state.values.empty()) throw std::invalid_argument("cannot step an empty state");
  state.validate();
}

void lf_into(const ExtendedArrays& ext, Parity parity, const FluxModel& model, double lambda,
             std::vector<double>& out) {
  const auto& u = ext.values;
  const auto& k = ext.kbar;
  const int first = first_output_left(parity, ext.ghost);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const auto l = static_cast<std::size_t>(first) + i;
    out[i] = 0.5 * (u[l] + u[l + 1]) - lambda * (model.f(k[l + 1], u[l + 1]) - model.f(k[l], u[l]));
  }
}

StepResult lf_advance(const StaggeredState& state, const FluxModel& model, const Coefficient& coeff,
                      double lambda, int ghost) {
  StepResult r{next_shell(state, coeff, lambda), {extend_absorbing(state, ghost), {}, {}}};
  lf_into(r.detail.extended, state.parity, model, lambda, r.state.values);
  return r;
}

StepResult nt_advance(const StaggeredState& state, const FluxModel& model, const Coefficient& coeff,
                      const SchemeConfig& cfg) {
  const double lambda = cfg.lambda;
  StepResult r{next_shell(state, coeff, lambda), {extend_absorbing(state, 2), {}, {}}};
  const auto& u = r.detail.extended.values;
  const auto& k = r.detail.extended.kbar;
  auto& sigma = r.detail.slopes;
  sigma = slopes(u, state.dx(), cfg.limiter);
  const auto mid = mid_time_values(u, k, sigma, model, lambda);

  auto& a = r.detail.corrections.a;
  a.resize(u.size());
  for (std::size_t e = 0; e < u.size(); ++e) {
    a[e] = lambda * (model.f(k[e], mid[e]) - model.f(k[e], u[e])) + sigma[e] / 8.0;
  }

  const int first = first_output_left(state.parity, 2);
  auto& out = r.state.values;
  for (std::size_t i = 0; i < out.size(); ++i) {
    const auto l = static_cast<std::size_t>(first) + i;
    out[i] = 0.5 * (u[l] + u[l + 1]) - 0.125 * (sigma[l + 1] - sigma[l]) -
             lambda * (model.f(k[l + 1], mid[l + 1]) - model.f(k[l], mid[l]));
  }
  return r;
}

StepResult advance_unchecked(const StaggeredState& state, const FluxModel& model, const Coefficient& coeff,
                             const SchemeConfig& cfg) {
  if (cfg.scheme == Scheme::LaxFriedrichs) return lf_advance(state, model, coeff, cfg.lambda, 1);
  return nt_advance(state, model, coeff, cfg);
}

}  // namespace

const char* to_string(Scheme s) { return s == Scheme::LaxFriedrichs ? "lf" : "nt"; }

const char* to_string(CflLevel c) {
  switch (c) {
    case CflLevel::MaxPrinciple:
      return "maxprinciple";
    case CflLevel::OneSided:
      return "onesided";
    case CflLevel::CubicEstimate:
      return "cubic";
    case CflLevel::Manual:
      return "manual";
  }
  return "?";
}

double cubic_estimate_chi(const FluxModel& model) {
  const double c = model.c_u0();
  const double g2 = model.bounds().gamma2;
  return 228.0 + 13.0 * c + 174.0 * c * g2 + 12.0 * c * c * g2;
}

double cfl_bound(const FluxModel& model, CflLevel level) {
  const double g1 = model.bounds().gamma1;
  const double g2 = model.bounds().gamma2;
  switch (level) {
    case CflLevel::MaxPrinciple:
      return (std::sqrt(2.0) - 1.0) / 2.0;
    case CflLevel::OneSided:
      return std::min(g1 / (7500.0 * g2), 1.0 / 4000.0);
    case CflLevel::CubicEstimate:
      return std::min({g1 / (7500.0 * g2), 1.0 / 4000.0, 7.0 / (85.0 + 16.0 * model.c_u0()),
                       g1 / (g2 * cubic_estimate_chi(model))});
    case CflLevel::Manual:
      return std::numeric_limits<double>::infinity();
  }
  return 0.0;
}

CflCheck check_cfl(const FluxModel& model, const SchemeConfig& cfg) {
  CflCheck c;
  c.kappa_used = cfg.lambda * model.bounds().sup_fu;
  c.kappa_bound = cfl_bound(model, cfg.cfl_level);
  c.ok = c.kappa_used <= c.kappa_bound * (1.0 + kCflSlack);
  return c;
}

CflViolation::CflViolation(double kappa_used, double kappa_bound, CflLevel level)
    : std::runtime_error(fmt::format("CFL violation: kappa_used = {:.17g} exceeds kappa_bound = {:.17g} ({})",
                                     kappa_used, kappa_bound, to_string(level))),
      kappa_used_(kappa_used),
      kappa_bound_(kappa_bound) {}

CflCheck enforce_cfl(const FluxModel& model, const SchemeConfig& cfg) {
  if (!(cfg.lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
  cfg.limiter.validate();
  const CflCheck c = check_cfl(model, cfg);
  if (!c.ok) throw CflViolation(c.kappa_used, c.kappa_bound, cfg.cfl_level);
  return c;
}

std::vector<double> mid_time_values(std::span<const double> values, std::span<const double> kbar,
                                    std::span<const double> sigma, const FluxModel& model, double lambda) {
  if (values.size() != kbar.size() || values.size() != sigma.size()) {
    throw std::invalid_argument("mid_time_values needs aligned arrays");
  }
  std::vector<double> mid(values.size());
  for (std::size_t j = 0; j < values.size(); ++j) {
    mid[j] = values[j] - 0.5 * lambda * model.f_u(kbar[j], values[j]) * sigma[j];
  }
  return mid;
}

StaggeredState lf_step(const StaggeredState& state, const FluxModel& model, const Coefficient& coeff,
                       const SchemeConfig& cfg) {
  check_input(state);
  enforce_cfl(model, cfg);
  return lf_advance(state, model, coeff, cfg.lambda, 1).state;
}

StepResult nt_step(const StaggeredState& state, const FluxModel& model, const Coefficient& coeff,
                   const SchemeConfig& cfg) {
  check_input(state);
  enforce_cfl(model, cfg);
  return nt_advance(state, model, coeff, cfg);
}

StaggeredState predictor_corrector_step(const StaggeredState& state, const FluxModel& model,
                                        const Coefficient& coeff, const SchemeConfig& cfg) {
  check_input(state);
  enforce_cfl(model, cfg);
  // The corrections come from the NT machinery; the output is rebuilt from
  // the LF predictor on the same padded input.
  StepResult nt = nt_advance(state, model, coeff, cfg);
  const auto& a = nt.detail.corrections.a;
  std::vector<double> predictor(nt.state.values.size());
  lf_into(nt.detail.extended, state.parity, model, cfg.lambda, predictor);
  const int first = first_output_left(state.parity, nt.detail.extended.ghost);
  for (std::size_t i = 0; i < predictor.size(); ++i) {
    const auto l = static_cast<std::size_t>(first) + i;
    nt.state.values[i] = predictor[i] - a[l + 1] + a[l];
  }
  return std::move(nt.state);
}

StepResult advance(const StaggeredState& state, const FluxModel& model, const Coefficient& coeff,
                   const SchemeConfig& cfg) {
  check_input(state);
  enforce_cfl(model, cfg);
  return advance_unchecked(state, model, coeff, cfg);
}

long even_step_count(double duration, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("time step must be positive");
  if (duration <= 0.0) return 0;
  const double ratio = duration / dt;
  auto n = static_cast<long>(std::floor(ratio + 1e-9 * std::max(1.0, ratio)));
  return n - n % 2;
}

namespace {

struct MarchSetup {
  CflCheck cfl;
  std::vector<std::string> warnings;
};

MarchSetup prepare_march(const StaggeredState& initial, const FluxModel& model, const SchemeConfig& cfg) {
  if (initial.values.empty()) throw std::invalid_argument("cannot march an empty domain");
  initial.validate();
  if (initial.parity != Parity::Base) throw std::invalid_argument("march starts from a Base-parity state");
  MarchSetup s;
  s.cfl = enforce_cfl(model, cfg);
  if (cfg.cfl_level == CflLevel::Manual) {
    s.warnings.push_back(fmt::format("manual lambda: CFL not enforced (kappa_used = {:.17g})", s.cfl.kappa_used));
  }
  return s;
}

}  // namespace

std::vector<MarchResult> march_to_times(const StaggeredState& initial, const FluxModel& model,
                                        const Coefficient& coeff, const SchemeConfig& cfg,
                                        std::span<const double> times, std::span<StepObserver* const> observers) {
  const MarchSetup setup = prepare_march(initial, model, cfg);
  const double dt = cfg.lambda * initial.dx();
  std::vector<MarchResult> results;
  results.reserve(times.size());

  StaggeredState current = initial;
  long done = 0;
  for (double t : times) {
    if (!(t >= initial.time)) throw std::invalid_argument("output times must not precede the initial time");
    const long target = even_step_count(t - initial.time, dt);
    if (target < done) throw std::invalid_argument("output times must be ascending");
    for (; done < target; ++done) {
      StepResult r = advance_unchecked(current, model, coeff, cfg);
      r.state.time = initial.time + static_cast<double>(done + 1) * dt;
      const StepRecord record{current, r.state, r.detail, model, coeff, cfg};
      for (StepObserver* obs : observers) obs->on_step(record);
      current = std::move(r.state);
    }
    MarchResult m;
    m.state = current;
    m.steps = done;
    m.requested_time = t;
    m.snapped_time = initial.time + static_cast<double>(done) * dt;
    m.snapped = std::abs(m.snapped_time - t) > 1e-12 * std::max(1.0, std::abs(t));
    m.cfl = setup.cfl;
    m.warnings = setup.warnings;
    if (m.snapped) {
      m.warnings.push_back(fmt::format("t_end = {:.17g} snapped to {:.17g} ({} steps)", t, m.snapped_time, done));
    }
    results.push_back(std::move(m));
  }
  return results;
}

MarchResult march(const StaggeredState& initial, const FluxModel& model, const Coefficient& coeff,
                  const SchemeConfig& cfg, double t_end, std::span<StepObserver* const> observers) {
  const double times[] = {t_end};
  return std::move(march_to_times(initial, model, coeff, cfg, times, observers).front());
}

}  // namespace dflux
