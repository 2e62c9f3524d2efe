#include "dflux/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dflux {

double psi_constant(const FluxModel& model, const Coefficient& coeff, double lambda) {
  const auto& b = model.bounds();
  const double c = model.c_u0();
  const double l = lambda;
  const double k_sup = coeff.sup_norm();
  return 72.0 * l * l * c * c * b.sup_fuk + 114.0 * l * c * c * b.sup_fuk +
         (708.0 * c * c + 48.0 * l * b.sup_fu) * l * l * b.sup_fu * b.sup_fuk +
         (48.0 * l * l * c * k_sup + 132.0 * l * l * c * c * b.gamma2 * b.sup_fu + 64.0 * l * b.sup_fk * k_sup +
          88.0 * c) *
             l * b.sup_fk;
}

double signed_jump_sum(std::span<const double> values, Convexity convexity, int power) {
  double sum = 0.0;
  for (std::size_t j = 0; j + 1 < values.size(); ++j) {
    const double d = values[j + 1] - values[j];
    const double part = convexity == Convexity::StrictlyConvex ? std::max(d, 0.0) : -std::min(d, 0.0);
    sum += std::pow(part, power);
  }
  return sum;
}

OneSidedCheck onesided_check(const StaggeredState& prev, const StaggeredState& next, const FluxModel& model,
                             const Coefficient& coeff, double lambda) {
  const Convexity cv = model.convexity();
  OneSidedCheck c;
  c.lhs = signed_jump_sum(next.values, cv, 2);
  c.rhs = signed_jump_sum(prev.values, cv, 2) -
          lambda * model.bounds().gamma1 / 500.0 * signed_jump_sum(prev.values, cv, 3) +
          psi_constant(model, coeff, lambda) * coeff.bv_norm();
  c.holds = c.lhs <= c.rhs + kDiagnosticTolerance;
  return c;
}

std::vector<double> nu_coefficient(std::span<const double> values, std::span<const double> kbar,
                                   std::span<const double> sigma, const FluxModel& model, double lambda) {
  if (values.size() != kbar.size() || values.size() != sigma.size()) {
    throw std::invalid_argument("nu_coefficient needs aligned arrays");
  }
  if (values.size() < 2) return {};
  std::vector<double> nu(values.size() - 1);
  for (std::size_t j = 0; j + 1 < values.size(); ++j) {
    const double du = values[j + 1] - values[j];
    const double k_mid = 0.5 * (kbar[j] + kbar[j + 1]);
    const double u_mid = 0.5 * (values[j] + values[j + 1]);
    const double beta = lambda * model.f_u(k_mid, u_mid);
    const double damping = 1.0 - 4.0 * beta * beta;
    // Δu = 0 forces σ_j = σ_{j+1} = 0, so both ratios vanish.
    const double slope_ratio = du != 0.0 ? (sigma[j + 1] - sigma[j]) / du : 0.0;
    const double mean_ratio = du != 0.0 ? (sigma[j] + sigma[j + 1]) / (2.0 * du) : 0.0;
    const double bracket =
        1.0 - damping * slope_ratio * slope_ratio / 16.0 - beta * slope_ratio - mean_ratio;
    nu[j] = damping * bracket * std::abs(model.f_uu(k_mid, u_mid)) / 8.0;
  }
  return nu;
}

double kruzkov_flux(const FluxModel& model, double k, double u, double c) {
  const double s = u > c ? 1.0 : (u < c ? -1.0 : 0.0);
  return s * (model.f(k, u) - model.f(k, c));
}

double entropy_residual_lf(const StaggeredState& prev, const StaggeredState& next, const FluxModel& model,
                           double lambda, std::span<const double> c_grid) {
  const std::size_t expected = prev.parity == Parity::Base ? prev.size() + 1 : prev.size() - 1;
  if (next.parity != flip(prev.parity) || next.size() != expected) {
    throw std::invalid_argument("entropy residual: states are not consecutive staggered levels");
  }
  const ExtendedArrays ext = extend_absorbing(prev, 1);
  const auto& u = ext.values;
  const auto& k = ext.kbar;
  const auto first = static_cast<std::size_t>(first_output_left(prev.parity, 1));
  double worst = -std::numeric_limits<double>::infinity();
  for (double c : c_grid) {
    for (std::size_t i = 0; i < next.size(); ++i) {
      const std::size_t l = first + i;
      const double r = std::abs(next.values[i] - c) - 0.5 * std::abs(u[l + 1] - c) - 0.5 * std::abs(u[l] - c) +
                       lambda * (kruzkov_flux(model, k[l + 1], u[l + 1], c) - kruzkov_flux(model, k[l], u[l], c)) -
                       lambda * std::abs(model.f(k[l + 1], c) - model.f(k[l], c));
      worst = std::max(worst, r);
    }
  }
  return worst;
}

std::vector<double> default_kruzkov_grid(const FluxModel& model) {
  std::vector<double> c(11);
  for (int i = 0; i <= 10; ++i) c[static_cast<std::size_t>(i)] = model.u_lo() + (model.u_hi() - model.u_lo()) * i / 10.0;
  return c;
}

void accumulate_cubic(DiagnosticsReport& report, const StaggeredState& state, double window_x) {
  double sum = 0.0;
  for (std::size_t j = 0; j + 1 < state.size(); ++j) {
    if (std::abs(state.mesh.interface(state.parity, static_cast<int>(j))) > window_x) continue;
    sum += std::pow(std::abs(state.values[j + 1] - state.values[j]), 3);
  }
  report.cubic_accumulator += state.dx() * sum;
}

std::optional<CorrectionCheck> correction_bound_check(const CorrectionTerms& corrections, const SchemeConfig& cfg,
                                                      const FluxModel& model, double dx) {
  if (cfg.limiter.kind != LimiterKind::MinmodModified) return std::nullopt;
  CorrectionCheck c;
  for (double a : corrections.a) c.max_a = std::max(c.max_a, std::abs(a));
  const double fu = model.bounds().sup_fu;
  c.bound = (cfg.lambda * cfg.lambda * fu * fu / 2.0 + 1.0 / 8.0) * cfg.limiter.k_tilde * std::pow(dx, cfg.limiter.alpha);
  c.holds = c.max_a <= c.bound + kDiagnosticTolerance;
  return c;
}

DiagnosticsObserver::DiagnosticsObserver(const FluxModel& model, const Coefficient& coeff, const SchemeConfig& cfg,
                                         DiagnosticsOptions options)
    : model_(model), options_(std::move(options)) {
  if (options_.kruzkov_constants.empty()) options_.kruzkov_constants = default_kruzkov_grid(model);
  report_.psi = psi_constant(model, coeff, cfg.lambda);
}

void DiagnosticsObserver::track_bounds(const StaggeredState& s) {
  for (double v : s.values) {
    report_.u_min = std::min(report_.u_min, v);
    report_.u_max = std::max(report_.u_max, v);
  }
}

void DiagnosticsObserver::start(const StaggeredState& initial) {
  started_ = true;
  if (options_.bounds) track_bounds(initial);
}

void DiagnosticsObserver::on_step(const StepRecord& rec) {
  if (!started_) start(rec.prev);
  ++report_.steps;
  const double lambda = rec.cfg.lambda;
  if (options_.bounds) track_bounds(rec.next);

  if (options_.onesided) {
    const OneSidedCheck c = onesided_check(rec.prev, rec.next, model_, rec.coeff, lambda);
    report_.onesided_series.push_back(c.lhs);
    report_.onesided_holds = report_.onesided_holds && c.holds;
    report_.onesided_worst_margin = std::min(report_.onesided_worst_margin, c.margin());
  }

  if (options_.cubic) accumulate_cubic(report_, rec.prev, options_.window_x);

  if (options_.quadratic) {
    const auto& ext = rec.detail.extended;
    const auto g = static_cast<std::size_t>(ext.ghost);
    const std::size_t n = rec.prev.size();
    std::vector<double> sigma(n, 0.0);
    if (!rec.detail.slopes.empty()) {
      std::copy_n(rec.detail.slopes.begin() + static_cast<std::ptrdiff_t>(g), n, sigma.begin());
    }
    const auto nu = nu_coefficient(rec.prev.values, rec.prev.kbar, sigma, model_, lambda);
    double sum = 0.0;
    for (std::size_t j = 0; j < nu.size(); ++j) {
      const double du = rec.prev.values[j + 1] - rec.prev.values[j];
      report_.nu_min = std::min(report_.nu_min, nu[j]);
      sum += nu[j] * du * du;
    }
    report_.quad_accumulator += rec.prev.dx() * sum;
  }

  if (options_.entropy && rec.cfg.scheme == Scheme::LaxFriedrichs) {
    report_.entropy_max_residual = std::max(
        report_.entropy_max_residual,
        entropy_residual_lf(rec.prev, rec.next, model_, lambda, options_.kruzkov_constants));
  }

  if (options_.correction && !rec.detail.corrections.a.empty()) {
    for (double a : rec.detail.corrections.a) report_.correction_max = std::max(report_.correction_max, std::abs(a));
    if (auto c = correction_bound_check(rec.detail.corrections, rec.cfg, model_, rec.prev.dx())) {
      report_.correction_bound = c->bound;
      report_.correction_holds = report_.correction_holds && c->holds;
    }
  }
}

RunSummary summarize(const MarchResult& result, const SchemeConfig& cfg) {
  return RunSummary{cfg.scheme,          cfg.lambda,          result.state.dx(),     result.steps,
                    result.snapped_time, cfg.cfl_level,       result.cfl.kappa_used, result.cfl.kappa_bound};
}

nlohmann::json diagnostics_json(const RunSummary& run, const DiagnosticsReport& r) {
  auto num = [](double v) -> nlohmann::json {
    if (std::isfinite(v)) return v;
    return nullptr;
  };
  nlohmann::json j;
  j["scheme"] = to_string(run.scheme);
  j["lambda"] = num(run.lambda);
  j["dx"] = num(run.dx);
  j["steps"] = run.steps;
  j["snapped_time"] = num(run.snapped_time);
  j["u_min"] = num(r.u_min);
  j["u_max"] = num(r.u_max);
  j["onesided_holds"] = r.onesided_holds;
  j["onesided_worst_margin"] = num(r.onesided_worst_margin);
  j["cubic_accumulator"] = num(r.cubic_accumulator);
  j["quad_accumulator"] = num(r.quad_accumulator);
  j["nu_min"] = num(r.nu_min);
  j["entropy_max_residual"] = num(r.entropy_max_residual);
  j["correction_max"] = num(r.correction_max);
  j["correction_bound"] = num(r.correction_bound);
  j["cfl_level"] = to_string(run.cfl_level);
  j["kappa_used"] = num(run.kappa_used);
  j["kappa_bound"] = num(run.kappa_bound);
  return j;
}

}  // namespace dflux
