#include "dflux/flux_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace dflux {

namespace {

constexpr int kBoundSamples = 1024;

double fd_step(double width) { return 1e-5 * std::max(1.0, width); }

std::vector<double> sample_axis(double lo, double hi, int n) {
  if (hi <= lo || n < 2) return {lo};
  std::vector<double> pts(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) pts[static_cast<std::size_t>(i)] = i == n - 1 ? hi : lo + (hi - lo) * i / (n - 1);
  return pts;
}

FluxBounds sample_bounds(const FluxModel& m, int samples) {
  const auto ks = sample_axis(m.k_lo(), m.k_hi(), samples);
  const auto us = sample_axis(m.u_lo(), m.u_hi(), samples);
  FluxBounds b;
  b.gamma1 = std::numeric_limits<double>::infinity();
  for (double k : ks) {
    for (double u : us) {
      b.sup_fu = std::max(b.sup_fu, std::abs(m.f_u(k, u)));
      b.sup_fk = std::max(b.sup_fk, std::abs(m.f_k(k, u)));
      b.sup_fuk = std::max(b.sup_fuk, std::abs(m.f_uk(k, u)));
      const double c = std::abs(m.f_uu(k, u));
      b.gamma1 = std::min(b.gamma1, c);
      b.gamma2 = std::max(b.gamma2, c);
    }
  }
  return b;
}

}  // namespace

const char* to_string(Convexity c) {
  return c == Convexity::StrictlyConvex ? "strictly-convex" : "strictly-concave";
}

FluxModel::FluxModel(std::string name, FluxFunctions fns, FluxBox box, std::optional<FluxBounds> closed_form,
                     bool crossing_condition_declared)
    : name_(std::move(name)), fns_(std::move(fns)), box_(box), crossing_declared_(crossing_condition_declared) {
  if (!fns_.f) throw std::invalid_argument("flux model '" + name_ + "' has no flux function");
  if (!(box_.u_lo < box_.u_hi)) throw std::invalid_argument("flux model needs u_lo < u_hi");
  if (box_.k_lo > box_.k_hi) throw std::invalid_argument("flux model needs k_lo <= k_hi");

  const double hu = fd_step(box_.u_hi - box_.u_lo);
  const double hk = fd_step(box_.k_hi - box_.k_lo);
  const BivariateFn f = fns_.f;
  if (!fns_.f_u) {
    fd_derivatives_ = true;
    fns_.f_u = [f, hu](double k, double u) { return (f(k, u + hu) - f(k, u - hu)) / (2 * hu); };
  }
  if (!fns_.f_k) {
    fd_derivatives_ = true;
    fns_.f_k = [f, hk](double k, double u) { return (f(k + hk, u) - f(k - hk, u)) / (2 * hk); };
  }
  const BivariateFn fu = fns_.f_u;
  if (!fns_.f_uu) {
    fd_derivatives_ = true;
    fns_.f_uu = [fu, hu](double k, double u) { return (fu(k, u + hu) - fu(k, u - hu)) / (2 * hu); };
  }
  if (!fns_.f_uk) {
    fd_derivatives_ = true;
    fns_.f_uk = [fu, hk](double k, double u) { return (fu(k + hk, u) - fu(k - hk, u)) / (2 * hk); };
  }

  const double kc = 0.5 * (box_.k_lo + box_.k_hi);
  const double uc = 0.5 * (box_.u_lo + box_.u_hi);
  convexity_ = fns_.f_uu(kc, uc) >= 0.0 ? Convexity::StrictlyConvex : Convexity::StrictlyConcave;

  if (closed_form) {
    bounds_ = *closed_form;
    closed_form_bounds_ = true;
  } else {
    bounds_ = sample_bounds(*this, kBoundSamples);
  }
}

double FluxModel::c_u0() const { return std::max(std::abs(box_.u_lo), std::abs(box_.u_hi)); }

ModelSetup builtin_multiplicative(double k_left, double k_right) {
  if (!(k_left > 0.0) || !(k_right > 0.0)) {
    throw std::invalid_argument("multiplicative flux needs positive coefficient values");
  }
  const double k_min = std::min(k_left, k_right);
  const double k_max = std::max(k_left, k_right);
  FluxFunctions fns{
      [](double k, double u) { return k * u * (1.0 - u); },
      [](double k, double u) { return k * (1.0 - 2.0 * u); },
      [](double, double u) { return u * (1.0 - u); },
      [](double k, double) { return -2.0 * k; },
      [](double, double u) { return 1.0 - 2.0 * u; },
  };
  FluxBounds b{k_max, 0.25, 1.0, 2.0 * k_min, 2.0 * k_max};
  FluxModel model("multiplicative", std::move(fns), FluxBox{k_min, k_max, 0.0, 1.0}, b, true);
  return {std::move(model), Coefficient(PiecewiseFunction::step(0.0, k_left, k_right))};
}

namespace {

double f_left(double u) { return 2.0 * u * (1.0 - u) / (1.0 + u); }
double f_right(double u) { return 2.0 * u * (1.0 - u) / (2.0 - u); }
double df_left(double u) { return 2.0 * (1.0 - 2.0 * u - u * u) / ((1.0 + u) * (1.0 + u)); }
double df_right(double u) { return 2.0 * (2.0 - 4.0 * u + u * u) / ((2.0 - u) * (2.0 - u)); }
double d2f_left(double u) { return -8.0 / ((1.0 + u) * (1.0 + u) * (1.0 + u)); }
double d2f_right(double u) { return -8.0 / ((2.0 - u) * (2.0 - u) * (2.0 - u)); }

}  // namespace

ModelSetup builtin_two_flux_rational() {
  FluxFunctions fns{
      [](double k, double u) { return k * f_right(u) + (1.0 - k) * f_left(u); },
      [](double k, double u) { return k * df_right(u) + (1.0 - k) * df_left(u); },
      [](double, double u) { return f_right(u) - f_left(u); },
      [](double k, double u) { return k * d2f_right(u) + (1.0 - k) * d2f_left(u); },
      [](double, double u) { return df_right(u) - df_left(u); },
  };
  // f_u is monotone in u for both branches, so |f_u| peaks at an endpoint:
  // f_l' in [-1, 2], f_r' in [-2, 1]. |f_uu| = 8/(1+u)^3 or 8/(2-u)^3 lies in [1, 8].
  // f_k and f_uk do not depend on k, so a dense scan in u is exact in k.
  FluxBounds b{2.0, 0.0, 0.0, 1.0, 8.0};
  constexpr int n = 200001;
  for (int i = 0; i < n; ++i) {
    const double u = static_cast<double>(i) / (n - 1);
    b.sup_fk = std::max(b.sup_fk, std::abs(f_right(u) - f_left(u)));
    b.sup_fuk = std::max(b.sup_fuk, std::abs(df_right(u) - df_left(u)));
  }
  FluxModel model("two-flux-rational", std::move(fns), FluxBox{0.0, 1.0, 0.0, 1.0}, b, true);
  return {std::move(model), Coefficient(PiecewiseFunction::step(0.0, 0.0, 1.0))};
}

ModelSetup builtin_burgers_const_k(double k, double u_lo, double u_hi) {
  if (!(k > 0.0)) throw std::invalid_argument("burgers-const-k needs k > 0");
  if (!(u_lo < u_hi)) throw std::invalid_argument("burgers-const-k needs u_lo < u_hi");
  FluxFunctions fns{
      [](double kk, double u) { return 0.5 * kk * u * u; },
      [](double kk, double u) { return kk * u; },
      [](double, double u) { return 0.5 * u * u; },
      [](double kk, double) { return kk; },
      [](double, double u) { return u; },
  };
  const double cu = std::max(std::abs(u_lo), std::abs(u_hi));
  FluxBounds b{k * cu, 0.5 * cu * cu, cu, k, k};
  FluxModel model("burgers-const-k", std::move(fns), FluxBox{k, k, u_lo, u_hi}, b, true);
  return {std::move(model), Coefficient::constant(k)};
}

ModelSetup make_model(const std::string& name, const std::vector<double>& p) {
  auto arg = [&](std::size_t i, double fallback) { return i < p.size() ? p[i] : fallback; };
  if (name == "multiplicative") return builtin_multiplicative(arg(0, 3.0), arg(1, 1.0));
  if (name == "two-flux-rational") return builtin_two_flux_rational();
  if (name == "burgers-const-k") return builtin_burgers_const_k(arg(0, 1.0), arg(1, 0.0), arg(2, 1.0));
  throw std::invalid_argument("unknown model '" + name + "'");
}

FluxBounds sup_bounds(const FluxModel& model, int samples) {
  if (samples < 2) throw std::invalid_argument("sup_bounds needs at least 2 samples");
  if (model.has_closed_form_bounds()) return model.bounds();
  return sample_bounds(model, samples);
}

const HypothesisResult& HypothesisReport::get(const std::string& id) const {
  for (const auto& r : results) {
    if (r.id == id) return r;
  }
  throw std::out_of_range("no hypothesis " + id + " in report");
}

bool HypothesisReport::all_passed() const {
  return std::all_of(results.begin(), results.end(), [](const auto& r) { return !r.applicable || r.passed; });
}

HypothesisReport verify_hypotheses(const FluxModel& m, const Coefficient& coeff, int samples) {
  if (samples < 2) throw std::invalid_argument("verify_hypotheses needs at least 2 samples");
  HypothesisReport report;
  report.finite_difference_derivatives = m.uses_finite_difference_derivatives();
  const auto ks = sample_axis(m.k_lo(), m.k_hi(), samples);
  const auto us = sample_axis(m.u_lo(), m.u_hi(), samples);

  {
    HypothesisResult h;
    h.id = "H1";
    const double tol = 1e-12 * (1.0 + std::max(std::abs(m.k_lo()), std::abs(m.k_hi())));
    const double below = m.k_lo() - coeff.min_value();
    const double above = coeff.max_value() - m.k_hi();
    h.worst = std::max({0.0, below, above});
    h.passed = below <= tol && above <= tol;
    h.witness = {coeff.min_value(), coeff.max_value()};
    report.results.push_back(h);
  }
  {
    HypothesisResult h;
    h.id = "H2";
    const auto& b = m.bounds();
    const double tol = 1e-9 * (1.0 + b.gamma2);
    const double sign = m.convexity() == Convexity::StrictlyConvex ? 1.0 : -1.0;
    for (double k : ks) {
      for (double u : us) {
        const double s = sign * m.f_uu(k, u);
        // a wrong-signed (or vanishing) f_uu always counts as a violation
        const double wrong_sign = s <= 0.0 ? 2.0 * tol - s : 0.0;
        const double violation = std::max({b.gamma1 - s, s - b.gamma2, wrong_sign});
        if (violation > h.worst) {
          h.worst = violation;
          h.witness = {k, u};
        }
      }
    }
    h.passed = h.worst <= tol && b.gamma1 > 0.0;
    h.note = to_string(m.convexity());
    report.results.push_back(h);
  }
  {
    HypothesisResult h;
    h.id = "H3";
    const double hk = 1e-3 * std::max(1.0, m.k_hi() - m.k_lo());
    bool ok = true;
    for (double k : ks) {
      for (double u : us) {
        const double fkk = (m.f(k + hk, u) - 2.0 * m.f(k, u) + m.f(k - hk, u)) / (hk * hk);
        const double limit = 1e-8 * (1.0 + std::abs(m.f(k, u)));
        if (std::abs(fkk) > h.worst) {
          h.worst = std::abs(fkk);
          h.witness = {k, u};
        }
        ok = ok && std::abs(fkk) <= limit;
      }
    }
    h.passed = ok;
    report.results.push_back(h);
  }
  {
    HypothesisResult h;
    h.id = "H5";
    bool ok = true;
    for (double u : {m.u_lo(), m.u_hi()}) {
      const double ref = m.f(ks.front(), u);
      for (double k : ks) {
        const double d = std::abs(m.f(k, u) - ref);
        if (d > h.worst) {
          h.worst = d;
          h.witness = {ks.front(), k};
        }
        ok = ok && d <= 1e-12 * (1.0 + std::abs(ref));
      }
    }
    h.passed = ok;
    h.note = "witness holds the (k1, k2) pair with the largest endpoint flux gap";
    report.results.push_back(h);
  }
  {
    HypothesisResult h;
    h.id = "H6";
    h.note = std::to_string(coeff.discontinuities().size()) + " discontinuities";
    report.results.push_back(h);
  }
  {
    HypothesisResult h;
    h.id = "H7";
    const auto disc = coeff.discontinuities();
    const auto& kfn = coeff.function();
    for (std::size_t b = 0; b < disc.size(); ++b) {
      const double k_minus = kfn.left_limit(b);
      const double k_plus = kfn.right_limit(b);
      const double tol = 1e-13 * (1.0 + m.bounds().sup_fk * std::abs(k_plus - k_minus));
      // A violation needs some u1 with d(u1) < 0 and u2 with d(u2) > 0 but u1 >= u2.
      double largest_negative = -std::numeric_limits<double>::infinity();
      double smallest_positive = std::numeric_limits<double>::infinity();
      for (double u : us) {
        const double d = m.f(k_plus, u) - m.f(k_minus, u);
        if (d < -tol) largest_negative = std::max(largest_negative, u);
        if (d > tol) smallest_positive = std::min(smallest_positive, u);
      }
      if (largest_negative >= smallest_positive) {
        h.passed = false;
        const double gap = largest_negative - smallest_positive;
        if (gap >= h.worst) {
          h.worst = gap;
          h.witness = {largest_negative, smallest_positive};
        }
      }
    }
    h.note = disc.empty() ? "no coefficient discontinuities" : "witness holds the violating (u1, u2) pair";
    report.results.push_back(h);
  }
  return report;
}

double max_derivative_mismatch(const FluxModel& m, int samples) {
  const auto ks = sample_axis(m.k_lo(), m.k_hi(), samples);
  const auto us = sample_axis(m.u_lo(), m.u_hi(), samples);
  const double hu = fd_step(m.u_hi() - m.u_lo());
  const double hk = fd_step(m.k_hi() - m.k_lo());
  double worst = 0.0;
  auto compare = [&worst](double analytic, double fd) {
    worst = std::max(worst, std::abs(analytic - fd) / (1.0 + std::abs(analytic)));
  };
  for (double k : ks) {
    for (double u : us) {
      compare(m.f_u(k, u), (m.f(k, u + hu) - m.f(k, u - hu)) / (2 * hu));
      compare(m.f_k(k, u), (m.f(k + hk, u) - m.f(k - hk, u)) / (2 * hk));
      compare(m.f_uu(k, u), (m.f_u(k, u + hu) - m.f_u(k, u - hu)) / (2 * hu));
      compare(m.f_uk(k, u), (m.f_u(k + hk, u) - m.f_u(k - hk, u)) / (2 * hk));
    }
  }
  return worst;
}

}  // namespace dflux
