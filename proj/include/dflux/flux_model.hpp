#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dflux/piecewise.hpp"

namespace dflux {

enum class Convexity { StrictlyConvex, StrictlyConcave };

const char* to_string(Convexity c);

/// The (k, u) box on which a flux is considered: [k_lo, k_hi] x [u_lo, u_hi].
struct FluxBox {
  double k_lo = 0.0;
  double k_hi = 0.0;
  double u_lo = 0.0;
  double u_hi = 1.0;
};

/// Suprema of the flux derivatives over the box, plus gamma1 <= |f_uu| <= gamma2.
struct FluxBounds {
  double sup_fu = 0.0;
  double sup_fk = 0.0;
  double sup_fuk = 0.0;
  double gamma1 = 0.0;
  double gamma2 = 0.0;
};

using BivariateFn = std::function<double(double, double)>;

/// f(k, u) and its partial derivatives. Any derivative left empty is replaced
/// by a centered finite difference when the model is built.
struct FluxFunctions {
  BivariateFn f;
  BivariateFn f_u;
  BivariateFn f_k;
  BivariateFn f_uu;
  BivariateFn f_uk;
};

/// A scalar flux f(k, u) with the metadata the schemes and the diagnostics need.
/// Immutable after construction.
class FluxModel {
 public:
  /// Builds a model from user functions. Missing derivatives fall back to
  /// finite differences (flagged), convexity is read off the sign of f_uu at
  /// the box center, and bounds are sampled on a 1024 x 1024 grid unless
  /// `closed_form` is given.
  FluxModel(std::string name, FluxFunctions fns, FluxBox box, std::optional<FluxBounds> closed_form = std::nullopt,
            bool crossing_condition_declared = false);

  const std::string& name() const { return name_; }

  double f(double k, double u) const { return fns_.f(k, u); }
  double f_u(double k, double u) const { return fns_.f_u(k, u); }
  double f_k(double k, double u) const { return fns_.f_k(k, u); }
  double f_uu(double k, double u) const { return fns_.f_uu(k, u); }
  double f_uk(double k, double u) const { return fns_.f_uk(k, u); }

  const FluxBox& box() const { return box_; }
  double u_lo() const { return box_.u_lo; }
  double u_hi() const { return box_.u_hi; }
  double k_lo() const { return box_.k_lo; }
  double k_hi() const { return box_.k_hi; }
  /// max(|u_lo|, |u_hi|)
  double c_u0() const;

  Convexity convexity() const { return convexity_; }
  const FluxBounds& bounds() const { return bounds_; }
  bool has_closed_form_bounds() const { return closed_form_bounds_; }
  bool uses_finite_difference_derivatives() const { return fd_derivatives_; }
  bool crossing_condition_declared() const { return crossing_declared_; }

 private:
  std::string name_;
  FluxFunctions fns_;
  FluxBox box_;
  Convexity convexity_ = Convexity::StrictlyConvex;
  FluxBounds bounds_;
  bool closed_form_bounds_ = false;
  bool fd_derivatives_ = false;
  bool crossing_declared_ = false;
};

/// A flux model paired with the spatial coefficient it is driven by.
struct ModelSetup {
  FluxModel model;
  Coefficient coefficient;
};

/// f(k,u) = k u (1 - u) on u in [0,1], k = k_left for x < 0 and k_right for x >= 0.
ModelSetup builtin_multiplicative(double k_left, double k_right);

/// Two-flux model f(k,u) = k f_r(u) + (1 - k) f_l(u) with
/// f_l = 2u(1-u)/(1+u), f_r = 2u(1-u)/(2-u) and k the Heaviside step at x = 0.
ModelSetup builtin_two_flux_rational();

/// f(k,u) = k u^2 / 2 with a constant coefficient k > 0 on [u_lo, u_hi].
ModelSetup builtin_burgers_const_k(double k = 1.0, double u_lo = 0.0, double u_hi = 1.0);

/// Selects a builtin by name ("multiplicative", "two-flux-rational",
/// "burgers-const-k") with its numeric parameters in declaration order.
/// Missing parameters take the defaults of the corresponding builder.
ModelSetup make_model(const std::string& name, const std::vector<double>& params = {});

/// Grid-sampled suprema over the box; builtin models return their closed forms.
FluxBounds sup_bounds(const FluxModel& model, int samples);

struct HypothesisResult {
  std::string id;  // "H1", "H2", ...
  bool applicable = true;
  bool passed = true;
  double worst = 0.0;  // magnitude of the worst violation (or of the worst tested quantity)
  std::pair<double, double> witness{0.0, 0.0};
  std::string note;
};

struct HypothesisReport {
  std::vector<HypothesisResult> results;
  bool finite_difference_derivatives = false;

  const HypothesisResult& get(const std::string& id) const;
  bool all_passed() const;
};

HypothesisReport verify_hypotheses(const FluxModel& model, const Coefficient& coeff, int samples);

/// Worst relative mismatch |analytic - fd| / (1 + |analytic|) between the
/// model's derivatives and centered differences, over a samples x samples grid.
/// f_u and f_k are checked against differences of f; f_uu and f_uk against
/// differences of f_u.
double max_derivative_mismatch(const FluxModel& model, int samples);

}  // namespace dflux
