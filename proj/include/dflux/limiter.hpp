#pragma once

#include <span>
#include <vector>

namespace dflux {

enum class LimiterKind { Zero, Minmod, MinmodModified };

const char* to_string(LimiterKind k);

/// Slope limiter selection. For MinmodModified the slope is additionally
/// capped by k_tilde * dx^alpha with alpha in (2/3, 1).
struct LimiterConfig {
  LimiterKind kind = LimiterKind::Minmod;
  double k_tilde = 1.0;
  double alpha = 0.75;

  /// Throws std::invalid_argument on k_tilde <= 0 or alpha outside (2/3, 1)
  /// when the modified limiter is selected.
  void validate() const;

  /// K~ = 2 C_u0 eps^-alpha: with this choice the modified limiter coincides
  /// with plain minmod on every mesh with dx >= eps.
  static LimiterConfig modified_default(double c_u0, double smallest_dx, double alpha = 0.75);
};

/// sgn(a1) min|ai| if all arguments share a strict sign, otherwise 0.
double minmod(std::span<const double> args);
double minmod(double a, double b, double c);
double minmod(double a, double b, double c, double d);

/// Limited slopes sigma_j (as jumps per cell, not per unit length) for every
/// interior entry 1..n-2. The two end entries are 0; callers pad with ghost
/// cells so that every slope they need is interior.
std::vector<double> slopes(std::span<const double> values, double dx, const LimiterConfig& cfg);

}  // namespace dflux
