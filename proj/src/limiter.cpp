#include "dflux/limiter.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dflux {

const char* to_string(LimiterKind k) {
  switch (k) {
    case LimiterKind::Zero:
      return "zero";
    case LimiterKind::Minmod:
      return "minmod";
    case LimiterKind::MinmodModified:
      return "minmod-modified";
  }
  return "?";
}

void LimiterConfig::validate() const {
  if (kind != LimiterKind::MinmodModified) return;
  if (!(k_tilde > 0.0)) throw std::invalid_argument("limiter.k_tilde must be positive");
  if (!(alpha > 2.0 / 3.0 && alpha < 1.0)) throw std::invalid_argument("limiter.alpha must lie in (2/3, 1)");
}

LimiterConfig LimiterConfig::modified_default(double c_u0, double smallest_dx, double alpha) {
  return LimiterConfig{LimiterKind::MinmodModified, 2.0 * c_u0 * std::pow(smallest_dx, -alpha), alpha};
}

double minmod(std::span<const double> args) {
  if (args.empty()) throw std::invalid_argument("minmod of no arguments");
  const bool positive = args.front() > 0.0;
  const bool negative = args.front() < 0.0;
  if (!positive && !negative) return 0.0;
  double smallest = std::abs(args.front());
  for (double a : args.subspan(1)) {
    if (positive ? !(a > 0.0) : !(a < 0.0)) return 0.0;
    smallest = std::min(smallest, std::abs(a));
  }
  return positive ? smallest : -smallest;
}

double minmod(double a, double b, double c) {
  const double args[] = {a, b, c};
  return minmod(std::span<const double>(args));
}

double minmod(double a, double b, double c, double d) {
  const double args[] = {a, b, c, d};
  return minmod(std::span<const double>(args));
}

std::vector<double> slopes(std::span<const double> values, double dx, const LimiterConfig& cfg) {
  std::vector<double> sigma(values.size(), 0.0);
  if (cfg.kind == LimiterKind::Zero || values.size() < 3) return sigma;
  const double cap = cfg.kind == LimiterKind::MinmodModified ? cfg.k_tilde * std::pow(dx, cfg.alpha) : 0.0;
  for (std::size_t j = 1; j + 1 < values.size(); ++j) {
    const double forward = values[j + 1] - values[j];
    const double backward = values[j] - values[j - 1];
    const double central = 0.5 * (values[j + 1] - values[j - 1]);
    if (cfg.kind == LimiterKind::MinmodModified) {
      const double s = forward > 0.0 ? 1.0 : (forward < 0.0 ? -1.0 : 0.0);
      sigma[j] = minmod(forward, central, backward, s * cap);
    } else {
      sigma[j] = minmod(forward, central, backward);
    }
  }
  return sigma;
}

}  // namespace dflux
