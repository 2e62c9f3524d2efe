#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dflux/experiments.hpp"

namespace dflux {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A run described by a flat `key = value` file. Recognised keys:
///
///   model                 multiplicative | two-flux-rational | burgers-const-k
///   model.k_left, model.k_right         (multiplicative)
///   model.k, model.u_lo, model.u_hi     (burgers-const-k)
///   domain.x_min, domain.x_max, dx
///   lambda | dt           exactly one
///   initial.kind          constant | step
///   initial.value                        (constant)
///   initial.x0, initial.left, initial.right   (step; left for x < x0)
///   scheme                lf | nt
///   limiter.kind          zero | minmod | minmod-modified
///   limiter.k_tilde, limiter.alpha
///   cfl_level             maxprinciple | onesided | cubic | manual
///   t_end                 comma-separated output times
///   reference_dx          fine LF mesh for `study`
///   output_dir
///   window_x              cubic accumulator window |x| <= X
///   diagnostics.{bounds,onesided,cubic,quadratic,entropy,correction}  true | false
///
/// Blank lines and lines starting with '#' are ignored.
struct RunConfig {
  std::string model;
  std::vector<double> model_params;
  double x_min = -1.0;
  double x_max = 1.0;
  double dx = 0.0;
  double lambda = 0.0;
  PiecewiseFunction u0 = PiecewiseFunction::constant(0.0);
  Scheme scheme = Scheme::NessyahuTadmor;
  LimiterConfig limiter;
  bool k_tilde_given = false;
  CflLevel cfl_level = CflLevel::MaxPrinciple;
  std::vector<double> t_end;
  std::optional<double> reference_dx;
  std::optional<std::filesystem::path> output_dir;
  DiagnosticsOptions diagnostics;

  /// The run as an experiment spec (reference_dx defaults to dx / 20).
  ExperimentSpec to_experiment() const;
  SchemeConfig scheme_config(double smallest_dx) const;
};

RunConfig parse_run_config(const std::string& text);
RunConfig load_run_config(const std::filesystem::path& path);

Scheme parse_scheme(const std::string& s);
LimiterKind parse_limiter_kind(const std::string& s);
CflLevel parse_cfl_level(const std::string& s);

}  // namespace dflux
