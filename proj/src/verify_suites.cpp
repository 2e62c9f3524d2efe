#include "dflux/verify_suites.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <ostream>
#include <stdexcept>

#include <fmt/format.h>

#include "dflux/experiments.hpp"

namespace dflux {

std::vector<double> random_bv_values(std::size_t n, std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> value(lo, hi);
  std::uniform_int_distribution<int> length(1, 8);
  std::uniform_int_distribution<int> kind(0, 2);
  std::vector<double> out;
  out.reserve(n);
  while (out.size() < n) {
    const auto len = static_cast<std::size_t>(length(rng));
    const int k = kind(rng);
    const double a = value(rng);
    const double b = value(rng);
    for (std::size_t i = 0; i < len && out.size() < n; ++i) {
      if (k == 0) {
        out.push_back(a);
      } else if (k == 1) {
        out.push_back(a + (b - a) * static_cast<double>(i) / static_cast<double>(len));
      } else {
        out.push_back(value(rng));
      }
    }
  }
  return out;
}

namespace {

// A scenario returns its margin: bound (with tolerance) minus the measured
// quantity. It passes when the margin is non-negative.
struct Scenario {
  std::string id;
  std::function<double()> margin;
};

StaggeredState state_from_values(const Mesh& mesh, std::vector<double> values, const Coefficient& coeff,
                                 Parity parity) {
  StaggeredState s;
  s.mesh = mesh;
  s.parity = parity;
  s.step_index = parity == Parity::Base ? 0 : 1;
  s.values = std::move(values);
  s.kbar = cell_average_coefficient(mesh, coeff, parity);
  return s;
}

std::vector<Scenario> identity_suite() {
  std::vector<Scenario> out;
  out.push_back({"identity/predictor-corrector", [] {
                   const ModelSetup m = builtin_multiplicative(3.0, 1.0);
                   const Mesh mesh = Mesh::uniform(-1.0, 1.0, 50);
                   const SchemeConfig cfg{Scheme::NessyahuTadmor, {}, 1.0 / 30.0, CflLevel::MaxPrinciple};
                   double worst = 0.0;
                   for (std::uint64_t seed = 0; seed < 50; ++seed) {
                     std::mt19937_64 rng(seed);
                     const Parity p = seed % 2 == 0 ? Parity::Base : Parity::Half;
                     const auto s = state_from_values(
                         mesh, random_bv_values(static_cast<std::size_t>(mesh.cell_count(p)), rng), m.coefficient, p);
                     const auto direct = nt_step(s, m.model, m.coefficient, cfg).state;
                     const auto pc = predictor_corrector_step(s, m.model, m.coefficient, cfg);
                     for (std::size_t i = 0; i < direct.size(); ++i) {
                       worst = std::max(worst, std::abs(direct.values[i] - pc.values[i]));
                     }
                   }
                   return 1e-12 - worst;
                 }});
  out.push_back({"identity/zero-limiter-is-lf", [] {
                   const ModelSetup m = builtin_multiplicative(3.0, 1.0);
                   const Mesh mesh = Mesh::uniform(-1.0, 1.0, 50);
                   SchemeConfig cfg{Scheme::NessyahuTadmor, {LimiterKind::Zero}, 1.0 / 30.0, CflLevel::MaxPrinciple};
                   double worst = 0.0;
                   for (std::uint64_t seed = 0; seed < 50; ++seed) {
                     std::mt19937_64 rng(seed);
                     const auto s = state_from_values(mesh, random_bv_values(50, rng), m.coefficient, Parity::Base);
                     const auto nt = nt_step(s, m.model, m.coefficient, cfg).state;
                     const auto lf = lf_step(s, m.model, m.coefficient, cfg);
                     for (std::size_t i = 0; i < nt.size(); ++i) worst = std::max(worst, std::abs(nt.values[i] - lf.values[i]));
                   }
                   return 1e-15 - worst;
                 }});
  return out;
}

std::vector<Scenario> experiment_run_suite(bool entropy) {
  std::vector<Scenario> out;
  for (int ex = 1; ex <= 2; ++ex) {
    for (Scheme scheme : {Scheme::LaxFriedrichs, Scheme::NessyahuTadmor}) {
      if (entropy && scheme != Scheme::LaxFriedrichs) continue;
      const std::string id = fmt::format("{}/example-{}/{}", entropy ? "entropy" : "maxprinciple", ex, to_string(scheme));
      out.push_back({id, [ex, scheme, entropy] {
                       const ExperimentSpec spec = ex == 1 ? example_1() : example_2();
                       const ModelSetup m = spec.setup();
                       const SchemeConfig cfg = experiment_config(spec, scheme);
                       DiagnosticsOptions opt;
                       opt.onesided = opt.cubic = opt.quadratic = opt.correction = false;
                       opt.entropy = entropy;
                       opt.bounds = !entropy;
                       DiagnosticsObserver obs(m.model, m.coefficient, cfg, opt);
                       StepObserver* observers[] = {&obs};
                       const StaggeredState init = make_initial_state(spec.mesh(spec.dx), spec.u0, m.coefficient);
                       obs.start(init);
                       march(init, m.model, m.coefficient, cfg, spec.times.back(), observers);
                       const auto& r = obs.report();
                       if (entropy) return kDiagnosticTolerance - r.entropy_max_residual;
                       return std::min(r.u_min - (m.model.u_lo() - kDiagnosticTolerance),
                                       (m.model.u_hi() + kDiagnosticTolerance) - r.u_max);
                     }});
    }
  }
  return out;
}

// Randomized NT runs on a small mesh of [0, 1] under a given CFL level.
double randomized_margin(const ModelSetup& m, CflLevel level, int states, int steps, bool nu) {
  const double lambda = cfl_bound(m.model, level) / m.model.bounds().sup_fu;
  const SchemeConfig cfg{Scheme::NessyahuTadmor, {}, lambda, level};
  const Mesh mesh = Mesh::uniform(0.0, 1.0, 100);
  double worst = std::numeric_limits<double>::infinity();
  for (int seed = 0; seed < states; ++seed) {
    std::mt19937_64 rng(static_cast<std::uint64_t>(1000 + seed));
    StaggeredState s = state_from_values(mesh, random_bv_values(100, rng, m.model.u_lo(), m.model.u_hi()),
                                         m.coefficient, Parity::Base);
    for (int n = 0; n < steps; ++n) {
      StepResult r = nt_step(s, m.model, m.coefficient, cfg);
      if (nu) {
        const std::size_t g = 2;
        const std::span<const double> sigma(r.detail.slopes.data() + g, s.size());
        for (double v : nu_coefficient(s.values, s.kbar, sigma, m.model, lambda)) {
          worst = std::min(worst, v + kDiagnosticTolerance);
        }
      } else {
        worst = std::min(worst, onesided_check(s, r.state, m.model, m.coefficient, lambda).margin() + kDiagnosticTolerance);
      }
      s = std::move(r.state);
    }
  }
  return worst;
}

std::vector<Scenario> onesided_suite() {
  return {{"onesided/burgers-const-k", [] {
             return randomized_margin(builtin_burgers_const_k(1.0, 0.0, 1.0), CflLevel::OneSided, 10, 100, false);
           }}};
}

std::vector<Scenario> nu_suite() {
  return {{"nu/burgers-const-k",
           [] { return randomized_margin(builtin_burgers_const_k(1.0, 0.0, 1.0), CflLevel::CubicEstimate, 10, 100, true); }},
          {"nu/multiplicative-constant-k",
           [] { return randomized_margin(builtin_multiplicative(2.0, 2.0), CflLevel::CubicEstimate, 5, 100, true); }}};
}

std::vector<Scenario> correction_suite() {
  std::vector<Scenario> out;
  for (double dx : {1e-2, 1e-3, 1e-4}) {
    out.push_back({fmt::format("correction/dx={:g}", dx), [dx] {
                     const ModelSetup m = builtin_multiplicative(3.0, 1.0);
                     const SchemeConfig cfg{Scheme::NessyahuTadmor, {LimiterKind::MinmodModified, 1.0, 0.75}, 1.0 / 30.0,
                                            CflLevel::MaxPrinciple};
                     const Mesh mesh = Mesh::with_spacing(-1.0, 1.0, dx);
                     std::mt19937_64 rng(7);
                     // unit jumps between plateaus at 0 and 1
                     std::vector<double> values(static_cast<std::size_t>(mesh.n_cells));
                     std::bernoulli_distribution coin(0.5);
                     for (std::size_t i = 0; i < values.size(); i += 4) {
                       const double v = coin(rng) ? 1.0 : 0.0;
                       for (std::size_t j = i; j < std::min(values.size(), i + 4); ++j) values[j] = v;
                     }
                     StaggeredState s = state_from_values(mesh, std::move(values), m.coefficient, Parity::Base);
                     double worst = std::numeric_limits<double>::infinity();
                     for (int n = 0; n < 10; ++n) {
                       StepResult r = nt_step(s, m.model, m.coefficient, cfg);
                       const auto c = correction_bound_check(r.detail.corrections, cfg, m.model, dx);
                       worst = std::min(worst, c->bound + kDiagnosticTolerance - c->max_a);
                       s = std::move(r.state);
                     }
                     return worst;
                   }});
  }
  return out;
}

std::vector<Scenario> suite(const std::string& name) {
  if (name == "identity") return identity_suite();
  if (name == "maxprinciple") return experiment_run_suite(false);
  if (name == "entropy") return experiment_run_suite(true);
  if (name == "onesided") return onesided_suite();
  if (name == "nu") return nu_suite();
  if (name == "correction") return correction_suite();
  throw std::invalid_argument("unknown verify suite '" + name + "'");
}

}  // namespace

const std::vector<std::string>& verify_suite_names() {
  static const std::vector<std::string> names{"maxprinciple", "onesided", "nu", "entropy", "correction", "identity"};
  return names;
}

VerifyOutcome run_verify_suite(const std::string& name, std::ostream& log) {
  VerifyOutcome outcome;
  outcome.worst_margin = std::numeric_limits<double>::infinity();
  for (const auto& sc : suite(name)) {
    const double margin = sc.margin();
    const bool ok = margin >= 0.0;
    log << fmt::format("{:<4} {:<40} margin = {:.6e}\n", ok ? "ok" : "FAIL", sc.id, margin);
    outcome.worst_margin = std::min(outcome.worst_margin, margin);
    if (!ok && outcome.passed) {
      outcome.passed = false;
      outcome.failing_scenario = sc.id;
    }
  }
  return outcome;
}

}  // namespace dflux
