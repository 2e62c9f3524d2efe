#include "dflux/run_config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include <fmt/format.h>

namespace dflux {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Accepts plain decimals and simple fractions such as 1/750.
double parse_number(const std::string& key, const std::string& text) {
  const auto slash = text.find('/');
  auto parse_plain = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(trim(s), &used);
    } catch (const std::exception&) {
      throw ConfigError(fmt::format("{}: '{}' is not a number", key, text));
    }
    if (used != trim(s).size() || !std::isfinite(v)) throw ConfigError(fmt::format("{}: '{}' is not a number", key, text));
    return v;
  };
  if (slash == std::string::npos) return parse_plain(text);
  const double den = parse_plain(text.substr(slash + 1));
  if (den == 0.0) throw ConfigError(fmt::format("{}: division by zero", key));
  return parse_plain(text.substr(0, slash)) / den;
}

bool parse_bool(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
  if (text == "false" || text == "0" || text == "no" || text == "off") return false;
  throw ConfigError(fmt::format("{}: '{}' is not a boolean", key, text));
}

class KeyValues {
 public:
  explicit KeyValues(std::map<std::string, std::string> kv) : kv_(std::move(kv)) {}

  std::optional<std::string> take(const std::string& key) {
    auto it = kv_.find(key);
    if (it == kv_.end()) return std::nullopt;
    std::string v = it->second;
    kv_.erase(it);
    return v;
  }
  std::optional<double> number(const std::string& key) {
    auto v = take(key);
    if (!v) return std::nullopt;
    return parse_number(key, *v);
  }
  double number_or(const std::string& key, double fallback) { return number(key).value_or(fallback); }
  double required_number(const std::string& key) {
    auto v = number(key);
    if (!v) throw ConfigError("missing required key '" + key + "'");
    return *v;
  }
  void expect_empty() const {
    if (!kv_.empty()) throw ConfigError("unknown key '" + kv_.begin()->first + "'");
  }

 private:
  std::map<std::string, std::string> kv_;
};

}  // namespace

Scheme parse_scheme(const std::string& s) {
  if (s == "lf" || s == "lax-friedrichs") return Scheme::LaxFriedrichs;
  if (s == "nt" || s == "nessyahu-tadmor" || s == "so") return Scheme::NessyahuTadmor;
  throw ConfigError("unknown scheme '" + s + "'");
}

LimiterKind parse_limiter_kind(const std::string& s) {
  if (s == "zero") return LimiterKind::Zero;
  if (s == "minmod") return LimiterKind::Minmod;
  if (s == "minmod-modified" || s == "modified") return LimiterKind::MinmodModified;
  throw ConfigError("unknown limiter kind '" + s + "'");
}

CflLevel parse_cfl_level(const std::string& s) {
  if (s == "maxprinciple") return CflLevel::MaxPrinciple;
  if (s == "onesided") return CflLevel::OneSided;
  if (s == "cubic" || s == "cubicestimate") return CflLevel::CubicEstimate;
  if (s == "manual") return CflLevel::Manual;
  throw ConfigError("unknown cfl_level '" + s + "'");
}

RunConfig parse_run_config(const std::string& text) {
  std::map<std::string, std::string> raw;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw ConfigError(fmt::format("line {}: expected key = value", line_no));
    const std::string key = trim(t.substr(0, eq));
    if (key.empty()) throw ConfigError(fmt::format("line {}: empty key", line_no));
    if (!raw.emplace(key, trim(t.substr(eq + 1))).second) {
      throw ConfigError(fmt::format("line {}: duplicate key '{}'", line_no, key));
    }
  }
  KeyValues kv(std::move(raw));
  RunConfig c;

  const auto model = kv.take("model");
  if (!model || model->empty()) throw ConfigError("missing required key 'model'");
  c.model = *model;
  if (c.model == "multiplicative") {
    c.model_params = {kv.number_or("model.k_left", 3.0), kv.number_or("model.k_right", 1.0)};
  } else if (c.model == "burgers-const-k") {
    c.model_params = {kv.number_or("model.k", 1.0), kv.number_or("model.u_lo", 0.0), kv.number_or("model.u_hi", 1.0)};
  } else if (c.model != "two-flux-rational") {
    throw ConfigError("unknown model '" + c.model + "'");
  }

  c.x_min = kv.number_or("domain.x_min", c.x_min);
  c.x_max = kv.number_or("domain.x_max", c.x_max);
  c.dx = kv.required_number("dx");
  if (!(c.dx > 0.0)) throw ConfigError("dx must be positive");
  if (!(c.x_max > c.x_min)) throw ConfigError("domain.x_max must exceed domain.x_min");

  const auto lambda = kv.number("lambda");
  const auto dt = kv.number("dt");
  if (lambda.has_value() == dt.has_value()) throw ConfigError("exactly one of 'lambda' and 'dt' must be given");
  c.lambda = lambda ? *lambda : *dt / c.dx;
  if (!(c.lambda > 0.0)) throw ConfigError("lambda must be positive");

  const std::string initial = kv.take("initial.kind").value_or("constant");
  if (initial == "constant") {
    c.u0 = PiecewiseFunction::constant(kv.required_number("initial.value"));
  } else if (initial == "step") {
    c.u0 = PiecewiseFunction::step(kv.number_or("initial.x0", 0.0), kv.required_number("initial.left"),
                                   kv.required_number("initial.right"));
  } else {
    throw ConfigError("unknown initial.kind '" + initial + "'");
  }

  if (auto s = kv.take("scheme")) c.scheme = parse_scheme(*s);
  if (auto s = kv.take("limiter.kind")) c.limiter.kind = parse_limiter_kind(*s);
  if (auto v = kv.number("limiter.k_tilde")) {
    c.limiter.k_tilde = *v;
    c.k_tilde_given = true;
  }
  c.limiter.alpha = kv.number_or("limiter.alpha", c.limiter.alpha);
  if (auto s = kv.take("cfl_level")) c.cfl_level = parse_cfl_level(*s);

  const auto t_end = kv.take("t_end");
  if (!t_end) throw ConfigError("missing required key 't_end'");
  std::stringstream ts(*t_end);
  std::string item;
  while (std::getline(ts, item, ',')) {
    if (trim(item).empty()) continue;
    const double t = parse_number("t_end", item);
    if (t < 0.0) throw ConfigError("t_end entries must be non-negative");
    c.t_end.push_back(t);
  }
  if (c.t_end.empty()) throw ConfigError("t_end lists no times");
  std::sort(c.t_end.begin(), c.t_end.end());

  c.reference_dx = kv.number("reference_dx");
  if (auto o = kv.take("output_dir")) c.output_dir = *o;
  c.diagnostics.window_x = kv.number_or("window_x", c.diagnostics.window_x);
  const std::pair<const char*, bool DiagnosticsOptions::*> toggles[] = {
      {"diagnostics.bounds", &DiagnosticsOptions::bounds},         {"diagnostics.onesided", &DiagnosticsOptions::onesided},
      {"diagnostics.cubic", &DiagnosticsOptions::cubic},           {"diagnostics.quadratic", &DiagnosticsOptions::quadratic},
      {"diagnostics.entropy", &DiagnosticsOptions::entropy},       {"diagnostics.correction", &DiagnosticsOptions::correction}};
  for (const auto& [key, member] : toggles) {
    if (auto v = kv.take(key)) c.diagnostics.*member = parse_bool(key, *v);
  }

  kv.expect_empty();
  try {
    c.limiter.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return c;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_run_config(ss.str());
}

ExperimentSpec RunConfig::to_experiment() const {
  ExperimentSpec s;
  s.name = "run";
  s.model_name = model;
  s.model_params = model_params;
  s.x_min = x_min;
  s.x_max = x_max;
  s.dx = dx;
  s.lambda = lambda;
  s.u0 = u0;
  s.times = t_end;
  s.reference_dx = reference_dx.value_or(dx / 20.0);
  return s;
}

SchemeConfig RunConfig::scheme_config(double smallest_dx) const {
  SchemeConfig cfg{scheme, limiter, lambda, cfl_level};
  if (limiter.kind == LimiterKind::MinmodModified && !k_tilde_given) {
    cfg.limiter = LimiterConfig::modified_default(make_model(model, model_params).model.c_u0(), smallest_dx,
                                                  limiter.alpha);
  }
  return cfg;
}

}  // namespace dflux
