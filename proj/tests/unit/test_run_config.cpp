#include "doctest.h"

#include <sstream>

#include "dflux/run_config.hpp"

using namespace dflux;

namespace {

const char* kExample1 = R"(# Example 1
model = multiplicative
model.k_left = 3
model.k_right = 1
domain.x_min = -1
domain.x_max = 1
dx = 2/50
dt = 1/750
initial.kind = constant
initial.value = 0.15
scheme = nt
limiter.kind = minmod
cfl_level = maxprinciple
t_end = 1.6, 0.8
)";

}  // namespace

TEST_CASE("parses a full config") {
  const RunConfig c = parse_run_config(kExample1);
  CHECK(c.model == "multiplicative");
  CHECK(c.model_params == std::vector<double>{3.0, 1.0});
  CHECK(c.dx == doctest::Approx(0.04));
  CHECK(c.lambda == doctest::Approx(1.0 / 30.0));
  CHECK(c.t_end == std::vector<double>{0.8, 1.6});
  CHECK(c.scheme == Scheme::NessyahuTadmor);
  CHECK(c.limiter.kind == LimiterKind::Minmod);
  CHECK(c.u0(0.0) == 0.15);
  CHECK_FALSE(c.output_dir.has_value());
  const auto spec = c.to_experiment();
  CHECK(spec.reference_dx == doctest::Approx(0.002));
  CHECK(spec.mesh(spec.dx).n_cells == 50);
}

TEST_CASE("config options") {
  const RunConfig c = parse_run_config(R"(
model = two-flux-rational
domain.x_min = -4
domain.x_max = 4
dx = 0.16
lambda = 0.05
initial.kind = step
initial.left = 0.9
initial.right = 0.2
scheme = lf
limiter.kind = minmod-modified
limiter.alpha = 0.8
t_end = 1
reference_dx = 0.004
output_dir = out/ex2
window_x = 0.5
diagnostics.entropy = false
)");
  CHECK(c.scheme == Scheme::LaxFriedrichs);
  CHECK(c.u0(-1.0) == 0.9);
  CHECK(c.u0(1.0) == 0.2);
  CHECK(*c.reference_dx == 0.004);
  CHECK(c.output_dir->string() == "out/ex2");
  CHECK(c.diagnostics.window_x == 0.5);
  CHECK_FALSE(c.diagnostics.entropy);
  CHECK(c.diagnostics.onesided);
  // modified limiter without K~: the default for the smallest mesh
  const auto cfg = c.scheme_config(0.01);
  CHECK(cfg.limiter.k_tilde == doctest::Approx(LimiterConfig::modified_default(1.0, 0.01, 0.8).k_tilde));
  CHECK(cfg.limiter.alpha == 0.8);
}

TEST_CASE("config errors") {
  auto without = [](const std::string& key) {
    std::string out;
    std::istringstream in(kExample1);
    std::string line;
    while (std::getline(in, line)) {
      if (line.rfind(key + " ", 0) != 0) out += line + "\n";
    }
    return out;
  };
  CHECK_THROWS_AS(parse_run_config(without("model")), ConfigError);
  CHECK_THROWS_AS(parse_run_config(without("dx")), ConfigError);
  CHECK_THROWS_AS(parse_run_config(without("dt")), ConfigError);
  CHECK_THROWS_AS(parse_run_config(without("t_end")), ConfigError);
  CHECK_THROWS_AS(parse_run_config(std::string(kExample1) + "lambda = 0.1\n"), ConfigError);
  CHECK_THROWS_AS(parse_run_config(std::string(kExample1) + "colour = blue\n"), ConfigError);
  CHECK_THROWS_AS(parse_run_config(std::string(kExample1) + "dx = 0.1\n"), ConfigError);
  CHECK_THROWS_AS(parse_run_config(std::string(kExample1) + "not a pair\n"), ConfigError);
  CHECK_THROWS_AS(parse_run_config(without("model") + "model = heat\n"), ConfigError);
  CHECK_THROWS_AS(parse_run_config(without("dx") + "dx = -1\n"), ConfigError);
  CHECK_THROWS_AS(parse_run_config(without("dx") + "dx = 1/0\n"), ConfigError);
  CHECK_THROWS_AS(parse_run_config(without("t_end") + "t_end = -1\n"), ConfigError);
  CHECK_THROWS_AS(parse_run_config(without("scheme") + "scheme = weno\n"), ConfigError);
  CHECK_THROWS_AS(parse_run_config(without("limiter.kind") + "limiter.alpha = 0.5\nlimiter.kind = modified\n"),
                  ConfigError);
  CHECK_THROWS_AS(load_run_config("/nonexistent/config.txt"), ConfigError);
}
