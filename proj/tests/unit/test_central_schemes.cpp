#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "dflux/central_schemes.hpp"
#include "dflux/verify_suites.hpp"

using namespace dflux;

namespace {

StaggeredState state_of(const Mesh& mesh, std::vector<double> values, const Coefficient& coeff,
                        Parity parity = Parity::Base) {
  StaggeredState s;
  s.mesh = mesh;
  s.parity = parity;
  s.step_index = parity == Parity::Base ? 0 : 1;
  s.values = std::move(values);
  s.kbar = cell_average_coefficient(mesh, coeff, parity);
  return s;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  REQUIRE(a.size() == b.size());
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

}  // namespace

TEST_CASE("CFL bounds per level") {
  const auto mult = builtin_multiplicative(3.0, 1.0);
  const auto burgers = builtin_burgers_const_k();
  CHECK(cfl_bound(mult.model, CflLevel::MaxPrinciple) == doctest::Approx((std::sqrt(2.0) - 1.0) / 2.0));
  CHECK(cfl_bound(mult.model, CflLevel::OneSided) == doctest::Approx(1.0 / 22500.0));
  CHECK(cfl_bound(burgers.model, CflLevel::OneSided) == doctest::Approx(1.0 / 7500.0));
  // chi = 228 + 13 + 174 + 12 for C = g1 = g2 = 1
  CHECK(cubic_estimate_chi(burgers.model) == doctest::Approx(427.0));
  CHECK(cfl_bound(burgers.model, CflLevel::CubicEstimate) == doctest::Approx(1.0 / 7500.0));
  // chi = 228 + 13 + 174*6 + 12*6 = 1357, 2/(6*1357) > 1/22500
  CHECK(cubic_estimate_chi(mult.model) == doctest::Approx(1357.0));
  CHECK(cfl_bound(mult.model, CflLevel::CubicEstimate) == doctest::Approx(1.0 / 22500.0));
  CHECK(std::isinf(cfl_bound(mult.model, CflLevel::Manual)));
}

TEST_CASE("CFL enforcement names both kappas") {
  const auto mult = builtin_multiplicative(3.0, 1.0);
  const SchemeConfig ok{Scheme::LaxFriedrichs, {}, 1.0 / 30.0};
  CHECK(enforce_cfl(mult.model, ok).kappa_used == doctest::Approx(0.1));
  const SchemeConfig bad{Scheme::LaxFriedrichs, {}, 0.1};
  try {
    enforce_cfl(mult.model, bad);
    FAIL("expected a CFL violation");
  } catch (const CflViolation& e) {
    CHECK(e.kappa_used() == doctest::Approx(0.3));
    CHECK(e.kappa_bound() == doctest::Approx((std::sqrt(2.0) - 1.0) / 2.0));
    const std::string msg = e.what();
    CHECK(msg.find("kappa_used") != std::string::npos);
    CHECK(msg.find("kappa_bound") != std::string::npos);
  }
  const SchemeConfig manual{Scheme::LaxFriedrichs, {}, 0.1, CflLevel::Manual};
  CHECK(enforce_cfl(mult.model, manual).ok);
  CHECK_THROWS_AS(enforce_cfl(mult.model, SchemeConfig{Scheme::LaxFriedrichs, {}, 0.0}), std::invalid_argument);
}

TEST_CASE("LF step on hand-checkable data") {
  const auto m = builtin_multiplicative(1.0, 1.0);  // f = u(1-u), k = 1
  const Mesh mesh = Mesh::uniform(0.0, 2.0, 2);
  const SchemeConfig cfg{Scheme::LaxFriedrichs, {}, 0.1};
  const auto out = lf_step(state_of(mesh, {0.2, 0.4}, m.coefficient), m.model, m.coefficient, cfg);
  REQUIRE(out.size() == 3);
  CHECK(out.values[1] == doctest::Approx(0.3 - 0.1 * (0.24 - 0.16)).epsilon(1e-15));
  CHECK(out.parity == Parity::Half);
  CHECK(out.step_index == 1);
  CHECK(out.time == doctest::Approx(0.1));

  const auto jump = lf_step(state_of(mesh, {0.0, 1.0}, m.coefficient), m.model, m.coefficient, cfg);
  CHECK(jump.values[1] == 0.5);

  const auto flat = lf_step(state_of(Mesh::uniform(0.0, 1.0, 5), std::vector<double>(5, 0.37), m.coefficient), m.model,
                            m.coefficient, cfg);
  for (double v : flat.values) CHECK(v == 0.37);
}

TEST_CASE("mid-time values") {
  const auto m = builtin_multiplicative(1.0, 1.0);
  const std::vector<double> u{0.2, 0.5}, k{1.0, 1.0}, s{0.1, 0.3};
  const auto mid = mid_time_values(u, k, s, m.model, 0.1);
  CHECK(mid[0] == doctest::Approx(0.2 - 0.05 * 0.6 * 0.1).epsilon(1e-15));
  CHECK(mid[1] == 0.5);
  const std::vector<double> zero{0.0, 0.0};
  CHECK(mid_time_values(u, k, zero, m.model, 0.1) == u);
}

TEST_CASE("NT step matches an independent evaluation on linear data") {
  const auto m = builtin_burgers_const_k();
  const double h = 0.05, lambda = 0.1;
  std::vector<double> u(10);
  for (int j = 0; j < 10; ++j) u[static_cast<std::size_t>(j)] = j * h;
  const Mesh mesh = Mesh::uniform(0.0, 1.0, 10);
  const SchemeConfig cfg{Scheme::NessyahuTadmor, {}, lambda};
  const auto r = nt_step(state_of(mesh, u, m.coefficient), m.model, m.coefficient, cfg);
  // Base output i lies between input cells i-1 and i; take the pair (4, 5).
  const double uj = u[4], uj1 = u[5];
  const double mj = uj - 0.5 * lambda * uj * h;
  const double mj1 = uj1 - 0.5 * lambda * uj1 * h;
  const double expected = 0.5 * (uj + uj1) - (h - h) / 8.0 - lambda * (mj1 * mj1 / 2.0 - mj * mj / 2.0);
  CHECK(r.state.values[5] == doctest::Approx(expected).epsilon(1e-15));
}

TEST_CASE("NT degenerates to LF without slopes") {
  const auto m = builtin_multiplicative(3.0, 1.0);
  const Mesh mesh = Mesh::uniform(-1.0, 1.0, 20);
  std::mt19937_64 rng(3);
  for (Parity p : {Parity::Base, Parity::Half}) {
    const auto s = state_of(mesh, random_bv_values(static_cast<std::size_t>(mesh.cell_count(p)), rng), m.coefficient, p);
    const SchemeConfig zero{Scheme::NessyahuTadmor, {LimiterKind::Zero}, 1.0 / 30.0};
    const auto nt = nt_step(s, m.model, m.coefficient, zero);
    CHECK(max_abs_diff(nt.state.values, lf_step(s, m.model, m.coefficient, zero).values) == 0.0);
    for (double a : nt.detail.corrections.a) CHECK(a == 0.0);
  }
}

TEST_CASE("predictor-corrector form equals the direct NT step") {
  const auto m = builtin_multiplicative(3.0, 1.0);
  const Mesh mesh = Mesh::uniform(-1.0, 1.0, 30);
  const SchemeConfig cfg{Scheme::NessyahuTadmor, {}, 1.0 / 30.0};
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const Parity p = trial % 2 == 0 ? Parity::Base : Parity::Half;
    const auto s = state_of(mesh, random_bv_values(static_cast<std::size_t>(mesh.cell_count(p)), rng), m.coefficient, p);
    const auto direct = nt_step(s, m.model, m.coefficient, cfg).state;
    const auto pc = predictor_corrector_step(s, m.model, m.coefficient, cfg);
    CHECK(max_abs_diff(direct.values, pc.values) <= 1e-12);
  }
}

TEST_CASE("constant states are preserved with zero corrections") {
  const auto m = builtin_burgers_const_k();
  const SchemeConfig cfg{Scheme::NessyahuTadmor, {}, 0.2};
  const auto r = nt_step(state_of(Mesh::uniform(0.0, 1.0, 8), std::vector<double>(8, 0.6), m.coefficient), m.model,
                         m.coefficient, cfg);
  for (double v : r.state.values) CHECK(v == 0.6);
  for (double a : r.detail.corrections.a) CHECK(a == 0.0);
}

TEST_CASE("staggered output sizes alternate") {
  const auto m = builtin_multiplicative(3.0, 1.0);
  const Mesh mesh = Mesh::uniform(-1.0, 1.0, 10);
  const SchemeConfig cfg{Scheme::NessyahuTadmor, {}, 1.0 / 30.0};
  const auto s0 = state_of(mesh, std::vector<double>(10, 0.15), m.coefficient);
  const auto s1 = advance(s0, m.model, m.coefficient, cfg).state;
  CHECK(s1.size() == 11);
  CHECK(s1.parity == Parity::Half);
  const auto s2 = advance(s1, m.model, m.coefficient, cfg).state;
  CHECK(s2.size() == 10);
  CHECK(s2.parity == Parity::Base);
  CHECK(s2.kbar == s0.kbar);
}

// Mass after one step from the boundary-flux balance of the absorbing ghosts.
TEST_CASE("mass balance of a single step") {
  const auto m = builtin_multiplicative(3.0, 1.0);
  const Mesh mesh = Mesh::uniform(-1.0, 1.0, 25);
  const double lambda = 1.0 / 30.0, dt = lambda * mesh.dx;
  std::mt19937_64 rng(5);
  for (Scheme scheme : {Scheme::LaxFriedrichs, Scheme::NessyahuTadmor}) {
    for (Parity p : {Parity::Base, Parity::Half}) {
      const auto s = state_of(mesh, random_bv_values(static_cast<std::size_t>(mesh.cell_count(p)), rng), m.coefficient, p);
      const SchemeConfig cfg{scheme, {}, lambda};
      const auto next = advance(s, m.model, m.coefficient, cfg).state;
      const double u_l = s.values.front(), u_r = s.values.back();
      const double f_l = m.model.f(s.kbar.front(), u_l), f_r = m.model.f(s.kbar.back(), u_r);
      const double edge = 0.5 * mesh.dx * (u_l + u_r);
      const double expected = total_mass(s) + (p == Parity::Base ? edge : -edge) - dt * (f_r - f_l);
      CHECK(total_mass(next) == doctest::Approx(expected).epsilon(1e-13));
    }
  }
}

TEST_CASE("constant coefficient and equal end states conserve mass over a step pair") {
  const auto m = builtin_burgers_const_k();
  const Mesh mesh = Mesh::uniform(0.0, 1.0, 40);
  std::vector<double> u(40, 0.3);
  for (std::size_t j = 10; j < 20; ++j) u[j] = 0.8;
  const SchemeConfig cfg{Scheme::NessyahuTadmor, {}, 0.1};
  auto s = state_of(mesh, u, m.coefficient);
  const double before = total_mass(s);
  s = advance(s, m.model, m.coefficient, cfg).state;
  s = advance(s, m.model, m.coefficient, cfg).state;
  CHECK(total_mass(s) == doctest::Approx(before).epsilon(1e-14));
}

TEST_CASE("LF commutes with reflection when the flux changes sign") {
  const auto m = builtin_multiplicative(3.0, 1.0);
  FluxFunctions neg{[&](double k, double u) { return -m.model.f(k, u); },
                    [&](double k, double u) { return -m.model.f_u(k, u); },
                    [&](double k, double u) { return -m.model.f_k(k, u); },
                    [&](double k, double u) { return -m.model.f_uu(k, u); },
                    [&](double k, double u) { return -m.model.f_uk(k, u); }};
  const FluxModel reflected_model("reflected", neg, m.model.box(), m.model.bounds());
  const Coefficient reflected_k(PiecewiseFunction::step(0.0, 1.0, 3.0));
  const Mesh mesh = Mesh::uniform(-1.0, 1.0, 20);
  std::mt19937_64 rng(9);
  const auto u = random_bv_values(20, rng);
  const SchemeConfig cfg{Scheme::LaxFriedrichs, {}, 1.0 / 30.0};

  auto s = state_of(mesh, u, m.coefficient);
  const auto out = lf_step(s, m.model, m.coefficient, cfg);
  StaggeredState r = s;
  r.values.assign(u.rbegin(), u.rend());
  r.kbar.assign(s.kbar.rbegin(), s.kbar.rend());
  const auto out_r = lf_step(r, reflected_model, reflected_k, cfg);
  REQUIRE(out.size() == out_r.size());
  for (std::size_t i = 0; i < out.size(); ++i) CHECK(out.values[i] == out_r.values[out.size() - 1 - i]);
}

TEST_CASE("LF update is affine in lambda") {
  const auto m = builtin_multiplicative(3.0, 1.0);
  const Mesh mesh = Mesh::uniform(-1.0, 1.0, 20);
  std::mt19937_64 rng(13);
  const auto s = state_of(mesh, random_bv_values(20, rng), m.coefficient);
  const auto full = lf_step(s, m.model, m.coefficient, SchemeConfig{Scheme::LaxFriedrichs, {}, 1.0 / 30.0});
  const auto half = lf_step(s, m.model, m.coefficient, SchemeConfig{Scheme::LaxFriedrichs, {}, 1.0 / 60.0});
  const auto none_ext = extend_absorbing(s, 1);
  for (std::size_t i = 0; i < full.size(); ++i) {
    const double avg = 0.5 * (none_ext.values[i] + none_ext.values[i + 1]);
    CHECK(half.values[i] - avg == doctest::Approx(0.5 * (full.values[i] - avg)).epsilon(1e-12));
  }
}

TEST_CASE("even step counts") {
  CHECK(even_step_count(0.8, 1.0 / 750.0) == 600);
  CHECK(even_step_count(1.0, 0.008) == 124);
  CHECK(even_step_count(2.0, 0.008) == 250);
  CHECK(even_step_count(0.0, 0.1) == 0);
  CHECK(even_step_count(0.29999999999, 0.1) == 2);
}

TEST_CASE("march snaps to even step counts") {
  const auto m1 = builtin_multiplicative(3.0, 1.0);
  const Mesh mesh1 = Mesh::with_spacing(-1.0, 1.0, 0.04);
  const auto init1 = make_initial_state(mesh1, PiecewiseFunction::constant(0.15), m1.coefficient);
  const SchemeConfig cfg1{Scheme::NessyahuTadmor, {}, (1.0 / 750.0) / 0.04};
  const auto r1 = march(init1, m1.model, m1.coefficient, cfg1, 0.8);
  CHECK(r1.steps == 600);
  CHECK(r1.state.parity == Parity::Base);
  CHECK_FALSE(r1.snapped);
  CHECK(r1.snapped_time == doctest::Approx(0.8));

  const auto m2 = builtin_two_flux_rational();
  const Mesh mesh2 = Mesh::with_spacing(-4.0, 4.0, 0.16);
  const auto init2 = make_initial_state(mesh2, PiecewiseFunction::step(0.0, 0.9, 0.2), m2.coefficient);
  const SchemeConfig cfg2{Scheme::NessyahuTadmor, {}, 0.05};
  const auto r2 = march(init2, m2.model, m2.coefficient, cfg2, 1.0);
  CHECK(r2.steps == 124);
  CHECK(r2.snapped);
  CHECK(r2.snapped_time == doctest::Approx(0.992));
  CHECK(r2.state.time == doctest::Approx(0.992));
  CHECK_FALSE(r2.warnings.empty());

  const auto r0 = march(init1, m1.model, m1.coefficient, cfg1, 0.0);
  CHECK(r0.steps == 0);
  CHECK(r0.state.values == init1.values);
}

TEST_CASE("march refuses bad input") {
  const auto m = builtin_multiplicative(3.0, 1.0);
  const Mesh mesh = Mesh::uniform(-1.0, 1.0, 10);
  const auto init = make_initial_state(mesh, PiecewiseFunction::constant(0.15), m.coefficient);
  CHECK_THROWS_AS(march(init, m.model, m.coefficient, SchemeConfig{Scheme::NessyahuTadmor, {}, 0.1}, 1.0), CflViolation);
  const auto manual = march(init, m.model, m.coefficient, SchemeConfig{Scheme::LaxFriedrichs, {}, 0.1, CflLevel::Manual}, 0.0);
  CHECK_FALSE(manual.warnings.empty());
  StaggeredState half = init;
  half.parity = Parity::Half;
  half.step_index = 1;
  half.values.push_back(0.15);
  half.kbar = cell_average_coefficient(mesh, m.coefficient, Parity::Half);
  CHECK_THROWS_AS(march(half, m.model, m.coefficient, SchemeConfig{Scheme::LaxFriedrichs, {}, 1.0 / 30.0}, 1.0),
                  std::invalid_argument);
}

TEST_CASE("march feeds every transition to observers") {
  struct Counter : StepObserver {
    long n = 0;
    bool consecutive = true;
    void on_step(const StepRecord& r) override {
      ++n;
      consecutive = consecutive && r.next.step_index == r.prev.step_index + 1;
    }
  } counter;
  const auto m = builtin_multiplicative(3.0, 1.0);
  const auto init = make_initial_state(Mesh::uniform(-1.0, 1.0, 10), PiecewiseFunction::constant(0.15), m.coefficient);
  StepObserver* obs[] = {&counter};
  const double times[] = {0.04, 0.08};
  const auto rs = march_to_times(init, m.model, m.coefficient, SchemeConfig{Scheme::NessyahuTadmor, {}, 1.0 / 30.0},
                                 times, obs);
  CHECK(rs.size() == 2);
  CHECK(counter.n == rs.back().steps);
  CHECK(counter.consecutive);
}
