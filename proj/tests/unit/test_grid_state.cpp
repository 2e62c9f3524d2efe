#include "doctest.h"

#include <sstream>
#include <string>

#include "dflux/flux_model.hpp"
#include "dflux/grid_state.hpp"

using namespace dflux;

TEST_CASE("mesh geometry for both parities") {
  const Mesh m = Mesh::uniform(-1.0, 1.0, 50);
  CHECK(m.dx == doctest::Approx(0.04));
  CHECK(m.cell_count(Parity::Base) == 50);
  CHECK(m.cell_count(Parity::Half) == 51);
  CHECK(m.cell_lo(Parity::Base, 0) == doctest::Approx(-1.0));
  CHECK(m.cell_lo(Parity::Half, 0) == doctest::Approx(-1.02));
  CHECK(m.cell_lo(Parity::Half, 25) == doctest::Approx(-0.02));
  CHECK(m.cell_hi(Parity::Half, 25) == doctest::Approx(0.02));
  CHECK(m.cell_center(Parity::Base, 49) == doctest::Approx(0.98));
  CHECK(m.interface(Parity::Base, 24) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("mesh construction from a spacing") {
  CHECK(Mesh::with_spacing(-4.0, 4.0, 0.16).n_cells == 50);
  CHECK(Mesh::with_spacing(-1.0, 1.0, 2.0 / 1000.0).n_cells == 1000);
  CHECK_THROWS(Mesh::with_spacing(0.0, 1.0, 0.3));
  CHECK_THROWS(Mesh::uniform(1.0, 0.0, 4));
  CHECK_THROWS(Mesh::uniform(0.0, 1.0, 0));
}

TEST_CASE("initial data averages") {
  const Mesh m = Mesh::uniform(-1.0, 1.0, 50);
  for (double v : cell_average_initial(m, PiecewiseFunction::constant(0.15))) CHECK(v == 0.15);

  const Mesh m2 = Mesh::uniform(-4.0, 4.0, 50);
  const auto step = cell_average_initial(m2, PiecewiseFunction::step(0.0, 0.9, 0.2));
  CHECK(step[24] == 0.9);
  CHECK(step[25] == 0.2);
  // a mesh of [-4.08, 4.08) whose middle cell straddles the jump symmetrically
  const Mesh m3 = Mesh::uniform(-4.08, 4.08, 51);
  CHECK(cell_average_initial(m3, PiecewiseFunction::step(0.0, 0.9, 0.2))[25] == doctest::Approx(0.55));

  const auto lin = cell_average_initial(Mesh::uniform(0.0, 1.0, 1), [](double x) { return x; });
  CHECK(lin[0] == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("coefficient averages on both parities") {
  const Coefficient k(PiecewiseFunction::step(0.0, 3.0, 1.0));
  const Mesh m = Mesh::uniform(-1.0, 1.0, 50);
  const auto base = cell_average_coefficient(m, k, Parity::Base);
  CHECK(base[24] == 3.0);  // [-0.04, 0)
  CHECK(base[25] == 1.0);  // [0, 0.04)
  const auto half = cell_average_coefficient(m, k, Parity::Half);
  REQUIRE(half.size() == 51);
  CHECK(half[25] == doctest::Approx(2.0).epsilon(1e-15));  // [-0.02, 0.02)
  CHECK(half[0] == 3.0);
  CHECK(half[50] == 1.0);

  const auto c = Coefficient::constant(1.7);
  for (Parity p : {Parity::Base, Parity::Half}) {
    for (double v : cell_average_coefficient(m, c, p)) CHECK(v == 1.7);
  }
}

TEST_CASE("absorbing extension copies the edge cells") {
  StaggeredState s;
  s.mesh = Mesh::uniform(0.0, 3.0, 3);
  s.values = {0.1, 0.2, 0.3};
  s.kbar = {3.0, 3.0, 1.0};
  const auto e = extend_absorbing(s, 2);
  CHECK(e.values == std::vector<double>{0.1, 0.1, 0.1, 0.2, 0.3, 0.3, 0.3});
  CHECK(e.kbar == std::vector<double>{3, 3, 3, 3, 1, 1, 1});
  CHECK(e.ghost == 2);
  CHECK_THROWS(extend_absorbing(s, 0));
}

TEST_CASE("state validation") {
  const ModelSetup m = builtin_multiplicative(3.0, 1.0);
  StaggeredState s = make_initial_state(Mesh::uniform(-1.0, 1.0, 10), PiecewiseFunction::constant(0.5), m.coefficient);
  CHECK_NOTHROW(s.validate());
  CHECK(total_mass(s) == doctest::Approx(1.0));
  s.step_index = 1;
  CHECK_THROWS(s.validate());
  s.step_index = 0;
  s.kbar.pop_back();
  CHECK_THROWS(s.validate());
}

TEST_CASE("state csv has a header and round-trip precision") {
  StaggeredState s;
  s.mesh = Mesh::uniform(0.0, 1.0, 2);
  s.values = {0.1, 1.0 / 3.0};
  s.kbar = {1.0, 1.0};
  std::ostringstream out;
  write_state_csv(out, s);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "x,u");
  std::getline(in, line);
  CHECK(line == "2.5000000000000000e-01,1.0000000000000001e-01");
  std::getline(in, line);
  const double u = std::stod(line.substr(line.find(',') + 1));
  CHECK(u == 1.0 / 3.0);
}
