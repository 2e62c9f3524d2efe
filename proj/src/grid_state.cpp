#include "dflux/grid_state.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include <fmt/format.h>

namespace dflux {

Mesh Mesh::uniform(double x_min, double x_max, int n_cells) {
  if (n_cells < 1) throw std::invalid_argument("mesh needs at least one cell");
  if (!(x_max > x_min)) throw std::invalid_argument("mesh needs x_max > x_min");
  return Mesh{x_min, x_max, (x_max - x_min) / n_cells, n_cells};
}

Mesh Mesh::with_spacing(double x_min, double x_max, double dx) {
  if (!(dx > 0.0)) throw std::invalid_argument("mesh spacing must be positive");
  const double ratio = (x_max - x_min) / dx;
  const double n = std::round(ratio);
  if (n < 1.0 || std::abs(ratio - n) > 1e-9 * n) {
    throw std::invalid_argument(fmt::format("dx = {} does not divide the domain [{}, {}]", dx, x_min, x_max));
  }
  return uniform(x_min, x_max, static_cast<int>(n));
}

double Mesh::cell_lo(Parity p, int i) const {
  return p == Parity::Base ? x_min + i * dx : x_min + (i - 0.5) * dx;
}

void StaggeredState::validate() const {
  if (values.size() != kbar.size()) throw std::logic_error("state values and kbar differ in length");
  if (values.size() != static_cast<std::size_t>(mesh.cell_count(parity))) {
    throw std::logic_error("state length does not match its mesh and parity");
  }
  if ((step_index % 2 == 0) != (parity == Parity::Base)) {
    throw std::logic_error("parity does not match step index");
  }
}

std::vector<double> cell_average_initial(const Mesh& mesh, const PiecewiseFunction& u0, int quad_points) {
  std::vector<double> out(static_cast<std::size_t>(mesh.n_cells));
  for (int j = 0; j < mesh.n_cells; ++j) {
    out[static_cast<std::size_t>(j)] =
        u0.average(mesh.cell_lo(Parity::Base, j), mesh.cell_hi(Parity::Base, j), quad_points);
  }
  return out;
}

std::vector<double> cell_average_initial(const Mesh& mesh, const std::function<double(double)>& u0,
                                         int quad_points) {
  return cell_average_initial(mesh, PiecewiseFunction::smooth(u0), quad_points);
}

std::vector<double> cell_average_coefficient(const Mesh& mesh, const Coefficient& coeff, Parity parity,
                                             int quad_points) {
  const int n = mesh.cell_count(parity);
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] =
        coeff.function().average(mesh.cell_lo(parity, i), mesh.cell_hi(parity, i), quad_points);
  }
  return out;
}

StaggeredState make_initial_state(const Mesh& mesh, const PiecewiseFunction& u0, const Coefficient& coeff,
                                  int quad_points) {
  StaggeredState s;
  s.mesh = mesh;
  s.values = cell_average_initial(mesh, u0, quad_points);
  s.kbar = cell_average_coefficient(mesh, coeff, Parity::Base, quad_points);
  return s;
}

ExtendedArrays extend_absorbing(const StaggeredState& state, int ghost) {
  if (state.values.empty()) throw std::invalid_argument("cannot extend an empty state");
  if (ghost < 1) throw std::invalid_argument("ghost width must be positive");
  auto pad = [ghost](const std::vector<double>& v) {
    std::vector<double> out;
    out.reserve(v.size() + 2 * static_cast<std::size_t>(ghost));
    out.insert(out.end(), static_cast<std::size_t>(ghost), v.front());
    out.insert(out.end(), v.begin(), v.end());
    out.insert(out.end(), static_cast<std::size_t>(ghost), v.back());
    return out;
  };
  return ExtendedArrays{pad(state.values), pad(state.kbar), ghost};
}

double total_mass(const StaggeredState& state) {
  double sum = 0.0;
  for (double v : state.values) sum += v;
  return sum * state.dx();
}

void write_state_csv(std::ostream& out, const StaggeredState& state) {
  out << "x,u\n";
  for (std::size_t i = 0; i < state.values.size(); ++i) {
    out << fmt::format("{:.16e},{:.16e}\n", state.mesh.cell_center(state.parity, static_cast<int>(i)),
                       state.values[i]);
  }
}

}  // namespace dflux
