#pragma once

#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "dflux/piecewise.hpp"

namespace dflux {

/// Base cells are centered at x_j, Half cells at the interfaces x_{j+1/2}.
enum class Parity { Base, Half };

inline Parity flip(Parity p) { return p == Parity::Base ? Parity::Half : Parity::Base; }

/// Uniform mesh of n_cells Base cells on [x_min, x_max].
///
/// Base cell j is [x_min + j dx, x_min + (j+1) dx), j = 0..n-1.
/// Half cell i is [x_min + (i - 1/2) dx, x_min + (i + 1/2) dx), i = 0..n, so
/// the Half grid has one more cell and overhangs the domain by dx/2 per side.
struct Mesh {
  double x_min = 0.0;
  double x_max = 1.0;
  double dx = 1.0;
  int n_cells = 1;

  static Mesh uniform(double x_min, double x_max, int n_cells);
  /// Builds the mesh of cell size dx; (x_max - x_min)/dx must be an integer
  /// to relative tolerance 1e-9.
  static Mesh with_spacing(double x_min, double x_max, double dx);

  int cell_count(Parity p) const { return p == Parity::Base ? n_cells : n_cells + 1; }
  double cell_lo(Parity p, int i) const;
  double cell_hi(Parity p, int i) const { return cell_lo(p, i) + dx; }
  double cell_center(Parity p, int i) const { return cell_lo(p, i) + 0.5 * dx; }
  /// Position of the interface between cells i and i+1 of the given parity.
  double interface(Parity p, int i) const { return cell_hi(p, i); }
};

/// Cell averages at one time level together with the matching cell-averaged
/// coefficient. Base parity on even step_index, Half on odd.
struct StaggeredState {
  Mesh mesh;
  std::vector<double> values;
  std::vector<double> kbar;
  Parity parity = Parity::Base;
  double time = 0.0;
  long step_index = 0;

  std::size_t size() const { return values.size(); }
  double dx() const { return mesh.dx; }
  /// Throws std::logic_error if lengths or parity bookkeeping are inconsistent.
  void validate() const;
};

constexpr int kDefaultQuadPoints = 8;

std::vector<double> cell_average_initial(const Mesh& mesh, const PiecewiseFunction& u0,
                                         int quad_points = kDefaultQuadPoints);
std::vector<double> cell_average_initial(const Mesh& mesh, const std::function<double(double)>& u0,
                                         int quad_points = kDefaultQuadPoints);

std::vector<double> cell_average_coefficient(const Mesh& mesh, const Coefficient& coeff, Parity parity,
                                             int quad_points = kDefaultQuadPoints);

/// Base-parity state at t = 0 with averaged data and coefficient.
StaggeredState make_initial_state(const Mesh& mesh, const PiecewiseFunction& u0, const Coefficient& coeff,
                                  int quad_points = kDefaultQuadPoints);

/// A state's arrays padded with `ghost` constant copies of the edge entries.
struct ExtendedArrays {
  std::vector<double> values;
  std::vector<double> kbar;
  int ghost = 0;
};

/// Zero-gradient (absorbing) extension. Requires ghost >= 1 and a non-empty
/// state; the central-scheme stencil needs ghost >= 2.
ExtendedArrays extend_absorbing(const StaggeredState& state, int ghost);

/// Index, in arrays extended by `ghost`, of the left cell of the first
/// interface a staggered step computes. Output i of the step lives between
/// extended cells first + i and first + i + 1.
inline int first_output_left(Parity input, int ghost) { return input == Parity::Base ? ghost - 1 : ghost; }

/// Dx * sum of values.
double total_mass(const StaggeredState& state);

/// CSV with header `x,u`, one row per cell center, 17 significant digits.
void write_state_csv(std::ostream& out, const StaggeredState& state);

}  // namespace dflux
