#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <vector>

namespace dflux {

/// Interval outside which smooth pieces are continued by their end values.
struct PiecewiseExtent {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
};

/// A real function on the line that is smooth (or constant) between a finite,
/// strictly increasing set of break points.
///
/// Piece i covers [breaks[i-1], breaks[i]) with breaks[-1] = -inf and
/// breaks[M] = +inf, so a function with M breaks has M + 1 pieces. Values at a
/// break point belong to the piece on the right.
///
/// Smooth pieces are evaluated at x clamped into `extent`; outside the extent
/// the function is continued by the constant value at the nearest end.
class PiecewiseFunction {
 public:
  struct Piece {
    std::optional<double> constant;
    std::function<double(double)> fn;

    static Piece of(double c) { return Piece{c, {}}; }
    static Piece of(std::function<double(double)> f) { return Piece{std::nullopt, std::move(f)}; }
  };

  using Extent = PiecewiseExtent;

  PiecewiseFunction(std::vector<double> breaks, std::vector<Piece> pieces, Extent extent = {});

  static PiecewiseFunction constant(double c);
  /// `left` for x < x0, `right` for x >= x0.
  static PiecewiseFunction step(double x0, double left, double right);
  static PiecewiseFunction smooth(std::function<double(double)> f, Extent extent = {});

  double operator()(double x) const;

  /// (1/(b-a)) * integral over [a, b]. Constant pieces are integrated exactly;
  /// smooth pieces use the composite midpoint rule with `quad_points`
  /// subintervals per sub-cell (the cell split at every break point).
  double average(double a, double b, int quad_points) const;

  std::span<const double> breaks() const { return breaks_; }
  std::span<const Piece> pieces() const { return pieces_; }
  const Extent& extent() const { return extent_; }
  bool is_piecewise_constant() const;

  double left_limit(std::size_t break_index) const;
  double right_limit(std::size_t break_index) const;

 private:
  std::size_t piece_index(double x) const;
  double piece_value(std::size_t i, double x) const;
  double integrate_piece(std::size_t i, double a, double b, int quad_points) const;

  std::vector<double> breaks_;
  std::vector<Piece> pieces_;
  Extent extent_;
};

/// The spatial flux coefficient k(x): a piecewise smooth function with a finite
/// discontinuity set, plus its BV and sup norms.
class Coefficient {
 public:
  explicit Coefficient(PiecewiseFunction k);

  static Coefficient constant(double c) { return Coefficient(PiecewiseFunction::constant(c)); }

  double operator()(double x) const { return k_(x); }
  const PiecewiseFunction& function() const { return k_; }

  std::span<const double> discontinuities() const { return k_.breaks(); }
  double bv_norm() const { return bv_norm_; }
  double sup_norm() const { return sup_norm_; }
  double min_value() const { return min_; }
  double max_value() const { return max_; }

 private:
  PiecewiseFunction k_;
  double bv_norm_ = 0.0;
  double sup_norm_ = 0.0;
  double min_ = 0.0;
  double max_ = 0.0;
};

}  // namespace dflux
