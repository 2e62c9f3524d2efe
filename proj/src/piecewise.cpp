#include "dflux/piecewise.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dflux {

namespace {

constexpr int kVariationSamples = 1024;

}  // namespace

PiecewiseFunction::PiecewiseFunction(std::vector<double> breaks, std::vector<Piece> pieces, Extent extent)
    : breaks_(std::move(breaks)), pieces_(std::move(pieces)), extent_(extent) {
  if (pieces_.size() != breaks_.size() + 1) {
    throw std::invalid_argument("piecewise function needs exactly one more piece than break points");
  }
  for (std::size_t i = 0; i < breaks_.size(); ++i) {
    if (!std::isfinite(breaks_[i])) throw std::invalid_argument("break points must be finite");
    if (i > 0 && !(breaks_[i] > breaks_[i - 1])) {
      throw std::invalid_argument("break points must be strictly increasing");
    }
  }
  for (const auto& p : pieces_) {
    if (!p.constant && !p.fn) throw std::invalid_argument("piece has neither a constant nor a function");
  }
  if (!(extent_.lo < extent_.hi)) throw std::invalid_argument("empty extent");
}

PiecewiseFunction PiecewiseFunction::constant(double c) { return PiecewiseFunction({}, {Piece::of(c)}); }

PiecewiseFunction PiecewiseFunction::step(double x0, double left, double right) {
  return PiecewiseFunction({x0}, {Piece::of(left), Piece::of(right)});
}

PiecewiseFunction PiecewiseFunction::smooth(std::function<double(double)> f, Extent extent) {
  return PiecewiseFunction({}, {Piece::of(std::move(f))}, extent);
}

bool PiecewiseFunction::is_piecewise_constant() const {
  return std::all_of(pieces_.begin(), pieces_.end(), [](const Piece& p) { return p.constant.has_value(); });
}

std::size_t PiecewiseFunction::piece_index(double x) const {
  return static_cast<std::size_t>(std::upper_bound(breaks_.begin(), breaks_.end(), x) - breaks_.begin());
}

double PiecewiseFunction::piece_value(std::size_t i, double x) const {
  const Piece& p = pieces_[i];
  if (p.constant) return *p.constant;
  return p.fn(std::clamp(x, extent_.lo, extent_.hi));
}

double PiecewiseFunction::operator()(double x) const { return piece_value(piece_index(x), x); }

double PiecewiseFunction::left_limit(std::size_t b) const { return piece_value(b, breaks_.at(b)); }

double PiecewiseFunction::right_limit(std::size_t b) const { return piece_value(b + 1, breaks_.at(b)); }

double PiecewiseFunction::integrate_piece(std::size_t i, double a, double b, int quad_points) const {
  const Piece& p = pieces_[i];
  if (p.constant) return *p.constant * (b - a);
  const double h = (b - a) / quad_points;
  double sum = 0.0;
  for (int q = 0; q < quad_points; ++q) sum += piece_value(i, a + (q + 0.5) * h);
  return sum * h;
}

double PiecewiseFunction::average(double a, double b, int quad_points) const {
  if (quad_points < 1) throw std::invalid_argument("quad_points must be >= 1");
  if (!(b > a)) throw std::invalid_argument("averaging interval must have positive length");
  std::size_t i = piece_index(a);
  if ((i == breaks_.size() || b <= breaks_[i]) && pieces_[i].constant) return *pieces_[i].constant;
  double lo = a;
  double integral = 0.0;
  while (true) {
    const double piece_hi = i < breaks_.size() ? breaks_[i] : std::numeric_limits<double>::infinity();
    const double hi = std::min(piece_hi, b);
    if (hi > lo) integral += integrate_piece(i, lo, hi, quad_points);
    if (hi >= b) break;
    lo = hi;
    ++i;
  }
  return integral / (b - a);
}

Coefficient::Coefficient(PiecewiseFunction k) : k_(std::move(k)) {
  const auto breaks = k_.breaks();
  const auto pieces = k_.pieces();
  const auto& ext = k_.extent();

  double total_variation = 0.0;
  for (std::size_t b = 0; b < breaks.size(); ++b) {
    total_variation += std::abs(k_.right_limit(b) - k_.left_limit(b));
  }

  min_ = std::numeric_limits<double>::infinity();
  max_ = -std::numeric_limits<double>::infinity();
  auto record = [&](double v) {
    if (!std::isfinite(v)) throw std::invalid_argument("coefficient takes a non-finite value");
    min_ = std::min(min_, v);
    max_ = std::max(max_, v);
  };

  for (std::size_t i = 0; i < pieces.size(); ++i) {
    if (pieces[i].constant) {
      record(*pieces[i].constant);
      continue;
    }
    double lo = i == 0 ? -std::numeric_limits<double>::infinity() : breaks[i - 1];
    double hi = i == breaks.size() ? std::numeric_limits<double>::infinity() : breaks[i];
    lo = std::max(lo, ext.lo);
    hi = std::min(hi, ext.hi);
    if (!std::isfinite(lo) || !std::isfinite(hi)) {
      throw std::invalid_argument("smooth coefficient piece on an unbounded interval needs a finite extent");
    }
    if (!(hi > lo)) {
      record(k_(lo));
      continue;
    }
    double prev = k_.pieces()[i].fn(lo);
    record(prev);
    for (int s = 1; s <= kVariationSamples; ++s) {
      const double x = s == kVariationSamples ? hi : lo + (hi - lo) * s / kVariationSamples;
      const double v = pieces[i].fn(x);
      record(v);
      total_variation += std::abs(v - prev);
      prev = v;
    }
  }
  bv_norm_ = total_variation;
  sup_norm_ = std::max(std::abs(min_), std::abs(max_));
}

}  // namespace dflux
