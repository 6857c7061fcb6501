#include "isoband/band_function.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace isoband {

BandFunction::BandFunction(std::vector<double> knots, std::vector<double> lower, std::vector<double> upper,
                           std::size_t pieces)
    : pieces_(pieces) {
  if (knots.size() != lower.size() || knots.size() != upper.size()) {
    throw std::invalid_argument("band function: knots and values differ in length");
  }
  if (!std::is_sorted(knots.begin(), knots.end())) {
    throw std::invalid_argument("band function: knots must be sorted");
  }
  // Tied design points collapse to one knot carrying the widest band among
  // them: the smallest lower value and the largest upper value.
  for (std::size_t j = 0; j < knots.size(); ++j) {
    if (!knots_.empty() && knots[j] == knots_.back()) {
      lower_.back() = std::min(lower_.back(), lower[j]);
      upper_.back() = std::max(upper_.back(), upper[j]);
    } else {
      knots_.push_back(knots[j]);
      lower_.push_back(lower[j]);
      upper_.push_back(upper[j]);
    }
  }
}

BandValue BandFunction::eval(double x) const {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::invalid_argument("band function evaluated outside [0, 1]");
  }
  BandValue v;
  auto right = std::lower_bound(knots_.begin(), knots_.end(), x);
  v.upper = right == knots_.end() ? 1.0 : upper_[static_cast<std::size_t>(right - knots_.begin())];
  auto left = std::upper_bound(knots_.begin(), knots_.end(), x);
  v.lower = left == knots_.begin() ? 0.0 : lower_[static_cast<std::size_t>(left - knots_.begin()) - 1];
  return v;
}

BandFunction build_band_function(std::span<const DesignPoint> data, QuantileLevel tau, const BandParams& params) {
  if (data.size() < 3) {
    throw std::invalid_argument("band function needs at least 3 design points");
  }
  for (const DesignPoint& p : data) {
    if (!(p.x >= 0.0 && p.x <= 1.0)) {
      throw std::invalid_argument("design points must lie in [0, 1]");
    }
  }
  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t l, std::size_t r) { return data[l].x < data[r].x; });

  std::vector<double> knots(data.size());
  std::vector<double> v(data.size());
  for (std::size_t j = 0; j < order.size(); ++j) {
    knots[j] = data[order[j]].x;
    v[j] = data[order[j]].y;
  }
  const IsotonicFit fit = fit_isotonic_quantile(v, tau);
  SequenceBand band = band_sequence(fit, params);
  return BandFunction(std::move(knots), std::move(band.lower), std::move(band.upper), fit.pieces());
}

double average_width(const BandFunction& f, const IntervalUnion& region) {
  const double total = region.measure();
  if (!(total > 0.0)) {
    throw std::invalid_argument("average_width: empty region");
  }
  const auto knots = f.knots();
  double integral = 0.0;
  for (const Interval& part : region.parts()) {
    double cursor = part.a;
    auto it = std::upper_bound(knots.begin(), knots.end(), part.a);
    for (;; ++it) {
      const double next = (it != knots.end() && *it < part.b) ? *it : part.b;
      if (next > cursor) {
        const BandValue v = f.eval(0.5 * (cursor + next));
        integral += (v.upper - v.lower) * (next - cursor);
      }
      cursor = next;
      if (next == part.b) {
        break;
      }
    }
  }
  return integral / total;
}

}  // namespace isoband
