#pragma once

#include <random>
#include <span>
#include <vector>

namespace isoband {

/// Half-open interval [a, b) inside [0, 1].
struct Interval {
  double a = 0.0;
  double b = 0.0;

  double length() const noexcept { return b - a; }
  bool operator==(const Interval&) const = default;
};

/// Finite disjoint union of half-open subintervals of [0, 1), kept sorted with
/// adjacent and overlapping parts merged. The point 1 is never represented;
/// it carries no measure.
class IntervalUnion {
 public:
  IntervalUnion() = default;

  /// Normalizes arbitrary (possibly overlapping or empty) parts. Throws
  /// std::invalid_argument for parts outside [0, 1] or with b < a.
  explicit IntervalUnion(std::vector<Interval> parts);

  static IntervalUnion full() { return IntervalUnion({{0.0, 1.0}}); }
  static IntervalUnion interval(double a, double b) { return IntervalUnion({{a, b}}); }

  std::span<const Interval> parts() const noexcept { return parts_; }
  bool empty() const noexcept { return parts_.empty(); }

  double measure() const noexcept;
  bool contains(double x) const noexcept;

  bool operator==(const IntervalUnion&) const = default;

 private:
  std::vector<Interval> parts_;
};

IntervalUnion intersect(const IntervalUnion& a, const IntervalUnion& b);
IntervalUnion unite(const IntervalUnion& a, const IntervalUnion& b);
IntervalUnion complement(const IntervalUnion& a);
IntervalUnion subtract(const IntervalUnion& a, const IntervalUnion& b);

inline double measure(const IntervalUnion& a) noexcept { return a.measure(); }
inline bool contains(const IntervalUnion& a, double x) noexcept { return a.contains(x); }

/// Maps u in [0, 1) onto the region by inverse CDF over the concatenated
/// part lengths. Throws on a zero-measure region.
double inverse_cdf(const IntervalUnion& region, double u);

template <class Rng>
double sample_uniform(const IntervalUnion& region, Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  return inverse_cdf(region, unit(rng));
}

}  // namespace isoband
