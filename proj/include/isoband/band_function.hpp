#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "isoband/band.hpp"
#include "isoband/intervals.hpp"
#include "isoband/quantile.hpp"

namespace isoband {

struct DesignPoint {
  double x = 0.0;
  double y = 0.0;
};

struct BandValue {
  double lower = 0.0;
  double upper = 1.0;
};

/// Monotone step-function band on [0, 1] with jumps at the design points.
/// U(x) is the upper value at the smallest design point >= x (1 if none);
/// L(x) is the lower value at the largest design point <= x (0 if none).
/// Immutable once built.
class BandFunction {
 public:
  /// `knots` sorted ascending; `lower` and `upper` aligned with them.
  /// `pieces` records the constant-piece count of the underlying fit.
  BandFunction(std::vector<double> knots, std::vector<double> lower, std::vector<double> upper,
               std::size_t pieces = 0);

  /// Throws std::invalid_argument for x outside [0, 1].
  BandValue eval(double x) const;

  std::span<const double> knots() const noexcept { return knots_; }
  std::span<const double> lower() const noexcept { return lower_; }
  std::span<const double> upper() const noexcept { return upper_; }
  std::size_t pieces() const noexcept { return pieces_; }

 private:
  std::vector<double> knots_;
  std::vector<double> lower_;
  std::vector<double> upper_;
  std::size_t pieces_ = 0;
};

/// Sorts by x (stable), runs the isotonic quantile fit and the sequence band
/// on the reordered responses, and attaches the band values to the sorted
/// design points. Requires at least 3 points, all with x in [0, 1].
BandFunction build_band_function(std::span<const DesignPoint> data, QuantileLevel tau,
                                 const BandParams& params);

inline BandValue eval_band(const BandFunction& f, double x) { return f.eval(x); }

/// Exact mean of U - L over the region.
double average_width(const BandFunction& f, const IntervalUnion& region);

}  // namespace isoband
