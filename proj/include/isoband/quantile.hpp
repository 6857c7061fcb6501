#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace isoband {

/// Quantile level strictly inside (0, 1).
class QuantileLevel {
 public:
  explicit QuantileLevel(double tau);

  double value() const noexcept { return tau_; }

 private:
  double tau_;
};

/// Smallest k in [1, n] with k / n >= tau. The left tau-quantile of n values
/// is their k-th order statistic.
std::size_t quantile_rank(std::size_t n, QuantileLevel tau);

/// Left (smallest) empirical tau-quantile. Throws std::invalid_argument on an
/// empty sample.
double tau_quantile(std::span<const double> sample, QuantileLevel tau);

/// Check loss r * (tau - 1{r < 0}).
double pinball_loss(double r, QuantileLevel tau) noexcept;

/// Sum of pinball losses of the residuals y - theta.
double objective(std::span<const double> y, std::span<const double> theta, QuantileLevel tau);

/// A maximal run of equal fitted values, 0-based inclusive index range.
struct Block {
  std::size_t first = 0;
  std::size_t last = 0;
  double value = 0.0;

  std::size_t size() const noexcept { return last - first + 1; }
  bool operator==(const Block&) const = default;
};

/// Non-decreasing fitted sequence together with its constant pieces.
struct IsotonicFit {
  std::vector<double> theta;
  std::vector<Block> blocks;
  double lo = 0.0;
  double hi = 1.0;

  std::size_t size() const noexcept { return theta.size(); }
  std::size_t pieces() const noexcept { return blocks.size(); }
};

/// Maximal runs of equal values in a fitted sequence.
std::vector<Block> blocks(std::span<const double> theta);

/// Number of constant pieces of a fit.
std::size_t count_pieces(const IsotonicFit& fit) noexcept;

/// Isotonic tau-quantile regression: minimizes the summed pinball loss over
/// non-decreasing sequences with entries in [lo, hi]. Pooled blocks take the
/// left tau-quantile of their observations before clipping, which makes the
/// minimizer unique. Runs in O(n log^2 n).
IsotonicFit fit_isotonic_quantile(std::span<const double> y, QuantileLevel tau, double lo = 0.0,
                                  double hi = 1.0);

/// Isotonic least squares through the same pooling engine with block means.
/// The default box is unbounded.
IsotonicFit fit_isotonic_least_squares(std::span<const double> y,
                                       double lo = -std::numeric_limits<double>::infinity(),
                                       double hi = std::numeric_limits<double>::infinity());

}  // namespace isoband
