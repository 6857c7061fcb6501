#pragma once

#include <cstddef>
#include <span>

namespace isoband {

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;  // sample standard deviation / sqrt(count); 0 for count < 2
  std::size_t count = 0;
};

/// Summation runs in index order, so results do not depend on how the
/// values were produced.
MeanSe mean_se(std::span<const double> values);

/// Ordinary least-squares slope of ln(metric) against ln(size). Needs at
/// least two sizes and strictly positive metrics.
double log_log_slope(std::span<const double> sizes, std::span<const double> metrics);

}  // namespace isoband
