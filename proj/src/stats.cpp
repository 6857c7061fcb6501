#include "isoband/stats.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace isoband {

MeanSe mean_se(std::span<const double> values) {
  MeanSe out;
  out.count = values.size();
  if (values.empty()) {
    return out;
  }
  double sum = 0.0;
  for (double v : values) {
    sum += v;
  }
  out.mean = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) {
      ss += (v - out.mean) * (v - out.mean);
    }
    const double var = ss / static_cast<double>(values.size() - 1);
    out.se = std::sqrt(var / static_cast<double>(values.size()));
  }
  return out;
}

double log_log_slope(std::span<const double> sizes, std::span<const double> metrics) {
  if (sizes.size() != metrics.size() || sizes.size() < 2) {
    throw std::invalid_argument("log_log_slope needs at least two matching points");
  }
  std::vector<double> lx;
  std::vector<double> ly;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (!(sizes[i] > 0.0) || !(metrics[i] > 0.0)) {
      throw std::invalid_argument("log_log_slope needs positive sizes and metrics");
    }
    lx.push_back(std::log(sizes[i]));
    ly.push_back(std::log(metrics[i]));
  }
  const double n = static_cast<double>(lx.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  if (!(sxx > 0.0)) {
    throw std::invalid_argument("log_log_slope needs at least two distinct sizes");
  }
  return sxy / sxx;
}

}  // namespace isoband
