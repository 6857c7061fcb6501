#include "isoband/band.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace isoband {

namespace {

void check_growth(NoiseGrowth growth) {
  if (!(growth.c_tilde > 0.0) || !(growth.l_cap > 0.0)) {
    throw std::invalid_argument("noise growth parameters must be strictly positive");
  }
}

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("alpha must lie in (0, 1)");
  }
}

}  // namespace

BandParams band_params(double alpha, NoiseGrowth growth) {
  check_alpha(alpha);
  check_growth(growth);
  const double gamma1 = std::sqrt(1.0 + std::log(1.0 / alpha) / (2.0 * std::log(3.0))) / growth.c_tilde;
  const double ratio = gamma1 / growth.l_cap;
  return BandParams{gamma1, ratio * ratio, alpha};
}

bool certifies_coverage(const BandParams& params, double alpha, NoiseGrowth growth) {
  check_alpha(alpha);
  check_growth(growth);
  constexpr double slack = 1e-12;
  const double c1 = growth.c_tilde * params.gamma1;
  const double lhs = 2.0 * std::log(3.0) * (c1 * c1 - 1.0);
  const double rhs = std::log(1.0 / alpha);
  const bool cond1 = lhs >= rhs - slack * std::max(1.0, std::abs(rhs));
  const bool cond2 = params.gamma2 > 0.0 &&
                     params.gamma1 / std::sqrt(params.gamma2) <= growth.l_cap * (1.0 + slack);
  return cond1 && cond2;
}

std::vector<std::size_t> good_set(const IsotonicFit& fit, double gamma2) {
  const std::size_t n = fit.size();
  if (n < 3) {
    throw std::invalid_argument("band construction needs at least 3 observations");
  }
  if (!(gamma2 >= 0.0)) {
    throw std::invalid_argument("gamma2 must be non-negative");
  }
  const double threshold = gamma2 * std::log(static_cast<double>(n));
  std::vector<std::size_t> good;
  for (const Block& b : fit.blocks) {
    for (std::size_t i = b.first; i <= b.last; ++i) {
      const auto depth = static_cast<double>(std::min(b.last - i + 1, i - b.first + 1));
      if (depth >= threshold) {
        good.push_back(i);
      }
    }
  }
  return good;
}

SequenceBand extrapolated_band(const IsotonicFit& fit, const BandParams& params) {
  if (fit.lo < 0.0 || fit.hi > 1.0) {
    throw std::invalid_argument("band construction needs a fit boxed inside [0, 1]");
  }
  if (!(params.gamma1 >= 0.0)) {
    throw std::invalid_argument("gamma1 must be non-negative");
  }
  SequenceBand band;
  band.good = good_set(fit, params.gamma2);
  const std::size_t n = fit.size();
  const double scale = params.gamma1 * std::sqrt(std::log(static_cast<double>(n)));

  std::vector<std::size_t> first_of(n), last_of(n);
  for (const Block& b : fit.blocks) {
    std::fill(first_of.begin() + static_cast<std::ptrdiff_t>(b.first),
              first_of.begin() + static_cast<std::ptrdiff_t>(b.last) + 1, b.first);
    std::fill(last_of.begin() + static_cast<std::ptrdiff_t>(b.first),
              last_of.begin() + static_cast<std::ptrdiff_t>(b.last) + 1, b.last);
  }

  std::vector<bool> is_good(n, false);
  band.upper.assign(n, 1.0);
  band.lower.assign(n, 0.0);
  for (std::size_t i : band.good) {
    is_good[i] = true;
    const auto right = static_cast<double>(last_of[i] - i + 1);
    const auto left = static_cast<double>(i - first_of[i] + 1);
    band.upper[i] = std::min(fit.theta[i] + scale / std::sqrt(right), 1.0);
    band.lower[i] = std::max(fit.theta[i] - scale / std::sqrt(left), 0.0);
  }

  // Upper copies from the nearest good index to the right, lower from the
  // nearest good index to the left; 1 and 0 where none exists.
  double carry = 1.0;
  for (std::size_t i = n; i-- > 0;) {
    if (is_good[i]) {
      carry = band.upper[i];
    } else {
      band.upper[i] = carry;
    }
  }
  carry = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (is_good[i]) {
      carry = band.lower[i];
    } else {
      band.lower[i] = carry;
    }
  }
  return band;
}

void monotonize(SequenceBand& band) {
  const std::size_t n = band.size();
  for (std::size_t i = n; i-- > 1;) {
    band.upper[i - 1] = std::min(band.upper[i - 1], band.upper[i]);
  }
  for (std::size_t i = 1; i < n; ++i) {
    band.lower[i] = std::max(band.lower[i], band.lower[i - 1]);
  }
}

SequenceBand band_sequence(const IsotonicFit& fit, const BandParams& params) {
  SequenceBand band = extrapolated_band(fit, params);
  monotonize(band);
  return band;
}

bool check_coverage(const SequenceBand& band, std::span<const double> theta_star) {
  if (theta_star.size() != band.size()) {
    throw std::invalid_argument("check_coverage: length mismatch");
  }
  for (std::size_t i = 0; i < band.size(); ++i) {
    if (!(band.lower[i] <= theta_star[i] && theta_star[i] <= band.upper[i])) {
      return false;
    }
  }
  return true;
}

}  // namespace isoband
