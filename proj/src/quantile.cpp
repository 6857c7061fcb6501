#include "isoband/quantile.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "isoband/pava.hpp"

namespace isoband {

QuantileLevel::QuantileLevel(double tau) : tau_(tau) {
  if (!(tau > 0.0 && tau < 1.0)) {
    throw std::invalid_argument("quantile level must lie in (0, 1), got " + std::to_string(tau));
  }
}

std::size_t quantile_rank(std::size_t n, QuantileLevel tau) {
  if (n == 0) {
    throw std::invalid_argument("quantile_rank: empty sample");
  }
  const double nd = static_cast<double>(n);
  auto k = static_cast<std::size_t>(std::ceil(tau.value() * nd));
  k = std::clamp<std::size_t>(k, 1, n);
  // Settle the rounding of tau * n against the count-ratio definition.
  while (k > 1 && static_cast<double>(k - 1) / nd >= tau.value()) {
    --k;
  }
  while (k < n && static_cast<double>(k) / nd < tau.value()) {
    ++k;
  }
  return k;
}

double tau_quantile(std::span<const double> sample, QuantileLevel tau) {
  if (sample.empty()) {
    throw std::invalid_argument("tau_quantile: empty sample");
  }
  std::vector<double> work(sample.begin(), sample.end());
  const std::size_t k = quantile_rank(work.size(), tau);
  std::nth_element(work.begin(), work.begin() + static_cast<std::ptrdiff_t>(k - 1), work.end());
  return work[k - 1];
}

double pinball_loss(double r, QuantileLevel tau) noexcept {
  return r >= 0.0 ? r * tau.value() : r * (tau.value() - 1.0);
}

double objective(std::span<const double> y, std::span<const double> theta, QuantileLevel tau) {
  if (y.size() != theta.size()) {
    throw std::invalid_argument("objective: y and theta differ in length");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    total += pinball_loss(y[i] - theta[i], tau);
  }
  return total;
}

std::vector<Block> blocks(std::span<const double> theta) {
  std::vector<Block> out;
  for (std::size_t i = 0; i < theta.size(); ++i) {
    if (out.empty() || theta[i] != out.back().value) {
      out.push_back({i, i, theta[i]});
    } else {
      out.back().last = i;
    }
  }
  return out;
}

std::size_t count_pieces(const IsotonicFit& fit) noexcept { return fit.blocks.size(); }

namespace {

void check_input(std::span<const double> y, double lo, double hi) {
  if (y.empty()) {
    throw std::invalid_argument("isotonic fit: empty input");
  }
  if (!(lo < hi)) {
    throw std::invalid_argument("isotonic fit: requires lo < hi");
  }
  for (double v : y) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("isotonic fit: non-finite observation");
    }
  }
}

IsotonicFit finish(std::vector<double> theta, double lo, double hi) {
  for (double& v : theta) {
    v = std::clamp(v, lo, hi);
  }
  IsotonicFit fit;
  fit.blocks = blocks(theta);
  fit.theta = std::move(theta);
  fit.lo = lo;
  fit.hi = hi;
  return fit;
}

}  // namespace

IsotonicFit fit_isotonic_quantile(std::span<const double> y, QuantileLevel tau, double lo, double hi) {
  check_input(y, lo, hi);
  auto theta = detail::pool_adjacent_violators<detail::QuantileSummary>(
      y, [tau](double v) { return detail::QuantileSummary(v, tau); });
  return finish(std::move(theta), lo, hi);
}

IsotonicFit fit_isotonic_least_squares(std::span<const double> y, double lo, double hi) {
  check_input(y, lo, hi);
  auto theta = detail::pool_adjacent_violators<detail::MeanSummary>(
      y, [](double v) { return detail::MeanSummary(v); });
  return finish(std::move(theta), lo, hi);
}

}  // namespace isoband
