#pragma once

// Pool-adjacent-violators over a mergeable block summary.
//
// A Summary type provides:
//   double value() const;            loss minimizer of the pooled block
//   std::size_t size() const;        number of pooled observations
//   void absorb(Summary&& other);    pool another block into this one

#include <cstddef>
#include <functional>
#include <queue>
#include <span>
#include <utility>
#include <vector>

#include "isoband/quantile.hpp"

namespace isoband::detail {

/// Multiset summary that answers the left tau-quantile in O(1). The lower
/// heap always holds exactly quantile_rank(size) smallest values.
class QuantileSummary {
 public:
  QuantileSummary(double y, QuantileLevel tau) : tau_(tau) { low_.push(y); }

  double value() const { return low_.top(); }
  std::size_t size() const { return low_.size() + high_.size(); }

  void absorb(QuantileSummary&& other) {
    if (other.size() > size()) {
      std::swap(low_, other.low_);
      std::swap(high_, other.high_);
    }
    drain(other.low_);
    drain(other.high_);
    rebalance();
  }

 private:
  template <class Heap>
  void drain(Heap& heap) {
    while (!heap.empty()) {
      const double y = heap.top();
      heap.pop();
      if (y <= low_.top()) {
        low_.push(y);
      } else {
        high_.push(y);
      }
    }
  }

  void rebalance() {
    const std::size_t rank = quantile_rank(size(), tau_);
    while (low_.size() > rank) {
      high_.push(low_.top());
      low_.pop();
    }
    while (low_.size() < rank) {
      low_.push(high_.top());
      high_.pop();
    }
  }

  QuantileLevel tau_;
  std::priority_queue<double> low_;
  std::priority_queue<double, std::vector<double>, std::greater<>> high_;
};

class MeanSummary {
 public:
  explicit MeanSummary(double y) : sum_(y), count_(1) {}

  double value() const { return sum_ / static_cast<double>(count_); }
  std::size_t size() const { return count_; }

  void absorb(MeanSummary&& other) {
    sum_ += other.sum_;
    count_ += other.count_;
  }

 private:
  double sum_;
  std::size_t count_;
};

/// Returns the unconstrained isotonic fit, one value per observation.
template <class Summary, class MakeSummary>
std::vector<double> pool_adjacent_violators(std::span<const double> y, MakeSummary make) {
  std::vector<Summary> stack;
  stack.reserve(y.size());
  for (double v : y) {
    stack.push_back(make(v));
    while (stack.size() >= 2 && stack[stack.size() - 2].value() > stack.back().value()) {
      Summary top = std::move(stack.back());
      stack.pop_back();
      stack.back().absorb(std::move(top));
    }
  }

  std::vector<double> theta;
  theta.reserve(y.size());
  for (const Summary& block : stack) {
    theta.insert(theta.end(), block.size(), block.value());
  }
  return theta;
}

}  // namespace isoband::detail
