#include "isoband/intervals.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace isoband {

IntervalUnion::IntervalUnion(std::vector<Interval> parts) {
  for (const Interval& p : parts) {
    if (!(p.a >= 0.0 && p.b <= 1.0 && p.a <= p.b)) {
      throw std::invalid_argument("interval parts must satisfy 0 <= a <= b <= 1");
    }
  }
  std::erase_if(parts, [](const Interval& p) { return !(p.a < p.b); });
  std::sort(parts.begin(), parts.end(), [](const Interval& l, const Interval& r) { return l.a < r.a; });
  for (const Interval& p : parts) {
    if (!parts_.empty() && p.a <= parts_.back().b) {
      parts_.back().b = std::max(parts_.back().b, p.b);
    } else {
      parts_.push_back(p);
    }
  }
}

double IntervalUnion::measure() const noexcept {
  double total = 0.0;
  for (const Interval& p : parts_) {
    total += p.length();
  }
  return total;
}

bool IntervalUnion::contains(double x) const noexcept {
  auto it = std::upper_bound(parts_.begin(), parts_.end(), x,
                             [](double v, const Interval& p) { return v < p.a; });
  if (it == parts_.begin()) {
    return false;
  }
  --it;
  return x >= it->a && x < it->b;
}

IntervalUnion intersect(const IntervalUnion& a, const IntervalUnion& b) {
  std::vector<Interval> out;
  auto pa = a.parts();
  auto pb = b.parts();
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < pa.size() && j < pb.size()) {
    const double lo = std::max(pa[i].a, pb[j].a);
    const double hi = std::min(pa[i].b, pb[j].b);
    if (lo < hi) {
      out.push_back({lo, hi});
    }
    if (pa[i].b < pb[j].b) {
      ++i;
    } else {
      ++j;
    }
  }
  return IntervalUnion(std::move(out));
}

IntervalUnion unite(const IntervalUnion& a, const IntervalUnion& b) {
  std::vector<Interval> all(a.parts().begin(), a.parts().end());
  all.insert(all.end(), b.parts().begin(), b.parts().end());
  return IntervalUnion(std::move(all));
}

IntervalUnion complement(const IntervalUnion& a) {
  std::vector<Interval> out;
  double cursor = 0.0;
  for (const Interval& p : a.parts()) {
    if (cursor < p.a) {
      out.push_back({cursor, p.a});
    }
    cursor = p.b;
  }
  if (cursor < 1.0) {
    out.push_back({cursor, 1.0});
  }
  return IntervalUnion(std::move(out));
}

IntervalUnion subtract(const IntervalUnion& a, const IntervalUnion& b) {
  return intersect(a, complement(b));
}

double inverse_cdf(const IntervalUnion& region, double u) {
  const double total = region.measure();
  if (!(total > 0.0)) {
    throw std::invalid_argument("cannot sample from a zero-measure region");
  }
  double remaining = u * total;
  for (const Interval& p : region.parts()) {
    if (remaining < p.length()) {
      // Rounding in a + remaining can land on b; pull it back inside.
      return std::min(p.a + remaining, std::nextafter(p.b, p.a));
    }
    remaining -= p.length();
  }
  const Interval& last = region.parts().back();
  return std::nextafter(last.b, last.a);
}

}  // namespace isoband
