#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "isoband/intervals.hpp"
#include "isoband/regions.hpp"

using namespace isoband;

namespace {

IntervalUnion random_union(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> parts(0, 4);
  std::vector<Interval> out;
  for (int k = parts(rng); k > 0; --k) {
    double a = unit(rng);
    double b = unit(rng);
    if (a > b) {
      std::swap(a, b);
    }
    out.push_back({a, b});
  }
  return IntervalUnion(std::move(out));
}

}  // namespace

TEST_CASE("normalization merges overlaps and adjacency") {
  const IntervalUnion u({{0.5, 1.0}, {0.0, 0.5}});
  CHECK(u == IntervalUnion::full());
  const IntervalUnion v({{0.1, 0.3}, {0.2, 0.4}, {0.6, 0.6}});
  REQUIRE(v.parts().size() == 1);
  CHECK(v.parts()[0] == Interval{0.1, 0.4});
  CHECK_THROWS_AS(IntervalUnion({{-0.1, 0.2}}), std::invalid_argument);
  CHECK_THROWS_AS(IntervalUnion({{0.3, 0.2}}), std::invalid_argument);
}

TEST_CASE("intersect examples") {
  CHECK(intersect(IntervalUnion::full(), IntervalUnion::full()) == IntervalUnion::full());
  CHECK(intersect(IntervalUnion::interval(0, 0.5), IntervalUnion::interval(0.25, 0.75)) ==
        IntervalUnion::interval(0.25, 0.5));
  const auto a = IntervalUnion({{0.1, 0.2}, {0.5, 0.9}});
  CHECK(intersect(a, complement(a)).empty());
}

TEST_CASE("complement examples") {
  CHECK(complement(IntervalUnion::full()).empty());
  CHECK(complement(IntervalUnion()) == IntervalUnion::full());
  CHECK(complement(IntervalUnion::interval(0.2, 0.4)) == IntervalUnion({{0.0, 0.2}, {0.4, 1.0}}));
}

TEST_CASE("measure and contains") {
  CHECK(measure(IntervalUnion::full()) == 1.0);
  CHECK(measure(IntervalUnion()) == 0.0);
  CHECK(measure(IntervalUnion({{0.1, 0.3}, {0.6, 0.7}})) == doctest::Approx(0.3).epsilon(1e-15));
  CHECK_FALSE(contains(IntervalUnion::interval(0, 0.5), 0.5));
  CHECK(contains(IntervalUnion::interval(0, 0.5), 0.0));
  CHECK_FALSE(contains(IntervalUnion(), 0.3));
}

TEST_CASE("sample_uniform") {
  CHECK(inverse_cdf(IntervalUnion::full(), 0.37) == 0.37);
  CHECK(inverse_cdf(IntervalUnion::interval(0.2, 0.6), 0.5) == doctest::Approx(0.4));
  const IntervalUnion two({{0.0, 0.1}, {0.5, 0.6}});
  CHECK(inverse_cdf(two, 0.49) < 0.1);
  CHECK(inverse_cdf(two, 0.51) >= 0.5);
  CHECK_THROWS_AS(inverse_cdf(IntervalUnion(), 0.5), std::invalid_argument);

  std::mt19937_64 rng(5);
  for (int i = 0; i < 2000; ++i) {
    const auto region = random_union(rng);
    if (region.empty()) {
      continue;
    }
    CHECK(region.contains(sample_uniform(region, rng)));
  }
}

TEST_CASE("set algebra identities on random unions") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 500; ++i) {
    const auto a = random_union(rng);
    const auto b = random_union(rng);
    const auto c = random_union(rng);
    CHECK(std::abs(a.measure() + complement(a).measure() - 1.0) <= 1e-12);
    CHECK(intersect(a, b) == intersect(b, a));
    CHECK(intersect(intersect(a, b), c) == intersect(a, intersect(b, c)));
    CHECK(intersect(a, a) == a);
    CHECK(complement(complement(a)) == a);
    CHECK(std::abs(unite(a, b).measure() + intersect(a, b).measure() - a.measure() - b.measure()) <= 1e-12);
  }
}

TEST_CASE("regions_from_band_comparison examples") {
  // Constant bands need knots at both ends to hold everywhere.
  const BandFunction f0({0.0, 1.0}, {0.8, 0.8}, {0.9, 0.9});
  const BandFunction f1({0.0, 1.0}, {0.1, 0.1}, {0.2, 0.2});
  const auto r = regions_from_band_comparison(f0, f1, IntervalUnion::full());
  CHECK(r.cert0 == IntervalUnion::full());
  CHECK(r.cert1.empty());
  CHECK(r.unc.empty());

  const auto same = regions_from_band_comparison(f0, f0, IntervalUnion::interval(0.2, 0.7));
  CHECK(same.unc == IntervalUnion::interval(0.2, 0.7));
  CHECK(same.cert0.empty());
  CHECK(same.cert1.empty());

  // Arm 0 is high left of 0.49, arm 1 right of 0.5; the cell between the two
  // knots sees the jump of arm 1 and stays uncertain.
  const BandFunction g0({0.0, 0.49, 0.5, 1.0}, {0.3, 0.3, 0.3, 0.3}, {0.4, 0.4, 0.4, 0.4});
  const BandFunction g1({0.0, 0.49, 0.5, 1.0}, {0.0, 0.0, 0.6, 0.6}, {0.1, 0.1, 0.7, 0.7});
  const auto crossing = regions_from_band_comparison(g0, g1, IntervalUnion::full());
  CHECK(crossing.cert0 == IntervalUnion::interval(0.0, 0.49));
  CHECK(crossing.cert1 == IntervalUnion::interval(0.5, 1.0));
  CHECK(crossing.unc == IntervalUnion::interval(0.49, 0.5));
}

TEST_CASE("regions partition the comparison domain") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 300; ++trial) {
    auto make = [&]() {
      std::vector<double> knots(8);
      for (double& k : knots) {
        k = unit(rng);
      }
      std::sort(knots.begin(), knots.end());
      std::vector<double> lo(8);
      std::vector<double> hi(8);
      double level = 0.0;
      for (std::size_t j = 0; j < 8; ++j) {
        level += 0.1 * unit(rng);
        lo[j] = level;
        hi[j] = std::min(1.0, level + 0.2 * unit(rng) + 0.05);
      }
      std::sort(hi.begin(), hi.end());
      return BandFunction(knots, lo, hi);
    };
    const auto f0 = make();
    const auto f1 = make();
    const auto within = random_union(rng);
    const auto r = regions_from_band_comparison(f0, f1, within);
    CHECK(std::abs(r.cert0.measure() + r.cert1.measure() + r.unc.measure() - within.measure()) <= 1e-12);
    CHECK(intersect(r.cert0, r.cert1).empty());
    CHECK(intersect(r.cert0, r.unc).empty());
    CHECK(intersect(r.cert1, r.unc).empty());
    CHECK(unite(unite(r.cert0, r.cert1), r.unc) == within);
  }
}
