#include "isoband/regions.hpp"

#include <algorithm>
#include <vector>

namespace isoband {

Regions regions_from_band_comparison(const BandFunction& f0, const BandFunction& f1, const IntervalUnion& within) {
  std::vector<double> cuts;
  cuts.reserve(f0.knots().size() + f1.knots().size());
  std::merge(f0.knots().begin(), f0.knots().end(), f1.knots().begin(), f1.knots().end(),
             std::back_inserter(cuts));
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<Interval> cert0;
  std::vector<Interval> cert1;
  std::vector<Interval> unc;
  for (const Interval& part : within.parts()) {
    double cursor = part.a;
    auto it = std::upper_bound(cuts.begin(), cuts.end(), part.a);
    for (;; ++it) {
      const double next = (it != cuts.end() && *it < part.b) ? *it : part.b;
      if (next > cursor) {
        const double mid = 0.5 * (cursor + next);
        const BandValue b0 = f0.eval(mid);
        const BandValue b1 = f1.eval(mid);
        if (b0.lower > b1.upper) {
          cert0.push_back({cursor, next});
        } else if (b1.lower > b0.upper) {
          cert1.push_back({cursor, next});
        } else {
          unc.push_back({cursor, next});
        }
      }
      cursor = next;
      if (next == part.b) {
        break;
      }
    }
  }
  return Regions{IntervalUnion(std::move(cert0)), IntervalUnion(std::move(cert1)), IntervalUnion(std::move(unc))};
}

}  // namespace isoband
