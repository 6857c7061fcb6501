#pragma once

#include "isoband/band_function.hpp"
#include "isoband/intervals.hpp"

namespace isoband {

struct Regions {
  IntervalUnion cert0;  // L0 > U1
  IntervalUnion cert1;  // L1 > U0
  IntervalUnion unc;
};

/// Splits `within` by comparing the two arms' bands. Every step function is
/// constant on the open cells between consecutive knots, so each half-open
/// cell is classified by its midpoint.
Regions regions_from_band_comparison(const BandFunction& f0, const BandFunction& f1,
                                     const IntervalUnion& within);

}  // namespace isoband
