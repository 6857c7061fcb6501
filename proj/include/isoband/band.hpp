#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "isoband/quantile.hpp"

namespace isoband {

/// Local linear growth of the noise CDF around its quantile:
/// |F(t) - F(0)| > c_tilde * t for |t| <= l_cap.
struct NoiseGrowth {
  double c_tilde = 0.0;
  double l_cap = 0.0;
};

/// Radius scale gamma1 and good-set depth gamma2. `alpha` is the level the
/// pair was derived for, empty for hand-picked values.
struct BandParams {
  double gamma1 = 0.0;
  double gamma2 = 0.0;
  std::optional<double> alpha;
};

/// Minimal (gamma1, gamma2) that certifies simultaneous coverage 1 - alpha:
///   2 ln 3 (c^2 gamma1^2 - 1) >= ln(1/alpha)  and  gamma1 / sqrt(gamma2) <= L.
BandParams band_params(double alpha, NoiseGrowth growth);

/// Whether (gamma1, gamma2) satisfies both coverage conditions for `alpha`,
/// up to a relative slack of 1e-12.
bool certifies_coverage(const BandParams& params, double alpha, NoiseGrowth growth);

/// Indices (0-based, ascending) at least gamma2 * ln(n) positions from both
/// ends of their constant block, counting the index itself. Requires n >= 3.
std::vector<std::size_t> good_set(const IsotonicFit& fit, double gamma2);

struct SequenceBand {
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<std::size_t> good;

  std::size_t size() const noexcept { return lower.size(); }
};

/// Radii on the good set and nearest-good-index extrapolation elsewhere,
/// before monotonization.
SequenceBand extrapolated_band(const IsotonicFit& fit, const BandParams& params);

/// Upper band becomes its running minimum from the right, lower band its
/// running maximum from the left.
void monotonize(SequenceBand& band);

/// Full band construction: extrapolated_band followed by monotonize.
SequenceBand band_sequence(const IsotonicFit& fit, const BandParams& params);

/// True iff lower_i <= theta_star_i <= upper_i for every i.
bool check_coverage(const SequenceBand& band, std::span<const double> theta_star);

}  // namespace isoband
