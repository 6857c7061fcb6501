#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "isoband/band.hpp"
#include "isoband/band_function.hpp"
#include "isoband/envs.hpp"
#include "isoband/intervals.hpp"

namespace isoband {

struct PolicyConfig {
  std::size_t horizon = 1;
  /// Replaces alpha_T = T^-2 when set.
  std::optional<double> alpha_override;
  /// Local growth of the noise, used to derive the band parameters.
  std::optional<NoiseGrowth> growth;
  /// Hand-picked (gamma1, gamma2); takes precedence over `growth`.
  std::optional<BandParams> band_override;
  std::size_t min_fit_points = 3;
  std::uint64_t seed = 0;
};

/// Epoch sizes: ceil(sqrt(T)), doubling, last one truncated so the sizes sum to T.
std::vector<std::size_t> epoch_schedule(std::size_t horizon);

/// Band parameters the policy uses for a given config (level 1 - alpha_T per
/// arm per epoch). Throws std::invalid_argument when neither an override nor
/// growth parameters are available.
BandParams policy_band_params(const PolicyConfig& config);

struct PolicyState {
  std::size_t epoch = 0;
  IntervalUnion cert0;
  IntervalUnion cert1;
  IntervalUnion unc = IntervalUnion::full();
  std::optional<BandFunction> band0;
  std::optional<BandFunction> band1;
  std::vector<DesignPoint> samples0;
  std::vector<DesignPoint> samples1;
};

/// Certified arm for x, if any.
std::optional<int> certified_arm(const PolicyState& state, double x);

template <class Rng>
int select_arm(const PolicyState& state, double x, Rng& rng) {
  if (auto arm = certified_arm(state, x)) {
    return *arm;
  }
  return std::bernoulli_distribution(0.5)(rng) ? 1 : 0;
}

/// Records an observation in the current epoch's buffer when x lies in the
/// uncertain region.
void record_observation(PolicyState& state, double x, int arm, double reward);

struct EpochUpdate {
  PolicyState state;
  bool fired = false;
};

/// Closes the current epoch: refits both arms on this epoch's buffers and
/// moves newly certified parts of the uncertain region into the cert sets.
/// Skipped (regions unchanged) when either buffer holds fewer than
/// `min_fit_points`. Buffers are cleared and the epoch index advances.
EpochUpdate epoch_update(PolicyState state, const BandParams& params, std::size_t min_fit_points);

struct RoundRecord {
  std::size_t round = 0;
  double x = 0.0;
  int arm = 0;
  double reward = 0.0;
  double regret = 0.0;
};

struct EpochRecord {
  std::size_t index = 0;
  std::size_t size = 0;
  std::size_t samples0 = 0;
  std::size_t samples1 = 0;
  bool fired = false;
  double unc_measure = 1.0;  // after the update
  std::size_t pieces0 = 0;
  std::size_t pieces1 = 0;
  double cumulative_regret = 0.0;  // at the end of the epoch
};

struct RegretTrace {
  std::vector<RoundRecord> rounds;
  std::vector<double> cumulative;
  std::vector<EpochRecord> epochs;

  double total() const noexcept { return cumulative.empty() ? 0.0 : cumulative.back(); }
};

/// Simulates the epoch-based elimination policy for config.horizon rounds
/// at the median (tau = 0.5). Deterministic given config.seed.
RegretTrace run_policy(const Environment& env, const PolicyConfig& config);

}  // namespace isoband
