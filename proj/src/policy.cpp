#include "isoband/policy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "isoband/regions.hpp"

namespace isoband {

std::vector<std::size_t> epoch_schedule(std::size_t horizon) {
  std::vector<std::size_t> sizes;
  if (horizon == 0) {
    return sizes;
  }
  auto first = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(horizon))));
  while (first * first < horizon) {
    ++first;
  }
  while (first > 1 && (first - 1) * (first - 1) >= horizon) {
    --first;
  }
  std::size_t remaining = horizon;
  for (std::size_t size = first; remaining > 0; size *= 2) {
    const std::size_t take = std::min(size, remaining);
    sizes.push_back(take);
    remaining -= take;
  }
  return sizes;
}

BandParams policy_band_params(const PolicyConfig& config) {
  if (config.band_override) {
    return *config.band_override;
  }
  if (!config.growth) {
    throw std::invalid_argument("policy needs noise growth parameters or a band override");
  }
  double alpha = 0.0;
  if (config.alpha_override) {
    alpha = *config.alpha_override;
  } else {
    const auto t = static_cast<double>(config.horizon);
    alpha = 1.0 / (t * t);
  }
  return band_params(alpha, *config.growth);
}

std::optional<int> certified_arm(const PolicyState& state, double x) {
  if (state.cert0.contains(x)) {
    return 0;
  }
  if (state.cert1.contains(x)) {
    return 1;
  }
  return std::nullopt;
}

void record_observation(PolicyState& state, double x, int arm, double reward) {
  if (!state.unc.contains(x)) {
    return;
  }
  (arm == 0 ? state.samples0 : state.samples1).push_back({x, reward});
}

EpochUpdate epoch_update(PolicyState state, const BandParams& params, std::size_t min_fit_points) {
  const std::size_t floor = std::max<std::size_t>(min_fit_points, 3);
  EpochUpdate out;
  if (state.samples0.size() >= floor && state.samples1.size() >= floor) {
    const QuantileLevel median(0.5);
    state.band0 = build_band_function(state.samples0, median, params);
    state.band1 = build_band_function(state.samples1, median, params);
    Regions r = regions_from_band_comparison(*state.band0, *state.band1, state.unc);
    state.cert0 = unite(state.cert0, r.cert0);
    state.cert1 = unite(state.cert1, r.cert1);
    state.unc = std::move(r.unc);
    out.fired = true;
  }
  state.samples0.clear();
  state.samples1.clear();
  ++state.epoch;
  out.state = std::move(state);
  return out;
}

namespace {

void validate_config(const PolicyConfig& config) {
  if (config.horizon == 0) {
    throw std::invalid_argument("policy horizon must be positive");
  }
  if (config.min_fit_points < 3) {
    throw std::invalid_argument("min_fit_points must be at least 3");
  }
  if (config.alpha_override && !(*config.alpha_override > 0.0 && *config.alpha_override < 1.0)) {
    throw std::invalid_argument("alpha override must lie in (0, 1)");
  }
}

}  // namespace

RegretTrace run_policy(const Environment& env, const PolicyConfig& config) {
  validate(env);
  validate_config(config);
  // A single round never reaches a fit, and T = 1 would make alpha_T = 1.
  const std::optional<BandParams> params =
      config.horizon > 1 ? std::optional<BandParams>(policy_band_params(config)) : std::nullopt;

  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  RegretTrace trace;
  trace.rounds.reserve(config.horizon);
  trace.cumulative.reserve(config.horizon);

  PolicyState state;
  double cumulative = 0.0;
  std::size_t round = 0;
  for (std::size_t size : epoch_schedule(config.horizon)) {
    for (std::size_t step = 0; step < size; ++step, ++round) {
      const double x = unit(rng);
      const int arm = select_arm(state, x, rng);
      const double f0 = eval_truth(env.f0, x);
      const double f1 = eval_truth(env.f1, x);
      const double mean = arm == 0 ? f0 : f1;
      const double reward = mean + sample_noise(env.noise, rng);
      const double regret = std::max(f0, f1) - mean;
      cumulative += regret;
      record_observation(state, x, arm, reward);
      trace.rounds.push_back({round, x, arm, reward, regret});
      trace.cumulative.push_back(cumulative);
    }

    EpochRecord record;
    record.index = state.epoch;
    record.size = size;
    record.samples0 = state.samples0.size();
    record.samples1 = state.samples1.size();
    if (params) {
      EpochUpdate update = epoch_update(std::move(state), *params, config.min_fit_points);
      state = std::move(update.state);
      record.fired = update.fired;
    } else {
      state.samples0.clear();
      state.samples1.clear();
      ++state.epoch;
    }
    record.unc_measure = state.unc.measure();
    if (record.fired) {
      record.pieces0 = state.band0->pieces();
      record.pieces1 = state.band1->pieces();
    }
    record.cumulative_regret = cumulative;
    trace.epochs.push_back(record);
  }
  return trace;
}

}  // namespace isoband
