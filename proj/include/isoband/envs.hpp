#pragma once

#include <cstddef>
#include <random>
#include <stdexcept>
#include <type_traits>
#include <variant>
#include <vector>

#include <json.hpp>

#include "isoband/band.hpp"
#include "isoband/band_function.hpp"
#include "isoband/intervals.hpp"
#include "isoband/quantile.hpp"

namespace isoband {

struct MonotoneFunction;

struct Linear {
  double intercept = 0.0;
  double slope = 0.0;
};

/// Right-continuous step function: values[j] on [breakpoints[j-1], breakpoints[j]).
struct PiecewiseConstant {
  std::vector<double> breakpoints;
  std::vector<double> values;
};

/// Pointwise sum of its terms.
struct Composite {
  std::vector<MonotoneFunction> terms;
};

/// Non-decreasing map [0, 1] -> [0, 1].
struct MonotoneFunction {
  std::variant<Linear, PiecewiseConstant, Composite> spec;

  static MonotoneFunction linear(double intercept, double slope) { return {Linear{intercept, slope}}; }
  static MonotoneFunction steps(std::vector<double> breakpoints, std::vector<double> values) {
    return {PiecewiseConstant{std::move(breakpoints), std::move(values)}};
  }
  /// f(x) = base + step * floor(k x) on [0, 1), right-continuous, top value at 1.
  static MonotoneFunction staircase(std::size_t k, double base, double step);
};

/// Throws std::invalid_argument unless the function is non-decreasing with
/// range inside [0, 1].
void validate(const MonotoneFunction& f);

/// Throws std::invalid_argument for x outside [0, 1].
double eval_truth(const MonotoneFunction& f, double x);

/// Number of distinct values on [0, 1]; 0 when the function takes infinitely many.
std::size_t constant_pieces(const MonotoneFunction& f);

/// f + c as a composite.
MonotoneFunction shifted(const MonotoneFunction& f, double c);

struct Gaussian {
  double sigma = 1.0;
};
struct Cauchy {
  double scale = 1.0;
};
/// Zero noise; only meaningful for deterministic tests.
struct Degenerate {};

/// Symmetric noise with median 0.
struct NoiseSpec {
  std::variant<Gaussian, Cauchy, Degenerate> spec;

  static NoiseSpec gaussian(double sigma) { return {Gaussian{sigma}}; }
  static NoiseSpec cauchy(double scale) { return {Cauchy{scale}}; }
  static NoiseSpec degenerate() { return {Degenerate{}}; }

  bool is_degenerate() const noexcept { return std::holds_alternative<Degenerate>(spec); }
};

void validate(const NoiseSpec& noise);

template <class Rng>
double sample_noise(const NoiseSpec& noise, Rng& rng) {
  return std::visit(
      [&rng](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Gaussian>) {
          return std::normal_distribution<double>(0.0, s.sigma)(rng);
        } else if constexpr (std::is_same_v<T, Cauchy>) {
          return std::cauchy_distribution<double>(0.0, s.scale)(rng);
        } else {
          return 0.0;
        }
      },
      noise.spec);
}

double noise_cdf(const NoiseSpec& noise, double t);

/// Closed-form tau-quantile of the noise (0 for Degenerate).
double noise_quantile(const NoiseSpec& noise, QuantileLevel tau);

/// Assumption-A slope for radius l_cap: the infimum of (F(t) - F(0)) / t over
/// (0, l_cap], shrunk by 0.999 so the strict inequality holds.
NoiseGrowth assumption_a_params(const NoiseSpec& noise, double l_cap);

struct Environment {
  MonotoneFunction f0;
  MonotoneFunction f1;
  NoiseSpec noise;
};

void validate(const Environment& env);

/// Design data with the hidden truth and noise draws kept alongside.
struct RegressionSample {
  std::vector<DesignPoint> points;
  std::vector<double> truth;
  std::vector<double> noise;
};

/// n i.i.d. pairs with x ~ Unif(region) and y = f(x) + noise.
template <class Rng>
RegressionSample generate_regression_sample(const MonotoneFunction& f, const NoiseSpec& noise,
                                            const IntervalUnion& region, std::size_t n, Rng& rng) {
  if (!(region.measure() > 0.0)) {
    throw std::invalid_argument("regression sample needs a region of positive measure");
  }
  RegressionSample out;
  out.points.reserve(n);
  out.truth.reserve(n);
  out.noise.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = sample_uniform(region, rng);
    const double fx = eval_truth(f, x);
    const double e = sample_noise(noise, rng);
    out.points.push_back({x, fx + e});
    out.truth.push_back(fx);
    out.noise.push_back(e);
  }
  return out;
}

/// Sequence-model data: theta_i = f(i / n) for i = 1..n, y = theta + noise.
struct SequenceSample {
  std::vector<double> y;
  std::vector<double> theta;
  std::vector<double> noise;
};

template <class Rng>
SequenceSample generate_sequence_sample(const MonotoneFunction& f, const NoiseSpec& noise, std::size_t n,
                                        Rng& rng) {
  SequenceSample out;
  out.y.reserve(n);
  out.theta.reserve(n);
  out.noise.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) {
    const double t = eval_truth(f, static_cast<double>(i) / static_cast<double>(n));
    const double e = sample_noise(noise, rng);
    out.theta.push_back(t);
    out.noise.push_back(e);
    out.y.push_back(t + e);
  }
  return out;
}

void to_json(nlohmann::json& j, const MonotoneFunction& f);
void from_json(const nlohmann::json& j, MonotoneFunction& f);
void to_json(nlohmann::json& j, const NoiseSpec& noise);
void from_json(const nlohmann::json& j, NoiseSpec& noise);
void to_json(nlohmann::json& j, const Environment& env);
void from_json(const nlohmann::json& j, Environment& env);

}  // namespace isoband
