#include "isoband/envs.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/distributions/normal.hpp>

namespace isoband {

namespace {

constexpr double kGrowthShrink = 0.999;

// Monotonicity of a single spec, without the range check.
void validate_shape(const MonotoneFunction& f) {
  std::visit(
      [](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Linear>) {
          if (!std::isfinite(s.intercept) || !std::isfinite(s.slope) || s.slope < 0.0) {
            throw std::invalid_argument("linear truth needs finite coefficients and slope >= 0");
          }
        } else if constexpr (std::is_same_v<T, PiecewiseConstant>) {
          if (s.values.size() != s.breakpoints.size() + 1) {
            throw std::invalid_argument("piecewise-constant truth needs one more value than breakpoints");
          }
          for (std::size_t j = 0; j < s.breakpoints.size(); ++j) {
            const double b = s.breakpoints[j];
            if (!(b > 0.0 && b < 1.0) || (j > 0 && !(b > s.breakpoints[j - 1]))) {
              throw std::invalid_argument("breakpoints must be strictly increasing inside (0, 1)");
            }
          }
          for (std::size_t j = 0; j < s.values.size(); ++j) {
            if (!std::isfinite(s.values[j]) || (j > 0 && s.values[j] < s.values[j - 1])) {
              throw std::invalid_argument("piecewise-constant values must be finite and non-decreasing");
            }
          }
        } else {
          if (s.terms.empty()) {
            throw std::invalid_argument("composite truth needs at least one term");
          }
          for (const MonotoneFunction& t : s.terms) {
            validate_shape(t);
          }
        }
      },
      f.spec);
}

double eval_unchecked(const MonotoneFunction& f, double x) {
  return std::visit(
      [x](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Linear>) {
          return s.intercept + s.slope * x;
        } else if constexpr (std::is_same_v<T, PiecewiseConstant>) {
          const auto it = std::upper_bound(s.breakpoints.begin(), s.breakpoints.end(), x);
          return s.values[static_cast<std::size_t>(it - s.breakpoints.begin())];
        } else {
          double total = 0.0;
          for (const MonotoneFunction& t : s.terms) {
            total += eval_unchecked(t, x);
          }
          return total;
        }
      },
      f.spec);
}

// Jump locations, or false when the function is not a step function.
bool collect_breakpoints(const MonotoneFunction& f, std::vector<double>& out) {
  return std::visit(
      [&out](const auto& s) -> bool {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Linear>) {
          return s.slope == 0.0;
        } else if constexpr (std::is_same_v<T, PiecewiseConstant>) {
          out.insert(out.end(), s.breakpoints.begin(), s.breakpoints.end());
          return true;
        } else {
          return std::all_of(s.terms.begin(), s.terms.end(),
                             [&out](const MonotoneFunction& t) { return collect_breakpoints(t, out); });
        }
      },
      f.spec);
}

}  // namespace

MonotoneFunction MonotoneFunction::staircase(std::size_t k, double base, double step) {
  if (k == 0) {
    throw std::invalid_argument("staircase needs at least one piece");
  }
  std::vector<double> breakpoints;
  std::vector<double> values;
  for (std::size_t j = 0; j < k; ++j) {
    if (j > 0) {
      breakpoints.push_back(static_cast<double>(j) / static_cast<double>(k));
    }
    values.push_back(base + step * static_cast<double>(j));
  }
  return steps(std::move(breakpoints), std::move(values));
}

void validate(const MonotoneFunction& f) {
  validate_shape(f);
  const double bottom = eval_unchecked(f, 0.0);
  const double top = eval_unchecked(f, 1.0);
  if (!(bottom >= 0.0 && top <= 1.0)) {
    throw std::invalid_argument("truth function must map [0, 1] into [0, 1]");
  }
}

double eval_truth(const MonotoneFunction& f, double x) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::invalid_argument("truth evaluated outside [0, 1]");
  }
  return eval_unchecked(f, x);
}

std::size_t constant_pieces(const MonotoneFunction& f) {
  std::vector<double> cuts;
  if (!collect_breakpoints(f, cuts)) {
    return 0;
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  // Values on each cell; equal neighbours belong to the same piece.
  std::size_t pieces = 1;
  double previous = eval_unchecked(f, 0.0);
  for (double c : cuts) {
    const double v = eval_unchecked(f, c);
    if (v != previous) {
      ++pieces;
      previous = v;
    }
  }
  return pieces;
}

MonotoneFunction shifted(const MonotoneFunction& f, double c) {
  return MonotoneFunction{Composite{{f, MonotoneFunction::linear(c, 0.0)}}};
}

void validate(const NoiseSpec& noise) {
  std::visit(
      [](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Gaussian>) {
          if (!(s.sigma > 0.0 && std::isfinite(s.sigma))) {
            throw std::invalid_argument("gaussian noise needs sigma > 0");
          }
        } else if constexpr (std::is_same_v<T, Cauchy>) {
          if (!(s.scale > 0.0 && std::isfinite(s.scale))) {
            throw std::invalid_argument("cauchy noise needs scale > 0");
          }
        }
      },
      noise.spec);
}

double noise_cdf(const NoiseSpec& noise, double t) {
  return std::visit(
      [t](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Gaussian>) {
          return 0.5 * std::erfc(-t / (s.sigma * std::numbers::sqrt2));
        } else if constexpr (std::is_same_v<T, Cauchy>) {
          return 0.5 + std::atan(t / s.scale) / std::numbers::pi;
        } else {
          return t >= 0.0 ? 1.0 : 0.0;
        }
      },
      noise.spec);
}

double noise_quantile(const NoiseSpec& noise, QuantileLevel tau) {
  return std::visit(
      [tau](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Gaussian>) {
          return boost::math::quantile(boost::math::normal_distribution<double>(0.0, s.sigma), tau.value());
        } else if constexpr (std::is_same_v<T, Cauchy>) {
          return s.scale * std::tan(std::numbers::pi * (tau.value() - 0.5));
        } else {
          return 0.0;
        }
      },
      noise.spec);
}

NoiseGrowth assumption_a_params(const NoiseSpec& noise, double l_cap) {
  if (!(l_cap > 0.0)) {
    throw std::invalid_argument("assumption A radius must be positive");
  }
  validate(noise);
  if (noise.is_degenerate()) {
    throw std::invalid_argument("degenerate noise has no local growth slope");
  }
  // Both closed-form CDFs are concave on t > 0, so the secant slope is
  // smallest at t = l_cap.
  const double slope = (noise_cdf(noise, l_cap) - noise_cdf(noise, 0.0)) / l_cap;
  return NoiseGrowth{kGrowthShrink * slope, l_cap};
}

void validate(const Environment& env) {
  validate(env.f0);
  validate(env.f1);
  validate(env.noise);
}

void to_json(nlohmann::json& j, const MonotoneFunction& f) {
  std::visit(
      [&j](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Linear>) {
          j = {{"kind", "linear"}, {"intercept", s.intercept}, {"slope", s.slope}};
        } else if constexpr (std::is_same_v<T, PiecewiseConstant>) {
          j = {{"kind", "piecewise_constant"}, {"breakpoints", s.breakpoints}, {"values", s.values}};
        } else {
          j = {{"kind", "composite"}, {"terms", s.terms}};
        }
      },
      f.spec);
}

void from_json(const nlohmann::json& j, MonotoneFunction& f) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "linear") {
    f.spec = Linear{j.at("intercept").get<double>(), j.at("slope").get<double>()};
  } else if (kind == "piecewise_constant") {
    f.spec = PiecewiseConstant{j.at("breakpoints").get<std::vector<double>>(),
                               j.at("values").get<std::vector<double>>()};
  } else if (kind == "staircase") {
    f = MonotoneFunction::staircase(j.at("pieces").get<std::size_t>(), j.at("base").get<double>(),
                                    j.at("step").get<double>());
  } else if (kind == "composite") {
    f.spec = Composite{j.at("terms").get<std::vector<MonotoneFunction>>()};
  } else {
    throw std::invalid_argument("unknown truth kind '" + kind + "'");
  }
}

void to_json(nlohmann::json& j, const NoiseSpec& noise) {
  std::visit(
      [&j](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Gaussian>) {
          j = {{"kind", "gaussian"}, {"sigma", s.sigma}};
        } else if constexpr (std::is_same_v<T, Cauchy>) {
          j = {{"kind", "cauchy"}, {"scale", s.scale}};
        } else {
          j = {{"kind", "degenerate"}};
        }
      },
      noise.spec);
}

void from_json(const nlohmann::json& j, NoiseSpec& noise) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "gaussian") {
    noise = NoiseSpec::gaussian(j.at("sigma").get<double>());
  } else if (kind == "cauchy") {
    noise = NoiseSpec::cauchy(j.at("scale").get<double>());
  } else if (kind == "degenerate") {
    noise = NoiseSpec::degenerate();
  } else {
    throw std::invalid_argument("unknown noise kind '" + kind + "'");
  }
}

void to_json(nlohmann::json& j, const Environment& env) {
  j = {{"f0", env.f0}, {"f1", env.f1}, {"noise", env.noise}};
}

void from_json(const nlohmann::json& j, Environment& env) {
  env.f0 = j.at("f0").get<MonotoneFunction>();
  env.f1 = j.contains("f1") ? j.at("f1").get<MonotoneFunction>() : env.f0;
  env.noise = j.at("noise").get<NoiseSpec>();
}

}  // namespace isoband
