// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Tolerances and runtime limits are fixed here.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "dp_oracle.hpp"
#include "isoband/experiments.hpp"
#include "isoband/policy.hpp"
#include "isoband/regions.hpp"

using namespace isoband;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(int id, const char* name, double limit_seconds, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out = {false, std::string("threw: ") + e.what()};
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool in_time = seconds < limit_seconds;
  const bool pass = out.pass && in_time;
  failures += pass ? 0 : 1;
  std::printf("%s %d %s: %s; %.1f s (limit %.0f s%s)\n", pass ? "PASS" : "FAIL", id, name, out.detail.c_str(),
              seconds, limit_seconds, in_time ? "" : ", exceeded");
  std::fflush(stdout);
}

void info(const std::string& line) {
  std::printf("INFO %s\n", line.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

double mean_at(const ExperimentReport& r, const std::string& series, std::size_t size) {
  for (const auto& a : r.aggregates) {
    if (a.series == series && a.size == size) {
      return a.stat.mean;
    }
  }
  throw std::runtime_error("missing cell " + series);
}

Outcome oracle_equivalence() {
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<std::size_t> size(1, 12);
  const std::array<double, 3> taus{0.3, 0.5, 0.7};
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const QuantileLevel tau(taus[static_cast<std::size_t>(trial) % 3]);
    const auto noise = trial % 2 == 0 ? NoiseSpec::gaussian(0.1) : NoiseSpec::cauchy(0.1);
    const auto s = generate_sequence_sample(MonotoneFunction::linear(0.0, 1.0), noise, size(rng), rng);
    const auto fit = fit_isotonic_quantile(s.y, tau);
    const double gap = std::abs(objective(s.y, fit.theta, tau) - oracle::dp_oracle_fit(s.y, tau).objective);
    worst = std::max(worst, gap);
  }
  return {worst <= 1e-9, fmt("max |objective gap| %.2e over 1000 instances (tol 1e-9)", worst)};
}

Outcome sandwich() {
  const std::array<double, 3> taus{0.3, 0.5, 0.7};
  std::size_t violations = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    auto rng = replication_rng(77, 0, seed);
    const auto f = seed % 2 == 0 ? MonotoneFunction::linear(0.1, 0.8) : MonotoneFunction::staircase(5, 0.1, 0.2);
    const auto noise = seed % 4 < 2 ? NoiseSpec::gaussian(0.1) : NoiseSpec::cauchy(0.1);
    const QuantileLevel tau(taus[seed % 3]);
    const auto s = generate_sequence_sample(f, noise, 200, rng);
    violations += oracle::sandwich_violations(fit_isotonic_quantile(s.y, tau), s.theta, s.noise, tau, 1e-12);
  }
  return {violations == 0, fmt("%zu violating indices over 200 datasets of n=200 (slack 1e-12)", violations)};
}

Outcome coverage() {
  const double floor = 0.95 - 2.0 * std::sqrt(0.05 * 0.95 / 1000.0);
  std::string detail;
  bool ok = true;
  for (const auto& [name, noise] : {std::pair{"gaussian", NoiseSpec::gaussian(0.1)},
                                    std::pair{"cauchy", NoiseSpec::cauchy(0.1)}}) {
    ExperimentConfig c = default_config(ExperimentKind::coverage);
    c.noise = noise;
    c.seed = 3;
    const auto r = run_experiment(c);
    const double cov = r.aggregates.front().stat.mean;
    const auto& band = r.summary.at("band");
    ok = ok && cov >= floor;
    detail += fmt("%s coverage %.3f (gamma1 %.4f, gamma2 %.3f); ", name, cov, band.at("gamma1").get<double>(),
                  band.at("gamma2").get<double>());
  }
  return {ok, detail + fmt("floor %.4f", floor)};
}

Outcome width() {
  ExperimentConfig c = default_config(ExperimentKind::width);
  c.seed = 4;
  const auto r = run_experiment(c);
  const double inc = r.summary.at("slope").at("increasing").get<double>();
  const double step = r.summary.at("slope").at("step").get<double>();
  bool below = true;
  std::string widths;
  for (std::size_t n : c.grid) {
    const double wi = mean_at(r, "increasing", n);
    const double ws = mean_at(r, "step", n);
    below = below && ws < wi;
    widths += fmt(" n=%zu %.4f/%.4f", n, wi, ws);
  }
  const bool inc_ok = inc >= -0.43 && inc <= -0.23;
  const bool step_ok = step >= -0.62 && step <= -0.38;
  info("width means increasing/step:" + widths);
  return {inc_ok && step_ok && below,
          fmt("increasing slope %.3f in [-0.43,-0.23]: %s; k=5 step slope %.3f in [-0.62,-0.38]: %s; "
              "step narrower at every n: %s",
              inc, inc_ok ? "yes" : "no", step, step_ok ? "yes" : "no", below ? "yes" : "no")};
}

Outcome pieces() {
  ExperimentConfig c = default_config(ExperimentKind::pieces);
  c.seed = 5;
  const auto r = run_experiment(c);
  const double inc = r.summary.at("slope").at("increasing").get<double>();
  const double ratio = r.summary.at("k_log_n").at("step").at("max_mean_over_k_log_n").get<double>();
  const bool inc_ok = inc >= 0.23 && inc <= 0.43;
  const bool ratio_ok = ratio <= 3.0;
  return {inc_ok && ratio_ok, fmt("increasing slope %.3f in [0.23,0.43]: %s; k=2 max mean k/(2 ln n) %.3f <= 3: %s",
                                  inc, inc_ok ? "yes" : "no", ratio, ratio_ok ? "yes" : "no")};
}

Outcome regret() {
  ExperimentConfig c = default_config(ExperimentKind::bandit);
  c.seed = 6;
  const auto r = run_experiment(c);
  const auto& slope = r.summary.at("slope");
  const double inc = slope.at("increasing").is_null() ? NAN : slope.at("increasing").get<double>();
  const double step = slope.at("step").is_null() ? NAN : slope.at("step").get<double>();
  const double reg_inc = mean_at(r, "increasing", 16000);
  const double reg_step = mean_at(r, "step", 16000);
  const bool monotone = r.summary.at("unc_monotone").get<bool>();
  const bool inc_ok = inc >= 0.5 && inc <= 0.85;
  const bool step_ok = step >= 0.35 && step <= 0.7;
  const bool smaller = reg_step < reg_inc;
  info(fmt("regret band parameters at T=16000: gamma1 %.4f gamma2 %.2f; fired epochs %zu",
           r.summary.at("band").at("16000").at("gamma1").get<double>(),
           r.summary.at("band").at("16000").at("gamma2").get<double>(),
           r.summary.at("fired_epochs").get<std::size_t>()));
  return {inc_ok && step_ok && smaller && monotone,
          fmt("increasing slope %.3f in [0.5,0.85]: %s; step slope %.3f in [0.35,0.7]: %s; "
              "regret at T=16000 step %.1f < increasing %.1f: %s; unc non-increasing: %s",
              inc, inc_ok ? "yes" : "no", step, step_ok ? "yes" : "no", reg_step, reg_inc, smaller ? "yes" : "no",
              monotone ? "yes" : "no")};
}

Outcome degenerate_policy() {
  PolicyConfig same;
  same.horizon = 1000;
  same.growth = assumption_a_params(NoiseSpec::gaussian(0.1), 0.1);
  const double zero = run_policy({MonotoneFunction::linear(0.2, 0.5), MonotoneFunction::linear(0.2, 0.5),
                                  NoiseSpec::gaussian(0.1)},
                                 same)
                          .total();

  PolicyConfig sep;
  sep.horizon = 1000;
  sep.band_override = BandParams{0.5, 0.5, {}};
  const auto trace = run_policy({MonotoneFunction::linear(0.25, 0.0), MonotoneFunction::linear(0.75, 0.0),
                                 NoiseSpec::degenerate()},
                                sep);
  const auto first = std::find_if(trace.epochs.begin(), trace.epochs.end(), [](const auto& e) { return e.fired; });
  const bool fired = first != trace.epochs.end();
  const double at_fire = fired ? first->cumulative_regret : NAN;
  const bool stopped = fired && trace.total() == at_fire;
  std::string curve;
  for (const auto& e : trace.epochs) {
    curve += fmt(" %.3f/%.2f", e.unc_measure, e.cumulative_regret);
  }
  info("noiseless constants, per-epoch unc measure/cumulative regret:" + curve);
  return {zero == 0.0 && stopped,
          fmt("identical arms regret %.1f (must be 0); separated noiseless constants regret %.2f at first fired "
              "epoch, %.2f at T=1000 (must be equal)",
              zero, at_fire, trace.total())};
}

Outcome figures() {
  ExperimentConfig c = default_config(ExperimentKind::figures);
  c.seed = 8;
  const auto r = run_experiment(c);
  const auto dir = std::filesystem::temp_directory_path() / "isoband_acceptance_figures";
  std::filesystem::remove_all(dir);
  write_report(r, dir.string(), "csv");
  const std::vector<std::pair<std::string, std::string>> expected{
      {"fig1_gaussian_linear", "x,y,y_display,truth,fit,lower,upper"},
      {"fig2_gaussian_staircase", "x,y,y_display,truth,fit,lower,upper"},
      {"fig3_cauchy_linear", "x,y,y_display,truth,fit,lower,upper"},
      {"fig4_cauchy_median_vs_lse", "x,y,y_display,truth,median_fit,lse_fit"},
      {"fig5_cauchy_q70_linear", "x,y,y_display,truth,fit,lower,upper"},
      {"fig5_cauchy_q70_staircase", "x,y,y_display,truth,fit,lower,upper"},
  };
  bool schema = true;
  for (const auto& [name, header] : expected) {
    std::ifstream in(dir / (name + ".csv"));
    std::string line;
    std::size_t rows = 0;
    schema = schema && std::getline(in, line) && line == header;
    while (std::getline(in, line)) {
      ++rows;
    }
    schema = schema && rows == c.grid.front();
  }
  const double cov1 = mean_at(r, "fig1_gaussian_linear_covered", 500);
  const double cov2 = mean_at(r, "fig2_gaussian_staircase_covered", 500);
  const double lse = mean_at(r, "fig4_median_beats_lse", 500);
  info(fmt("figure 3 and 5 coverage: %.3f, %.3f, %.3f", mean_at(r, "fig3_cauchy_linear_covered", 500),
           mean_at(r, "fig5_cauchy_q70_linear_covered", 500), mean_at(r, "fig5_cauchy_q70_staircase_covered", 500)));
  const bool ok = schema && cov1 >= 0.9 && cov2 >= 0.9 && lse >= 0.95;
  return {ok, fmt("CSV schema ok: %s; fig1 coverage %.3f, fig2 coverage %.3f (>= 0.9); median beats LSE in %.3f "
                  "(>= 0.95) of 200 replications",
                  schema ? "yes" : "no", cov1, cov2, lse)};
}

IntervalUnion random_union(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Interval> parts(std::uniform_int_distribution<int>(0, 5)(rng));
  for (auto& p : parts) {
    p.a = unit(rng);
    p.b = unit(rng);
    if (p.a > p.b) {
      std::swap(p.a, p.b);
    }
  }
  return IntervalUnion(std::move(parts));
}

BandFunction random_band(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::size_t m = std::uniform_int_distribution<std::size_t>(1, 10)(rng);
  std::vector<double> knots(m);
  std::vector<double> lower(m);
  std::vector<double> upper(m);
  for (auto& k : knots) {
    k = unit(rng);
  }
  std::sort(knots.begin(), knots.end());
  double level = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    level = std::min(1.0, level + 0.15 * unit(rng));
    lower[j] = level;
    upper[j] = std::min(1.0, level + 0.3 * unit(rng));
  }
  std::sort(upper.begin(), upper.end());
  return BandFunction(knots, lower, upper);
}

Outcome interval_algebra() {
  std::mt19937_64 rng(9);
  std::size_t failed = 0;
  double worst = 0.0;
  for (int trial = 0; trial < 10000; ++trial) {
    const auto a = random_union(rng);
    const auto b = random_union(rng);
    const double additivity = std::abs(unite(a, b).measure() + intersect(a, b).measure() - a.measure() - b.measure());
    const double complement_gap = std::abs(a.measure() + complement(a).measure() - 1.0);
    const auto r = regions_from_band_comparison(random_band(rng), random_band(rng), a);
    const double partition_gap = std::abs(r.cert0.measure() + r.cert1.measure() + r.unc.measure() - a.measure());
    const bool disjoint =
        intersect(r.cert0, r.cert1).empty() && intersect(r.cert0, r.unc).empty() && intersect(r.cert1, r.unc).empty();
    const bool covers = unite(unite(r.cert0, r.cert1), r.unc) == a;
    worst = std::max({worst, additivity, complement_gap, partition_gap});
    const bool ok = additivity <= 1e-12 && complement_gap <= 1e-12 && partition_gap <= 1e-12 &&
                    complement(complement(a)) == a && subtract(a, b) == intersect(a, complement(b)) && disjoint &&
                    covers;
    failed += ok ? 0 : 1;
  }
  return {failed == 0, fmt("%zu of 10000 randomized identity sets failed; max measure gap %.2e (tol 1e-12)", failed,
                           worst)};
}

}  // namespace

int main() {
  std::printf("isoband %s acceptance\n", kVersion);
  report(1, "oracle equivalence", 10, oracle_equivalence);
  report(2, "deterministic sandwich", 10, sandwich);
  report(3, "finite-sample coverage", 120, coverage);
  report(4, "adaptive width", 300, width);
  report(5, "piece-count bound", 180, pieces);
  report(6, "regret scaling", 600, regret);
  report(7, "policy degenerate checks", 5, degenerate_policy);
  report(8, "figure reproduction", 120, figures);
  report(9, "interval algebra", 5, interval_algebra);
  std::printf("%d of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
