#include <algorithm>
#include <cmath>
#include <string>

#include "isoband/experiments.hpp"
#include "isoband/quantile.hpp"

namespace isoband {

namespace {

constexpr double kDisplayLimit = 10.0;

struct Figure {
  std::string name;
  MonotoneFunction f;
  NoiseSpec noise;
  double tau = 0.5;
  BandParams params;
};

std::vector<Figure> band_figures() {
  const auto linear = MonotoneFunction::linear(0.0, 1.0);
  const auto stairs = MonotoneFunction::staircase(5, 0.1, 0.2);
  const BandParams half{0.5, 0.5, {}};
  const BandParams upper{1.0, 0.75, {}};
  return {
      {"fig1_gaussian_linear", linear, NoiseSpec::gaussian(0.1), 0.5, half},
      {"fig2_gaussian_staircase", stairs, NoiseSpec::gaussian(0.1), 0.5, half},
      {"fig3_cauchy_linear", linear, NoiseSpec::cauchy(0.1), 0.5, half},
      {"fig5_cauchy_q70_linear", MonotoneFunction::linear(0.1, 0.8), NoiseSpec::cauchy(0.1), 0.7, upper},
      {"fig5_cauchy_q70_staircase", stairs, NoiseSpec::cauchy(0.1), 0.7, upper},
  };
}

double clip_display(double y) { return std::clamp(y, -kDisplayLimit, kDisplayLimit); }

struct FigureRun {
  bool covered = false;
  Table table;
};

FigureRun band_figure(const Figure& fig, std::size_t n, std::mt19937_64& rng, bool keep) {
  auto s = generate_sequence_sample(fig.f, fig.noise, n, rng);
  const double shift = noise_quantile(fig.noise, QuantileLevel(fig.tau));
  for (double& v : s.theta) {
    v += shift;
  }
  const auto fit = fit_isotonic_quantile(s.y, QuantileLevel(fig.tau));
  const auto band = band_sequence(fit, fig.params);
  FigureRun out;
  out.covered = check_coverage(band, s.theta);
  if (keep) {
    out.table = {fig.name, {"x", "y", "y_display", "truth", "fit", "lower", "upper"}, {}};
    for (std::size_t i = 0; i < n; ++i) {
      const double x = static_cast<double>(i + 1) / static_cast<double>(n);
      out.table.rows.push_back(
          {x, s.y[i], clip_display(s.y[i]), s.theta[i], fit.theta[i], band.lower[i], band.upper[i]});
    }
  }
  return out;
}

struct LseRun {
  double median_error = 0.0;
  double lse_error = 0.0;
  Table table;
};

// Median and least-squares isotonic fits on the same Cauchy data. The
// least-squares fit is left unboxed so its sensitivity to outliers shows.
LseRun lse_figure(std::size_t n, std::mt19937_64& rng, bool keep) {
  const auto s = generate_sequence_sample(MonotoneFunction::linear(0.0, 1.0), NoiseSpec::cauchy(0.1), n, rng);
  const auto median = fit_isotonic_quantile(s.y, QuantileLevel(0.5));
  const auto lse = fit_isotonic_least_squares(s.y);
  LseRun out;
  for (std::size_t i = 0; i < n; ++i) {
    out.median_error = std::max(out.median_error, std::abs(median.theta[i] - s.theta[i]));
    out.lse_error = std::max(out.lse_error, std::abs(lse.theta[i] - s.theta[i]));
  }
  if (keep) {
    out.table = {"fig4_cauchy_median_vs_lse", {"x", "y", "y_display", "truth", "median_fit", "lse_fit"}, {}};
    for (std::size_t i = 0; i < n; ++i) {
      const double x = static_cast<double>(i + 1) / static_cast<double>(n);
      out.table.rows.push_back({x, s.y[i], clip_display(s.y[i]), s.theta[i], median.theta[i], lse.theta[i]});
    }
  }
  return out;
}

struct FiguresRep {
  std::vector<double> values;  // one per metric series
  std::vector<Table> tables;
};

}  // namespace

ExperimentReport run_figures(const ExperimentConfig& c) {
  const std::size_t n = c.grid.front();
  const auto figs = band_figures();
  const auto reps = replicate<FiguresRep>(c.replications, c.execution, [&](std::size_t r) {
    FiguresRep out;
    const bool keep = r == 0;
    for (std::size_t k = 0; k < figs.size(); ++k) {
      auto rng = replication_rng(c.seed, k, r);
      FigureRun run = band_figure(figs[k], n, rng, keep);
      out.values.push_back(run.covered ? 1.0 : 0.0);
      if (keep) {
        out.tables.push_back(std::move(run.table));
      }
    }
    auto rng = replication_rng(c.seed, figs.size(), r);
    LseRun lse = lse_figure(n, rng, keep);
    out.values.push_back(lse.median_error < lse.lse_error ? 1.0 : 0.0);
    if (keep) {
      out.tables.insert(out.tables.begin() + 3, std::move(lse.table));
    }
    return out;
  });

  std::vector<std::string> metrics;
  for (const Figure& f : figs) {
    metrics.push_back(f.name + "_covered");
  }
  metrics.push_back("fig4_median_beats_lse");

  ExperimentReport report;
  report.experiment = "figures";
  report.metric = "indicator";
  for (std::size_t m = 0; m < metrics.size(); ++m) {
    for (std::size_t r = 0; r < reps.size(); ++r) {
      report.raw.push_back({metrics[m], n, r, reps[r].values[m]});
    }
  }
  report.aggregates = aggregate(report.raw);
  report.tables = reps.front().tables;
  nlohmann::json figures = nlohmann::json::array();
  for (const Figure& f : figs) {
    figures.push_back({{"name", f.name},
                       {"truth", f.f},
                       {"noise", f.noise},
                       {"tau", f.tau},
                       {"gamma1", f.params.gamma1},
                       {"gamma2", f.params.gamma2},
                       {"label", "illustrative"}});
  }
  report.summary["figures"] = std::move(figures);
  report.summary["n"] = n;
  report.summary["display_limit"] = kDisplayLimit;
  return report;
}

}  // namespace isoband
