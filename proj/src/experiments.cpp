#include "isoband/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

#include "isoband/band_function.hpp"
#include "isoband/policy.hpp"
#include "isoband/quantile.hpp"

namespace isoband {

std::vector<Aggregate> aggregate(const std::vector<RawRow>& raw) {
  std::vector<Aggregate> out;
  std::vector<std::vector<double>> values;
  for (const RawRow& row : raw) {
    auto it = std::find_if(out.begin(), out.end(),
                           [&](const Aggregate& a) { return a.series == row.series && a.size == row.size; });
    if (it == out.end()) {
      out.push_back({row.series, row.size, {}});
      values.emplace_back();
      it = out.end() - 1;
    }
    values[static_cast<std::size_t>(it - out.begin())].push_back(row.value);
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i].stat = mean_se(values[i]);
  }
  return out;
}

ResolvedBand resolve_band(const ExperimentConfig& config, std::optional<double> alpha) {
  ResolvedBand out;
  if (config.gamma1) {
    out.params = {*config.gamma1, *config.gamma2, alpha};
    if (alpha && !config.noise.is_degenerate() && config.tau == 0.5) {
      out.valid = certifies_coverage(out.params, *alpha, assumption_a_params(config.noise, config.l_cap));
    }
    return out;
  }
  if (!alpha) {
    throw ConfigError("alpha is required when gamma1 and gamma2 are not given");
  }
  out.params = band_params(*alpha, assumption_a_params(config.noise, config.l_cap));
  out.valid = true;
  return out;
}

namespace {

struct Task {
  std::size_t series = 0;
  std::size_t cell = 0;
  std::size_t rep = 0;
};

std::vector<Task> tasks_of(const ExperimentConfig& c) {
  std::vector<Task> tasks;
  for (std::size_t s = 0; s < c.series.size(); ++s) {
    for (std::size_t g = 0; g < c.grid.size(); ++g) {
      for (std::size_t r = 0; r < c.replications; ++r) {
        tasks.push_back({s, g, r});
      }
    }
  }
  return tasks;
}

std::mt19937_64 task_rng(const ExperimentConfig& c, const Task& t) {
  return replication_rng(c.seed, (static_cast<std::uint64_t>(t.series) << 32) | t.cell, t.rep);
}

std::vector<RawRow> rows_of(const ExperimentConfig& c, const std::vector<Task>& tasks,
                            const std::vector<double>& values) {
  std::vector<RawRow> raw;
  raw.reserve(tasks.size());
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    raw.push_back({c.series[tasks[i].series].name, c.grid[tasks[i].cell], tasks[i].rep, values[i]});
  }
  return raw;
}

double tau_shift(const ExperimentConfig& c) {
  return c.noise.is_degenerate() ? 0.0 : noise_quantile(c.noise, QuantileLevel(c.tau));
}

nlohmann::json params_json(const BandParams& p) {
  nlohmann::json j{{"gamma1", p.gamma1}, {"gamma2", p.gamma2}};
  j["alpha"] = p.alpha ? nlohmann::json(*p.alpha) : nlohmann::json(nullptr);
  return j;
}

/// Log-log slope of the mean metric over the grid, per series.
nlohmann::json slopes(const ExperimentConfig& c, const std::vector<Aggregate>& cells) {
  nlohmann::json out = nlohmann::json::object();
  if (c.grid.size() < 2) {
    return out;
  }
  for (const Series& s : c.series) {
    std::vector<double> sizes;
    std::vector<double> means;
    for (const Aggregate& a : cells) {
      if (a.series == s.name) {
        sizes.push_back(static_cast<double>(a.size));
        means.push_back(a.stat.mean);
      }
    }
    try {
      out[s.name] = log_log_slope(sizes, means);
    } catch (const std::invalid_argument&) {
      out[s.name] = nullptr;  // non-positive means, e.g. zero regret
    }
  }
  return out;
}

std::vector<DesignPoint> fit_input(const ExperimentConfig& c) {
  if (!c.input.empty()) {
    return read_design_csv(c.input);
  }
  auto rng = replication_rng(c.seed, 0, 0);
  return generate_regression_sample(c.series.front().f0, c.noise, IntervalUnion::full(), c.grid.front(), rng).points;
}

std::vector<DesignPoint> sorted_by_x(std::vector<DesignPoint> pts) {
  std::stable_sort(pts.begin(), pts.end(), [](const DesignPoint& a, const DesignPoint& b) { return a.x < b.x; });
  return pts;
}

}  // namespace

ExperimentReport run_fit(const ExperimentConfig& c) {
  const auto pts = sorted_by_x(fit_input(c));
  if (pts.empty()) {
    throw ConfigError("no data to fit");
  }
  std::vector<double> y(pts.size());
  std::transform(pts.begin(), pts.end(), y.begin(), [](const DesignPoint& p) { return p.y; });
  const auto fit = fit_isotonic_quantile(y, QuantileLevel(c.tau));

  ExperimentReport report;
  report.experiment = "fit";
  report.metric = "pieces";
  report.raw.push_back({"data", pts.size(), 0, static_cast<double>(fit.pieces())});
  Table table{"fit", {"x", "y", "fit"}, {}};
  for (std::size_t i = 0; i < pts.size(); ++i) {
    table.rows.push_back({pts[i].x, pts[i].y, fit.theta[i]});
  }
  report.tables.push_back(std::move(table));
  report.summary["n"] = pts.size();
  report.summary["pieces"] = fit.pieces();
  report.summary["objective"] = objective(y, fit.theta, QuantileLevel(c.tau));
  return report;
}

ExperimentReport run_band(const ExperimentConfig& c) {
  const auto pts = sorted_by_x(fit_input(c));
  if (pts.size() < 3) {
    throw ConfigError("a band needs at least 3 data points");
  }
  const ResolvedBand band = resolve_band(c, c.alpha);
  const BandFunction f = build_band_function(pts, QuantileLevel(c.tau), band.params);
  std::vector<double> y(pts.size());
  std::transform(pts.begin(), pts.end(), y.begin(), [](const DesignPoint& p) { return p.y; });
  const auto fit = fit_isotonic_quantile(y, QuantileLevel(c.tau));

  ExperimentReport report;
  report.experiment = "band";
  report.metric = "average_width";
  const double width = average_width(f, IntervalUnion::full());
  report.raw.push_back({"data", pts.size(), 0, width});
  Table table{"band", {"x", "y", "fit", "lower", "upper"}, {}};
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const BandValue v = f.eval(pts[i].x);
    table.rows.push_back({pts[i].x, pts[i].y, fit.theta[i], v.lower, v.upper});
  }
  report.tables.push_back(std::move(table));
  report.summary["n"] = pts.size();
  report.summary["pieces"] = fit.pieces();
  report.summary["band"] = params_json(band.params);
  report.summary["label"] = band.valid ? "valid" : "illustrative";
  return report;
}

ExperimentReport run_coverage(const ExperimentConfig& c) {
  const ResolvedBand band = resolve_band(c, c.alpha);
  const double shift = tau_shift(c);
  const QuantileLevel tau(c.tau);
  const auto tasks = tasks_of(c);
  const auto values = replicate<double>(tasks.size(), c.execution, [&](std::size_t i) {
    const Task& t = tasks[i];
    auto rng = task_rng(c, t);
    auto s = generate_sequence_sample(c.series[t.series].f0, c.noise, c.grid[t.cell], rng);
    for (double& v : s.theta) {
      v += shift;
    }
    const auto fit = fit_isotonic_quantile(s.y, tau);
    return check_coverage(band_sequence(fit, band.params), s.theta) ? 1.0 : 0.0;
  });

  ExperimentReport report;
  report.experiment = "coverage";
  report.metric = "covered";
  report.raw = rows_of(c, tasks, values);
  report.aggregates = aggregate(report.raw);
  report.summary["band"] = params_json(band.params);
  report.summary["label"] = band.valid ? "valid" : "illustrative";
  nlohmann::json cells = nlohmann::json::array();
  for (const Aggregate& a : report.aggregates) {
    const double p = a.stat.mean;
    const auto r = static_cast<double>(a.stat.count);
    cells.push_back({{"series", a.series},
                     {"n", a.size},
                     {"coverage", p},
                     {"binomial_se", std::sqrt(p * (1.0 - p) / r)}});
  }
  report.summary["cells"] = std::move(cells);
  return report;
}

ExperimentReport run_width(const ExperimentConfig& c) {
  const ResolvedBand band = resolve_band(c, c.alpha);
  const QuantileLevel tau(c.tau);
  const auto tasks = tasks_of(c);
  const auto values = replicate<double>(tasks.size(), c.execution, [&](std::size_t i) {
    const Task& t = tasks[i];
    auto rng = task_rng(c, t);
    const auto s = generate_regression_sample(c.series[t.series].f0, c.noise, IntervalUnion::full(),
                                              c.grid[t.cell], rng);
    return average_width(build_band_function(s.points, tau, band.params), IntervalUnion::full());
  });

  ExperimentReport report;
  report.experiment = "width";
  report.metric = "average_width";
  report.raw = rows_of(c, tasks, values);
  report.aggregates = aggregate(report.raw);
  report.summary["band"] = params_json(band.params);
  report.summary["label"] = band.valid ? "valid" : "illustrative";
  report.summary["slope"] = slopes(c, report.aggregates);
  return report;
}

ExperimentReport run_pieces(const ExperimentConfig& c) {
  const QuantileLevel tau(c.tau);
  const auto tasks = tasks_of(c);
  const auto values = replicate<double>(tasks.size(), c.execution, [&](std::size_t i) {
    const Task& t = tasks[i];
    auto rng = task_rng(c, t);
    const auto s = generate_sequence_sample(c.series[t.series].f0, c.noise, c.grid[t.cell], rng);
    return static_cast<double>(fit_isotonic_quantile(s.y, tau).pieces());
  });

  ExperimentReport report;
  report.experiment = "pieces";
  report.metric = "pieces";
  report.raw = rows_of(c, tasks, values);
  report.aggregates = aggregate(report.raw);
  report.summary["slope"] = slopes(c, report.aggregates);
  // k-hat relative to k ln n for truths with finitely many pieces.
  nlohmann::json ratio = nlohmann::json::object();
  for (const Series& s : c.series) {
    const std::size_t k = constant_pieces(s.f0);
    if (k == 0) {
      continue;
    }
    double worst = 0.0;
    for (const Aggregate& a : report.aggregates) {
      if (a.series == s.name) {
        worst = std::max(worst, a.stat.mean / (static_cast<double>(k) * std::log(static_cast<double>(a.size))));
      }
    }
    ratio[s.name] = {{"k", k}, {"max_mean_over_k_log_n", worst}};
  }
  report.summary["k_log_n"] = std::move(ratio);
  return report;
}

namespace {

struct BanditResult {
  double regret = 0.0;
  bool unc_monotone = true;
  std::vector<std::vector<double>> epochs;
};

}  // namespace

ExperimentReport run_bandit(const ExperimentConfig& c) {
  std::optional<NoiseGrowth> growth;
  std::optional<BandParams> override_params;
  if (c.gamma1) {
    override_params = BandParams{*c.gamma1, *c.gamma2, c.alpha};
  } else {
    growth = assumption_a_params(c.noise, c.l_cap);
  }
  const auto tasks = tasks_of(c);
  const auto results = replicate<BanditResult>(tasks.size(), c.execution, [&](std::size_t i) {
    const Task& t = tasks[i];
    const Series& s = c.series[t.series];
    auto rng = task_rng(c, t);
    PolicyConfig pc;
    pc.horizon = c.grid[t.cell];
    pc.alpha_override = c.alpha;
    pc.growth = growth;
    pc.band_override = override_params;
    pc.min_fit_points = c.min_fit_points;
    pc.seed = rng();
    const auto trace = run_policy({s.f0, *s.f1, c.noise}, pc);

    BanditResult out;
    out.regret = trace.total();
    double prev = 1.0;
    for (const EpochRecord& e : trace.epochs) {
      out.unc_monotone = out.unc_monotone && e.unc_measure <= prev;
      prev = e.unc_measure;
      out.epochs.push_back({static_cast<double>(t.series), static_cast<double>(pc.horizon),
                            static_cast<double>(t.rep), static_cast<double>(e.index), static_cast<double>(e.size),
                            e.fired ? 1.0 : 0.0, e.unc_measure, e.cumulative_regret});
    }
    return out;
  });

  ExperimentReport report;
  report.experiment = "bandit";
  report.metric = "regret";
  std::vector<double> values;
  Table curves{"unc_curves",
               {"series_index", "horizon", "replication", "epoch", "epoch_size", "fired", "unc_measure",
                "cumulative_regret"},
               {}};
  bool monotone = true;
  std::size_t fired = 0;
  for (const BanditResult& r : results) {
    values.push_back(r.regret);
    monotone = monotone && r.unc_monotone;
    for (const auto& row : r.epochs) {
      fired += row[5] > 0.0 ? 1 : 0;
      curves.rows.push_back(row);
    }
  }
  report.raw = rows_of(c, tasks, values);
  report.aggregates = aggregate(report.raw);
  report.tables.push_back(std::move(curves));
  report.summary["slope"] = slopes(c, report.aggregates);
  report.summary["unc_monotone"] = monotone;
  report.summary["fired_epochs"] = fired;
  nlohmann::json names = nlohmann::json::array();
  for (const Series& s : c.series) {
    names.push_back(s.name);
  }
  report.summary["series_index"] = std::move(names);
  nlohmann::json params = nlohmann::json::object();
  for (std::size_t t : c.grid) {
    PolicyConfig pc;
    pc.horizon = t;
    pc.alpha_override = c.alpha;
    pc.growth = growth;
    pc.band_override = override_params;
    if (t > 1) {
      params[std::to_string(t)] = params_json(policy_band_params(pc));
    }
  }
  report.summary["band"] = std::move(params);
  report.summary["label"] = c.gamma1 ? "illustrative" : "valid";
  return report;
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
  validate(config);
  const auto start = std::chrono::steady_clock::now();
  ExperimentReport report;
  switch (config.experiment) {
    case ExperimentKind::fit:
      report = run_fit(config);
      break;
    case ExperimentKind::band:
      report = run_band(config);
      break;
    case ExperimentKind::coverage:
      report = run_coverage(config);
      break;
    case ExperimentKind::width:
      report = run_width(config);
      break;
    case ExperimentKind::pieces:
      report = run_pieces(config);
      break;
    case ExperimentKind::bandit:
      report = run_bandit(config);
      break;
    case ExperimentKind::figures:
      report = run_figures(config);
      break;
  }
  report.config = config_to_json(config);
  report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace isoband
