#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>

#include "isoband/experiments.hpp"

using namespace isoband;

namespace {

ExperimentConfig small(ExperimentKind kind) {
  ExperimentConfig c = default_config(kind);
  c.replications = 6;
  if (kind == ExperimentKind::bandit) {
    c.grid = {200, 800};
  } else if (kind != ExperimentKind::figures) {
    c.grid = {60, 120, 240};
  } else {
    c.grid = {100};
  }
  c.seed = 5;
  return c;
}

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("isoband_test_" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("experiment names round trip") {
  for (auto kind : {ExperimentKind::fit, ExperimentKind::band, ExperimentKind::coverage, ExperimentKind::width,
                    ExperimentKind::pieces, ExperimentKind::bandit, ExperimentKind::figures}) {
    CHECK(parse_experiment_kind(to_string(kind)) == kind);
    CHECK_NOTHROW(validate(default_config(kind)));
  }
  CHECK_THROWS_AS(parse_experiment_kind("plot"), ConfigError);
}

TEST_CASE("config validation") {
  auto c = small(ExperimentKind::coverage);
  c.replications = 0;
  CHECK_THROWS_AS(validate(c), ConfigError);
  c = small(ExperimentKind::coverage);
  c.grid = {2};
  CHECK_THROWS_AS(validate(c), ConfigError);
  c = small(ExperimentKind::coverage);
  c.gamma1 = 0.5;
  CHECK_THROWS_AS(validate(c), ConfigError);
  c = small(ExperimentKind::coverage);
  c.tau = 1.0;
  CHECK_THROWS_AS(validate(c), ConfigError);
  c = small(ExperimentKind::coverage);
  c.noise = NoiseSpec::degenerate();
  CHECK_THROWS_AS(validate(c), ConfigError);
  c.gamma1 = 0.5;
  c.gamma2 = 0.5;
  CHECK_NOTHROW(validate(c));
  c = small(ExperimentKind::coverage);
  c.series.front().f0 = MonotoneFunction::linear(0.5, 1.0);
  CHECK_THROWS_AS(validate(c), ConfigError);
  c = small(ExperimentKind::bandit);
  c.series.front().f1.reset();
  CHECK_THROWS_AS(validate(c), ConfigError);
  c = small(ExperimentKind::width);
  c.format = "xml";
  CHECK_THROWS_AS(validate(c), ConfigError);
  c = small(ExperimentKind::pieces);
  c.series.push_back(c.series.front());
  CHECK_THROWS_AS(validate(c), ConfigError);
}

TEST_CASE("json configs overlay the defaults") {
  const auto j = nlohmann::json::parse(R"({
    "experiment": "width", "replications": 3, "grid": [50, 100], "seed": 9,
    "series": [{"name": "flat", "f0": {"kind": "linear", "intercept": 0.4, "slope": 0.0}}],
    "noise": {"kind": "cauchy", "scale": 0.2}, "gamma1": 0.3, "gamma2": 0.6, "execution": "serial"})");
  const auto c = config_from_json(j);
  CHECK(c.experiment == ExperimentKind::width);
  CHECK(c.replications == 3);
  CHECK(c.grid == std::vector<std::size_t>{50, 100});
  CHECK(c.series.size() == 1);
  CHECK(*c.gamma2 == 0.6);
  CHECK(c.execution == Execution::serial);
  CHECK(config_to_json(config_from_json(config_to_json(c))) == config_to_json(c));

  CHECK_THROWS_AS(config_from_json(nlohmann::json::parse(R"({"experiment": "width", "colour": 1})")), ConfigError);
  CHECK_THROWS_AS(config_from_json(nlohmann::json::parse(R"({"replications": 1})")), ConfigError);
  CHECK_THROWS_AS(config_from_json(nlohmann::json::parse(R"({"experiment": "width", "grid": "big"})")), ConfigError);
}

TEST_CASE("reports are reproducible and re-aggregate from raw rows") {
  for (auto kind : {ExperimentKind::coverage, ExperimentKind::width, ExperimentKind::pieces, ExperimentKind::bandit,
                    ExperimentKind::figures}) {
    auto c = small(kind);
    const auto a = run_experiment(c);
    c.execution = Execution::serial;
    const auto b = run_experiment(c);
    REQUIRE(a.raw.size() == b.raw.size());
    for (std::size_t i = 0; i < a.raw.size(); ++i) {
      CHECK(a.raw[i].value == b.raw[i].value);
    }
    CHECK(a.summary == b.summary);

    const auto again = aggregate(a.raw);
    REQUIRE(again.size() == a.aggregates.size());
    for (std::size_t i = 0; i < again.size(); ++i) {
      CHECK(again[i].stat.mean == a.aggregates[i].stat.mean);
      CHECK(again[i].stat.se == a.aggregates[i].stat.se);
      CHECK(again[i].stat.count == c.replications);
    }
    CHECK(a.version == std::string(kVersion));
    CHECK(a.config.at("experiment") == to_string(kind));
  }
}

TEST_CASE("degenerate coverage is exact") {
  auto c = small(ExperimentKind::coverage);
  c.noise = NoiseSpec::degenerate();
  c.gamma1 = 0.0;
  c.gamma2 = 0.0;
  const auto r = run_experiment(c);
  for (const auto& a : r.aggregates) {
    CHECK(a.stat.mean == 1.0);
  }
  CHECK(r.summary.at("label") == "illustrative");
}

TEST_CASE("noiseless increasing data fit one piece per point") {
  auto c = small(ExperimentKind::pieces);
  c.noise = NoiseSpec::degenerate();
  c.series = {{"increasing", MonotoneFunction::linear(0.0, 1.0), {}}};
  const auto r = run_experiment(c);
  for (const auto& a : r.aggregates) {
    CHECK(a.stat.mean == static_cast<double>(a.size));
  }
}

TEST_CASE("identical bandit arms give zero regret") {
  auto c = small(ExperimentKind::bandit);
  c.series = {{"same", MonotoneFunction::linear(0.1, 0.6), MonotoneFunction::linear(0.1, 0.6)}};
  const auto r = run_experiment(c);
  for (const auto& row : r.raw) {
    CHECK(row.value == 0.0);
  }
  CHECK(r.summary.at("unc_monotone") == true);
}

TEST_CASE("figure tables follow the documented schema") {
  const auto r = run_experiment(small(ExperimentKind::figures));
  REQUIRE(r.tables.size() == 6);
  for (const auto& t : r.tables) {
    CHECK(t.rows.size() == 100);
    if (t.name == "fig4_cauchy_median_vs_lse") {
      CHECK(t.columns == std::vector<std::string>{"x", "y", "y_display", "truth", "median_fit", "lse_fit"});
    } else {
      CHECK(t.columns == std::vector<std::string>{"x", "y", "y_display", "truth", "fit", "lower", "upper"});
    }
    for (const auto& row : t.rows) {
      CHECK(std::abs(row[2]) <= 10.0);
    }
  }
}

TEST_CASE("fit and band read design data from csv") {
  const auto dir = scratch("fit");
  std::filesystem::create_directories(dir);
  const auto input = dir / "data.csv";
  {
    std::ofstream out(input);
    out << "x,y\n0.1,0.3\n0.2,0.1\n0.3,0.5\n0.4,0.6\n0.5,0.4\n";
  }
  auto c = default_config(ExperimentKind::fit);
  c.input = input.string();
  const auto fit = run_experiment(c);
  REQUIRE(fit.tables.size() == 1);
  CHECK(fit.tables[0].rows.size() == 5);
  CHECK(fit.tables[0].rows[0][2] <= fit.tables[0].rows[1][2]);

  c.experiment = ExperimentKind::band;
  const auto band = run_experiment(c);
  CHECK(band.tables[0].columns.size() == 5);

  {
    std::ofstream out(input);
    out << "x,y\n0.1,abc\n";
  }
  CHECK_THROWS_AS(run_experiment(c), ConfigError);
  c.input = (dir / "missing.csv").string();
  CHECK_THROWS_AS(run_experiment(c), ConfigError);
}

TEST_CASE("write_report emits csv and json files") {
  const auto dir = scratch("write");
  const auto r = run_experiment(small(ExperimentKind::width));
  const auto csv = write_report(r, dir.string(), "csv");
  CHECK(std::filesystem::exists(dir / "width_raw.csv"));
  CHECK(std::filesystem::exists(dir / "width_aggregates.csv"));
  CHECK(std::filesystem::exists(dir / "width_summary.json"));
  std::ifstream raw(dir / "width_raw.csv");
  std::string header;
  std::getline(raw, header);
  CHECK(header == "series,size,replication,average_width");
  std::size_t lines = 0;
  for (std::string line; std::getline(raw, line);) {
    ++lines;
  }
  CHECK(lines == r.raw.size());

  const auto json = write_report(r, dir.string(), "json");
  REQUIRE(json.size() == 1);
  std::ifstream in(json.front());
  const auto parsed = nlohmann::json::parse(in);
  CHECK(parsed.at("raw").size() == r.raw.size());
  CHECK(parsed.at("version") == kVersion);
}
