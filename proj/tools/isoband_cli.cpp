// Command-line front end: one subcommand per experiment.
//
//   isoband_cli coverage --reps 500 --out results
//   isoband_cli band --input data.csv --gamma1 0.5 --gamma2 0.5
//
// Exit codes: 0 success, 2 configuration error, 3 runtime error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "isoband/experiments.hpp"

namespace {

constexpr int kConfigError = 2;
constexpr int kRuntimeError = 3;

struct Flags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> reps;
  std::optional<std::string> out;
  std::optional<std::string> grid;
  std::optional<double> tau;
  std::optional<double> alpha;
  std::optional<double> gamma1;
  std::optional<double> gamma2;
  std::optional<std::string> format;
  std::optional<std::string> input;
  bool serial = false;
};

std::vector<std::size_t> parse_grid(const std::string& text) {
  std::vector<std::size_t> grid;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const long long v = std::stoll(item, &used);
      if (used != item.size() || v <= 0) {
        throw std::invalid_argument(item);
      }
      grid.push_back(static_cast<std::size_t>(v));
    } catch (const std::exception&) {
      throw isoband::ConfigError("--grid expects a comma-separated list of positive integers, got '" + text + "'");
    }
  }
  return grid;
}

isoband::ExperimentConfig build_config(isoband::ExperimentKind kind, const Flags& f) {
  isoband::ExperimentConfig c = isoband::default_config(kind);
  if (!f.config.empty()) {
    std::ifstream in(f.config);
    if (!in) {
      throw isoband::ConfigError("cannot read config file " + f.config);
    }
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw isoband::ConfigError(f.config + ": " + e.what());
    }
    if (!j.is_object()) {
      throw isoband::ConfigError(f.config + ": expected a JSON object");
    }
    if (!j.contains("experiment")) {
      j["experiment"] = isoband::to_string(kind);
    } else if (j.at("experiment") != isoband::to_string(kind)) {
      throw isoband::ConfigError(f.config + " describes a '" + j.at("experiment").dump() + "' experiment");
    }
    c = isoband::config_from_json(j);
  }
  if (f.seed) c.seed = *f.seed;
  if (f.reps) c.replications = *f.reps;
  if (f.out) c.out_dir = *f.out;
  if (f.grid) c.grid = parse_grid(*f.grid);
  if (f.tau) c.tau = *f.tau;
  if (f.alpha) c.alpha = *f.alpha;
  if (f.gamma1) c.gamma1 = *f.gamma1;
  if (f.gamma2) c.gamma2 = *f.gamma2;
  if (f.format) c.format = *f.format;
  if (f.input) c.input = *f.input;
  if (f.serial) c.execution = isoband::Execution::serial;
  return c;
}

void add_flags(CLI::App* sub, Flags& f, bool with_input) {
  sub->add_option("--config", f.config, "JSON experiment configuration");
  sub->add_option("--seed", f.seed, "Base random seed");
  sub->add_option("--reps", f.reps, "Monte-Carlo replications");
  sub->add_option("--out", f.out, "Output directory");
  sub->add_option("--grid", f.grid, "Comma-separated sample sizes or horizons");
  sub->add_option("--tau", f.tau, "Quantile level");
  sub->add_option("--alpha", f.alpha, "Miscoverage level for derived band parameters");
  sub->add_option("--gamma1", f.gamma1, "Band radius multiplier");
  sub->add_option("--gamma2", f.gamma2, "Good-set depth multiplier");
  sub->add_option("--format", f.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  sub->add_flag("--serial", f.serial, "Run replications on one thread");
  if (with_input) {
    sub->add_option("--input", f.input, "CSV of x,y pairs (generated when omitted)");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Isotonic quantile confidence bands and isotonic bandit experiments"};
  app.set_version_flag("--version", isoband::kVersion);
  app.require_subcommand(1);

  Flags flags;
  const std::vector<std::pair<isoband::ExperimentKind, const char*>> commands{
      {isoband::ExperimentKind::fit, "Fit an isotonic quantile regression"},
      {isoband::ExperimentKind::band, "Fit and build a confidence band"},
      {isoband::ExperimentKind::coverage, "Simultaneous coverage of the band"},
      {isoband::ExperimentKind::width, "Average band width across sample sizes"},
      {isoband::ExperimentKind::pieces, "Constant pieces of the fit across sample sizes"},
      {isoband::ExperimentKind::bandit, "Regret of the elimination policy across horizons"},
      {isoband::ExperimentKind::figures, "Reproduce the reference figure configurations"},
  };
  std::vector<std::pair<isoband::ExperimentKind, CLI::App*>> subs;
  for (const auto& [kind, help] : commands) {
    CLI::App* sub = app.add_subcommand(isoband::to_string(kind), help);
    add_flags(sub, flags,
              kind == isoband::ExperimentKind::fit || kind == isoband::ExperimentKind::band);
    subs.emplace_back(kind, sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  try {
    for (const auto& [kind, sub] : subs) {
      if (!sub->parsed()) {
        continue;
      }
      const auto config = build_config(kind, flags);
      const auto report = isoband::run_experiment(config);
      const auto paths = isoband::write_report(report, config.out_dir, config.format);
      std::cout << isoband::report_to_json(report, false)["summary"].dump() << '\n';
      for (const auto& p : paths) {
        std::cerr << "wrote " << p << '\n';
      }
    }
  } catch (const isoband::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
  return 0;
}
