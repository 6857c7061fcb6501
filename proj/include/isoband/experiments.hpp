#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "isoband/band.hpp"
#include "isoband/envs.hpp"
#include "isoband/replicate.hpp"
#include "isoband/stats.hpp"

namespace isoband {

inline constexpr const char* kVersion = "0.1.0";

/// Invalid experiment configuration; the CLI maps it to exit code 2.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class ExperimentKind { fit, band, coverage, width, pieces, bandit, figures };

std::string to_string(ExperimentKind kind);
ExperimentKind parse_experiment_kind(const std::string& name);

/// One curve of an experiment. Single-function experiments read `f0`;
/// bandit runs need `f1` as the second arm.
struct Series {
  std::string name;
  MonotoneFunction f0;
  std::optional<MonotoneFunction> f1;
};

struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::coverage;
  std::size_t replications = 1;
  /// Sample sizes, or horizons for bandit runs.
  std::vector<std::size_t> grid;
  std::vector<Series> series;
  NoiseSpec noise = NoiseSpec::gaussian(0.1);
  double tau = 0.5;
  /// Coverage level for derived band parameters. Bandit runs default to T^-2.
  std::optional<double> alpha;
  /// Assumption-A radius used to derive (C, L) from the noise.
  double l_cap = 0.1;
  /// Hand-picked band parameters; both or neither.
  std::optional<double> gamma1;
  std::optional<double> gamma2;
  std::size_t min_fit_points = 3;
  std::uint64_t seed = 0;
  std::string out_dir = ".";
  std::string format = "csv";
  Execution execution = Execution::parallel;
  /// CSV of (x, y) pairs for fit and band; generated from series[0] when empty.
  std::string input;
};

/// Defaults for each experiment, matching the documented reference runs.
ExperimentConfig default_config(ExperimentKind kind);

/// Throws ConfigError on any violated precondition.
void validate(const ExperimentConfig& config);

/// Overlays the JSON document onto default_config(kind of the document).
/// Unknown keys are rejected.
ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& config);

struct RawRow {
  std::string series;
  std::size_t size = 0;
  std::size_t replication = 0;
  double value = 0.0;
};

struct Aggregate {
  std::string series;
  std::size_t size = 0;
  MeanSe stat;
};

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

struct ExperimentReport {
  std::string experiment;
  /// Name of the per-replication metric held in RawRow::value.
  std::string metric;
  std::vector<RawRow> raw;
  std::vector<Aggregate> aggregates;
  std::vector<Table> tables;
  /// Experiment-specific diagnostics: slopes, flags, band parameters.
  nlohmann::json summary = nlohmann::json::object();
  nlohmann::json config;
  std::string version = kVersion;
  double wall_seconds = 0.0;
};

/// Mean and standard error per (series, size), in first-seen order.
std::vector<Aggregate> aggregate(const std::vector<RawRow>& raw);

/// Band parameters an experiment uses, and whether they carry the coverage
/// guarantee for the configured noise.
struct ResolvedBand {
  BandParams params;
  bool valid = false;
};
ResolvedBand resolve_band(const ExperimentConfig& config, std::optional<double> alpha);

ExperimentReport run_fit(const ExperimentConfig& config);
ExperimentReport run_band(const ExperimentConfig& config);
ExperimentReport run_coverage(const ExperimentConfig& config);
ExperimentReport run_width(const ExperimentConfig& config);
ExperimentReport run_pieces(const ExperimentConfig& config);
ExperimentReport run_bandit(const ExperimentConfig& config);
ExperimentReport run_figures(const ExperimentConfig& config);

/// Validates, dispatches on config.experiment and stamps timing and config.
ExperimentReport run_experiment(const ExperimentConfig& config);

/// Writes the report under config.out_dir; returns the paths written.
std::vector<std::string> write_report(const ExperimentReport& report, const std::string& out_dir,
                                      const std::string& format);

nlohmann::json report_to_json(const ExperimentReport& report, bool with_rows);

/// Reads (x, y) pairs from a CSV file with an optional header line.
std::vector<DesignPoint> read_design_csv(const std::string& path);

}  // namespace isoband
