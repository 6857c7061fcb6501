#include <algorithm>
#include <array>
#include <cmath>
#include <set>
#include <string>

#include "isoband/experiments.hpp"

namespace isoband {

namespace {

constexpr std::array<std::pair<ExperimentKind, const char*>, 7> kKinds{{
    {ExperimentKind::fit, "fit"},
    {ExperimentKind::band, "band"},
    {ExperimentKind::coverage, "coverage"},
    {ExperimentKind::width, "width"},
    {ExperimentKind::pieces, "pieces"},
    {ExperimentKind::bandit, "bandit"},
    {ExperimentKind::figures, "figures"},
}};

const std::vector<std::size_t> kSizeGrid{250, 500, 1000, 2000, 4000};

bool needs_band(ExperimentKind kind) {
  return kind == ExperimentKind::band || kind == ExperimentKind::coverage || kind == ExperimentKind::width ||
         kind == ExperimentKind::figures;
}

void require(bool ok, const std::string& message) {
  if (!ok) {
    throw ConfigError(message);
  }
}

}  // namespace

std::string to_string(ExperimentKind kind) {
  for (const auto& [k, name] : kKinds) {
    if (k == kind) {
      return name;
    }
  }
  return "unknown";
}

ExperimentKind parse_experiment_kind(const std::string& name) {
  for (const auto& [k, n] : kKinds) {
    if (name == n) {
      return k;
    }
  }
  throw ConfigError("unknown experiment '" + name + "'");
}

ExperimentConfig default_config(ExperimentKind kind) {
  ExperimentConfig c;
  c.experiment = kind;
  c.noise = NoiseSpec::gaussian(0.1);
  switch (kind) {
    case ExperimentKind::fit:
    case ExperimentKind::band:
      c.grid = {500};
      c.series = {{"linear", MonotoneFunction::linear(0.0, 1.0), {}}};
      c.gamma1 = 0.5;
      c.gamma2 = 0.5;
      break;
    case ExperimentKind::coverage:
      c.replications = 1000;
      c.grid = {500};
      c.series = {{"linear", MonotoneFunction::linear(0.0, 1.0), {}}};
      c.alpha = 0.05;
      break;
    case ExperimentKind::width:
      c.replications = 200;
      c.grid = kSizeGrid;
      c.series = {{"increasing", MonotoneFunction::linear(0.0, 1.0), {}},
                  {"step", MonotoneFunction::staircase(5, 0.1, 0.2), {}}};
      c.gamma1 = 0.5;
      c.gamma2 = 0.5;
      break;
    case ExperimentKind::pieces:
      c.replications = 200;
      c.grid = kSizeGrid;
      c.series = {{"increasing", MonotoneFunction::linear(0.0, 1.0), {}},
                  {"step", MonotoneFunction::staircase(2, 0.3, 0.4), {}}};
      break;
    case ExperimentKind::bandit:
      c.replications = 50;
      c.grid = {1000, 4000, 16000};
      c.series = {{"increasing", MonotoneFunction::linear(0.1, 0.6), MonotoneFunction::linear(0.2, 0.6)},
                  {"step", MonotoneFunction::steps({0.5}, {0.1, 0.7}), MonotoneFunction::linear(0.4, 0.0)}};
      break;
    case ExperimentKind::figures:
      c.replications = 200;
      c.grid = {500};
      break;
  }
  return c;
}

void validate(const ExperimentConfig& c) {
  require(c.replications >= 1, "replications must be at least 1");
  require(!c.grid.empty(), "grid must not be empty");
  const std::size_t floor = needs_band(c.experiment) ? 3 : 1;
  for (std::size_t n : c.grid) {
    require(n >= floor, "grid values must be at least " + std::to_string(floor) + " for this experiment");
  }
  require(c.tau > 0.0 && c.tau < 1.0, "tau must lie in (0, 1)");
  require(!c.alpha || (*c.alpha > 0.0 && *c.alpha < 1.0), "alpha must lie in (0, 1)");
  require(c.l_cap > 0.0 && std::isfinite(c.l_cap), "l_cap must be positive");
  require(c.gamma1.has_value() == c.gamma2.has_value(), "gamma1 and gamma2 must be given together");
  require(!c.gamma1 || (*c.gamma1 >= 0.0 && *c.gamma2 >= 0.0), "gamma1 and gamma2 must be non-negative");
  require(c.min_fit_points >= 3, "min_fit_points must be at least 3");
  require(c.format == "csv" || c.format == "json", "format must be csv or json");
  try {
    validate(c.noise);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }

  if (c.experiment == ExperimentKind::figures) {
    return;  // fixed figure configurations
  }
  const bool from_file = !c.input.empty() &&
                         (c.experiment == ExperimentKind::fit || c.experiment == ExperimentKind::band);
  require(from_file || !c.series.empty(), "at least one series is required");
  std::set<std::string> names;
  const double shift = c.noise.is_degenerate() ? 0.0 : noise_quantile(c.noise, QuantileLevel(c.tau));
  for (const Series& s : c.series) {
    require(!s.name.empty(), "series names must not be empty");
    require(names.insert(s.name).second, "duplicate series name '" + s.name + "'");
    try {
      validate(s.f0);
      if (s.f1) {
        validate(*s.f1);
      }
    } catch (const std::invalid_argument& e) {
      throw ConfigError("series '" + s.name + "': " + e.what());
    }
    if (c.experiment == ExperimentKind::bandit) {
      require(s.f1.has_value(), "bandit series '" + s.name + "' needs f1");
    } else {
      const double lo = eval_truth(s.f0, 0.0) + shift;
      const double hi = eval_truth(s.f0, 1.0) + shift;
      require(lo >= 0.0 && hi <= 1.0, "series '" + s.name + "': the tau-quantile of the data leaves [0, 1]");
    }
  }

  const bool derived = !c.gamma1;
  if (derived && (needs_band(c.experiment) || c.experiment == ExperimentKind::bandit)) {
    require(!c.noise.is_degenerate(), "degenerate noise has no derived band parameters; set gamma1 and gamma2");
    require(c.tau == 0.5 || c.experiment == ExperimentKind::bandit,
            "derived band parameters assume the median; set gamma1 and gamma2 for other tau");
    require(c.experiment == ExperimentKind::bandit || c.alpha.has_value(),
            "alpha is required when gamma1 and gamma2 are not given");
  }
  if (c.experiment == ExperimentKind::bandit) {
    require(c.tau == 0.5, "the policy runs at the median");
  }
}

namespace {

template <class T>
void read_if(const nlohmann::json& j, const char* key, T& out) {
  if (j.contains(key)) {
    out = j.at(key).get<T>();
  }
}

template <class T>
void read_optional(const nlohmann::json& j, const char* key, std::optional<T>& out) {
  if (j.contains(key)) {
    out = j.at(key).is_null() ? std::nullopt : std::optional<T>(j.at(key).get<T>());
  }
}

}  // namespace

ExperimentConfig config_from_json(const nlohmann::json& j) {
  static const std::set<std::string> known{"experiment", "replications", "grid",    "series",  "noise",
                                           "tau",        "alpha",        "l_cap",   "gamma1",  "gamma2",
                                           "min_fit_points", "seed",     "out",     "format",  "execution",
                                           "input"};
  require(j.is_object(), "config must be a JSON object");
  for (const auto& item : j.items()) {
    require(known.count(item.key()) == 1, "unknown config key '" + item.key() + "'");
  }
  require(j.contains("experiment"), "config needs an 'experiment' field");
  try {
    ExperimentConfig c = default_config(parse_experiment_kind(j.at("experiment").get<std::string>()));
    read_if(j, "replications", c.replications);
    read_if(j, "grid", c.grid);
    if (j.contains("series")) {
      c.series.clear();
      for (const auto& s : j.at("series")) {
        Series out;
        out.name = s.at("name").get<std::string>();
        out.f0 = s.at("f0").get<MonotoneFunction>();
        if (s.contains("f1")) {
          out.f1 = s.at("f1").get<MonotoneFunction>();
        }
        c.series.push_back(std::move(out));
      }
    }
    read_if(j, "noise", c.noise);
    read_if(j, "tau", c.tau);
    read_optional(j, "alpha", c.alpha);
    read_if(j, "l_cap", c.l_cap);
    read_optional(j, "gamma1", c.gamma1);
    read_optional(j, "gamma2", c.gamma2);
    read_if(j, "min_fit_points", c.min_fit_points);
    read_if(j, "seed", c.seed);
    read_if(j, "out", c.out_dir);
    read_if(j, "format", c.format);
    read_if(j, "input", c.input);
    if (j.contains("execution")) {
      const auto mode = j.at("execution").get<std::string>();
      require(mode == "serial" || mode == "parallel", "execution must be serial or parallel");
      c.execution = mode == "serial" ? Execution::serial : Execution::parallel;
    }
    return c;
  } catch (const ConfigError&) {
    throw;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

nlohmann::json config_to_json(const ExperimentConfig& c) {
  nlohmann::json j;
  j["experiment"] = to_string(c.experiment);
  j["replications"] = c.replications;
  j["grid"] = c.grid;
  j["series"] = nlohmann::json::array();
  for (const Series& s : c.series) {
    nlohmann::json item{{"name", s.name}, {"f0", s.f0}};
    if (s.f1) {
      item["f1"] = *s.f1;
    }
    j["series"].push_back(std::move(item));
  }
  j["noise"] = c.noise;
  j["tau"] = c.tau;
  j["alpha"] = c.alpha ? nlohmann::json(*c.alpha) : nlohmann::json(nullptr);
  j["l_cap"] = c.l_cap;
  j["gamma1"] = c.gamma1 ? nlohmann::json(*c.gamma1) : nlohmann::json(nullptr);
  j["gamma2"] = c.gamma2 ? nlohmann::json(*c.gamma2) : nlohmann::json(nullptr);
  j["min_fit_points"] = c.min_fit_points;
  j["seed"] = c.seed;
  j["out"] = c.out_dir;
  j["format"] = c.format;
  j["execution"] = c.execution == Execution::serial ? "serial" : "parallel";
  j["input"] = c.input;
  return j;
}

}  // namespace isoband
