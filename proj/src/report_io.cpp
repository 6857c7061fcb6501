#include <charconv>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>

#include "isoband/experiments.hpp"

namespace isoband {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot write " + path.string());
  }
  out.precision(std::numeric_limits<double>::max_digits10);
  return out;
}

void write_csv_row(std::ostream& out, const std::vector<double>& row) {
  for (std::size_t i = 0; i < row.size(); ++i) {
    out << (i ? "," : "") << row[i];
  }
  out << '\n';
}

std::string join(const std::vector<std::string>& cols) {
  std::string s;
  for (std::size_t i = 0; i < cols.size(); ++i) {
    s += (i ? "," : "") + cols[i];
  }
  return s;
}

bool parse_double(std::string_view text, double& out) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) {
    text.remove_prefix(1);
  }
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r')) {
    text.remove_suffix(1);
  }
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size();
}

}  // namespace

nlohmann::json report_to_json(const ExperimentReport& report, bool with_rows) {
  nlohmann::json j;
  j["experiment"] = report.experiment;
  j["metric"] = report.metric;
  j["version"] = report.version;
  j["wall_seconds"] = report.wall_seconds;
  j["config"] = report.config;
  j["summary"] = report.summary;
  j["aggregates"] = nlohmann::json::array();
  for (const Aggregate& a : report.aggregates) {
    j["aggregates"].push_back(
        {{"series", a.series}, {"size", a.size}, {"mean", a.stat.mean}, {"se", a.stat.se}, {"count", a.stat.count}});
  }
  if (with_rows) {
    j["raw"] = nlohmann::json::array();
    for (const RawRow& r : report.raw) {
      j["raw"].push_back({{"series", r.series}, {"size", r.size}, {"replication", r.replication}, {"value", r.value}});
    }
    j["tables"] = nlohmann::json::object();
    for (const Table& t : report.tables) {
      j["tables"][t.name] = {{"columns", t.columns}, {"rows", t.rows}};
    }
  }
  return j;
}

std::vector<std::string> write_report(const ExperimentReport& report, const std::string& out_dir,
                                      const std::string& format) {
  namespace fs = std::filesystem;
  const fs::path dir(out_dir);
  fs::create_directories(dir);
  std::vector<std::string> written;

  if (format == "json") {
    const fs::path path = dir / (report.experiment + "_report.json");
    auto out = open_out(path);
    out << report_to_json(report, true).dump(2) << '\n';
    written.push_back(path.string());
    return written;
  }

  {
    const fs::path path = dir / (report.experiment + "_raw.csv");
    auto out = open_out(path);
    out << "series,size,replication," << report.metric << '\n';
    for (const RawRow& r : report.raw) {
      out << r.series << ',' << r.size << ',' << r.replication << ',' << r.value << '\n';
    }
    written.push_back(path.string());
  }
  {
    const fs::path path = dir / (report.experiment + "_aggregates.csv");
    auto out = open_out(path);
    out << "series,size,mean,se,count\n";
    for (const Aggregate& a : report.aggregates) {
      out << a.series << ',' << a.size << ',' << a.stat.mean << ',' << a.stat.se << ',' << a.stat.count << '\n';
    }
    written.push_back(path.string());
  }
  for (const Table& t : report.tables) {
    const fs::path path = dir / (t.name + ".csv");
    auto out = open_out(path);
    out << join(t.columns) << '\n';
    for (const auto& row : t.rows) {
      write_csv_row(out, row);
    }
    written.push_back(path.string());
  }
  {
    const fs::path path = dir / (report.experiment + "_summary.json");
    auto out = open_out(path);
    out << report_to_json(report, false).dump(2) << '\n';
    written.push_back(path.string());
  }
  return written;
}

std::vector<DesignPoint> read_design_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot read input file " + path);
  }
  std::vector<DesignPoint> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) {
      continue;
    }
    const auto comma = line.find(',');
    DesignPoint p;
    const bool ok = comma != std::string::npos &&
                    parse_double(std::string_view(line).substr(0, comma), p.x) &&
                    parse_double(std::string_view(line).substr(comma + 1, line.find(',', comma + 1) - comma - 1), p.y);
    if (!ok) {
      if (line_no == 1) {
        continue;  // header
      }
      throw ConfigError(path + ":" + std::to_string(line_no) + ": expected two numeric columns x,y");
    }
    out.push_back(p);
  }
  return out;
}

}  // namespace isoband
