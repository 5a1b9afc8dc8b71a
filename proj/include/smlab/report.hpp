#pragma once

// Run reports and their CSV/JSON serialization.
//
// CSV layout: a fixed metric header, one row per metric, floats at 17
// significant digits. A report may also carry a rectangular data block
// (plot data, tables); with format csv it goes to a sibling *_data.csv
// file, or becomes the main file when there are no metric rows.
// JSON carries the whole report in one document and round-trips exactly.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "errors.hpp"

namespace smlab {

inline constexpr const char* kMetricsCsvHeader = "metric,value,reference,ratio";

struct MetricRow {
  std::string metric;
  double value = 0.0;
  double reference = std::numeric_limits<double>::quiet_NaN();  // NaN: no reference
  double ratio = std::numeric_limits<double>::quiet_NaN();
};

struct RunReport {
  std::string experiment;
  std::vector<std::pair<std::string, std::string>> params;  // config echo, stable order
  std::vector<MetricRow> metrics;
  std::vector<std::string> data_columns;
  std::vector<std::vector<double>> data_rows;  // each row has data_columns.size() entries
  std::vector<std::string> notes;
  std::uint64_t seed = 0;
  std::string seed_lineage;
  double wall_time_s = 0.0;
  bool checks_passed = true;
};

namespace detail {

inline bool double_eq_bits(double a, double b) {
  if (std::isnan(a) && std::isnan(b)) return true;
  return a == b && std::signbit(a) == std::signbit(b);
}

inline std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace detail

inline bool operator==(const MetricRow& a, const MetricRow& b) {
  return a.metric == b.metric && detail::double_eq_bits(a.value, b.value) &&
         detail::double_eq_bits(a.reference, b.reference) &&
         detail::double_eq_bits(a.ratio, b.ratio);
}

inline bool operator==(const RunReport& a, const RunReport& b) {
  if (!(a.experiment == b.experiment && a.params == b.params && a.metrics == b.metrics &&
        a.data_columns == b.data_columns && a.notes == b.notes && a.seed == b.seed &&
        a.seed_lineage == b.seed_lineage && a.checks_passed == b.checks_passed))
    return false;
  if (!detail::double_eq_bits(a.wall_time_s, b.wall_time_s)) return false;
  if (a.data_rows.size() != b.data_rows.size()) return false;
  for (std::size_t i = 0; i < a.data_rows.size(); ++i) {
    if (a.data_rows[i].size() != b.data_rows[i].size()) return false;
    for (std::size_t j = 0; j < a.data_rows[i].size(); ++j)
      if (!detail::double_eq_bits(a.data_rows[i][j], b.data_rows[i][j])) return false;
  }
  return true;
}

// Statistical content only (used by the determinism contract, which does not
// cover wall time).
inline bool same_statistics(const RunReport& a, const RunReport& b) {
  RunReport ta = a, tb = b;
  ta.wall_time_s = tb.wall_time_s = 0.0;
  return ta == tb;
}

namespace detail {

inline void write_metrics_csv(std::ostream& os, const RunReport& r) {
  os << kMetricsCsvHeader << '\n';
  for (const auto& m : r.metrics) {
    os << m.metric << ',' << fmt17(m.value) << ',';
    if (!std::isnan(m.reference)) os << fmt17(m.reference);
    os << ',';
    if (!std::isnan(m.ratio)) os << fmt17(m.ratio);
    os << '\n';
  }
}

inline void write_data_csv(std::ostream& os, const RunReport& r) {
  for (std::size_t j = 0; j < r.data_columns.size(); ++j)
    os << (j ? "," : "") << r.data_columns[j];
  os << '\n';
  for (const auto& row : r.data_rows) {
    for (std::size_t j = 0; j < row.size(); ++j) os << (j ? "," : "") << fmt17(row[j]);
    os << '\n';
  }
}

inline std::string data_sibling_path(const std::string& out) {
  const auto dot = out.rfind('.');
  const auto slash = out.find_last_of("/\\");
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
    return out + "_data.csv";
  return out.substr(0, dot) + "_data" + out.substr(dot);
}

}  // namespace detail

inline nlohmann::ordered_json report_to_json(const RunReport& r) {
  nlohmann::ordered_json j;
  j["experiment"] = r.experiment;
  auto& p = j["params"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.params) p[k] = v;
  auto& ms = j["metrics"] = nlohmann::ordered_json::array();
  for (const auto& m : r.metrics) {
    nlohmann::ordered_json row;
    row["metric"] = m.metric;
    row["value"] = m.value;
    if (!std::isnan(m.reference)) row["reference"] = m.reference;
    if (!std::isnan(m.ratio)) row["ratio"] = m.ratio;
    ms.push_back(std::move(row));
  }
  if (!r.data_columns.empty()) {
    j["data"]["columns"] = r.data_columns;
    j["data"]["rows"] = r.data_rows;
  }
  j["notes"] = r.notes;
  j["seed"] = r.seed;
  j["seed_lineage"] = r.seed_lineage;
  j["wall_time_s"] = r.wall_time_s;
  j["checks_passed"] = r.checks_passed;
  return j;
}

inline RunReport report_from_json(const std::string& text) {
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("report_from_json: ") + e.what());
  }
  try {
    RunReport r;
    r.experiment = j.at("experiment").get<std::string>();
    for (const auto& [k, v] : j.at("params").items())
      r.params.emplace_back(k, v.get<std::string>());
    for (const auto& row : j.at("metrics")) {
      MetricRow m;
      m.metric = row.at("metric").get<std::string>();
      m.value = row.at("value").get<double>();
      if (row.contains("reference")) m.reference = row["reference"].get<double>();
      if (row.contains("ratio")) m.ratio = row["ratio"].get<double>();
      r.metrics.push_back(std::move(m));
    }
    if (j.contains("data")) {
      r.data_columns = j["data"].at("columns").get<std::vector<std::string>>();
      r.data_rows = j["data"].at("rows").get<std::vector<std::vector<double>>>();
    }
    r.notes = j.at("notes").get<std::vector<std::string>>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.seed_lineage = j.at("seed_lineage").get<std::string>();
    r.wall_time_s = j.at("wall_time_s").get<double>();
    r.checks_passed = j.at("checks_passed").get<bool>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("report_from_json: malformed report: ") + e.what());
  }
}

// Writes the report; returns the paths written (empty when writing to stdout).
// format "csv": metric rows to `out`; a data block goes to a *_data.csv
// sibling, or to `out` itself if there are no metric rows.
// format "json": the whole report as one document.
inline std::vector<std::string> emit_report(const RunReport& r, const std::string& format,
                                            const std::string& out) {
  if (format != "csv" && format != "json")
    throw ConfigError("emit_report: format must be csv or json, got '" + format + "'");
  std::vector<std::string> written;
  auto open = [&](const std::string& path) {
    std::ofstream f(path);
    if (!f) throw IoError("emit_report: cannot open '" + path + "' for writing");
    return f;
  };
  if (format == "json") {
    const std::string text = report_to_json(r).dump(2);
    if (out.empty()) {
      std::cout << text << '\n';
    } else {
      auto f = open(out);
      f << text << '\n';
      if (!f) throw IoError("emit_report: write failed on '" + out + "'");
      written.push_back(out);
    }
    return written;
  }
  const bool data_only = r.metrics.empty() && !r.data_columns.empty();
  if (out.empty()) {
    if (data_only) {
      detail::write_data_csv(std::cout, r);
    } else {
      detail::write_metrics_csv(std::cout, r);
      if (!r.data_columns.empty()) {
        std::cout << '\n';
        detail::write_data_csv(std::cout, r);
      }
    }
    return written;
  }
  if (data_only) {
    auto f = open(out);
    detail::write_data_csv(f, r);
    if (!f) throw IoError("emit_report: write failed on '" + out + "'");
    written.push_back(out);
    return written;
  }
  {
    auto f = open(out);
    detail::write_metrics_csv(f, r);
    if (!f) throw IoError("emit_report: write failed on '" + out + "'");
    written.push_back(out);
  }
  if (!r.data_columns.empty()) {
    const std::string dpath = detail::data_sibling_path(out);
    auto f = open(dpath);
    detail::write_data_csv(f, r);
    if (!f) throw IoError("emit_report: write failed on '" + dpath + "'");
    written.push_back(dpath);
  }
  return written;
}

}  // namespace smlab
