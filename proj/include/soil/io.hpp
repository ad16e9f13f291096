#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "soil/errors.hpp"
#include "soil/importance.hpp"
#include "soil/study.hpp"
#include "soil/types.hpp"

namespace soil {

using json = nlohmann::ordered_json;

inline constexpr int kReportSchemaVersion = 1;

namespace detail {

inline std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') cells.push_back("");
  return cells;
}

// Strict whole-cell numeric parse; row/col are 1-based for error messages.
inline double parse_cell(const std::string& cell, std::size_t row, std::size_t col) {
  if (cell.empty())
    fail(Errc::parse_error,
         "missing value at row " + std::to_string(row) + ", column " + std::to_string(col));
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(cell, &used);
  } catch (const std::exception&) {
    fail(Errc::parse_error, "unparseable value '" + cell + "' at row " + std::to_string(row) +
                                ", column " + std::to_string(col));
  }
  if (used != cell.size())
    fail(Errc::parse_error, "unparseable value '" + cell + "' at row " + std::to_string(row) +
                                ", column " + std::to_string(col));
  if (!std::isfinite(value))
    fail(Errc::parse_error, "non-finite value at row " + std::to_string(row) + ", column " +
                                std::to_string(col));
  return value;
}

}  // namespace detail

/// Reads a comma-separated file with a header row. The response column is
/// extracted by name; every other column becomes a predictor, in file order.
inline Dataset load_dataset(const std::string& path, const std::string& response_column,
                            Task task) {
  std::ifstream in(path);
  if (!in) fail(Errc::parse_error, "cannot open '" + path + "'");

  std::string line;
  if (!std::getline(in, line)) fail(Errc::parse_error, "empty file '" + path + "'");
  const std::vector<std::string> header = detail::split_csv_line(line);

  int response_index = -1;
  for (std::size_t j = 0; j < header.size(); ++j)
    if (header[j] == response_column) response_index = static_cast<int>(j);
  if (response_index < 0)
    fail(Errc::missing_column, "response column '" + response_column + "' not found");

  std::vector<std::vector<double>> rows;
  std::size_t row_number = 1;  // header was row 1
  while (std::getline(in, line)) {
    ++row_number;
    if (detail::trim(line).empty()) continue;
    const std::vector<std::string> cells = detail::split_csv_line(line);
    if (cells.size() != header.size())
      fail(Errc::parse_error, "row " + std::to_string(row_number) + " has " +
                                  std::to_string(cells.size()) + " cells, expected " +
                                  std::to_string(header.size()));
    std::vector<double> parsed(cells.size());
    for (std::size_t j = 0; j < cells.size(); ++j)
      parsed[j] = detail::parse_cell(cells[j], row_number, j + 1);
    rows.push_back(std::move(parsed));
  }

  const auto n = static_cast<Eigen::Index>(rows.size());
  const auto p = static_cast<Eigen::Index>(header.size()) - 1;
  Dataset data;
  data.task = task;
  data.X.resize(n, p);
  data.y.resize(n);
  data.names.clear();
  for (std::size_t j = 0; j < header.size(); ++j)
    if (static_cast<int>(j) != response_index) data.names.push_back(header[j]);
  for (Eigen::Index i = 0; i < n; ++i) {
    Eigen::Index t = 0;
    for (std::size_t j = 0; j < header.size(); ++j) {
      if (static_cast<int>(j) == response_index)
        data.y[i] = rows[static_cast<std::size_t>(i)][j];
      else
        data.X(i, t++) = rows[static_cast<std::size_t>(i)][j];
    }
  }
  data.validate();
  return data;
}

/// 17 significant digits: enough to reproduce any double bit-exactly.
inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct ImportanceTable {
  std::vector<std::string> names;
  std::vector<WeightingMethod> methods;
  std::vector<Eigen::VectorXd> values;  // per method, length p
};

inline json importance_report(std::uint64_t seed, const json& config, const ImportanceTable& table,
                              const json& selection = json::array()) {
  json report;
  report["schema_version"] = kReportSchemaVersion;
  report["meta"] = {{"seed", seed}, {"config", config}};
  json importance = json::array();
  for (std::size_t m = 0; m < table.methods.size(); ++m)
    for (Eigen::Index j = 0; j < table.values[m].size(); ++j)
      importance.push_back({{"name", table.names[static_cast<std::size_t>(j)]},
                            {"method", method_name(table.methods[m])},
                            {"value", table.values[m][j]}});
  report["importance"] = importance;
  report["selection"] = selection;
  return report;
}

inline json selection_json(const std::vector<SelectionSummary>& selection) {
  json sel = json::array();
  for (const auto& s : selection)
    sel.push_back({{"method", method_name(s.method)},
                   {"threshold", s.threshold},
                   {"mean_missed_true", s.mean_missed_true},
                   {"mean_over_selected", s.mean_over_selected},
                   {"mean_symmetric_difference", s.mean_symmetric_difference}});
  return sel;
}

inline json study_report(std::uint64_t seed, const json& config, const StudyResult& result) {
  ImportanceTable table{result.names, result.methods, result.mean_importance};
  json report = importance_report(seed, config, table, selection_json(result.selection));
  json se = json::array();
  for (std::size_t m = 0; m < result.methods.size(); ++m)
    for (Eigen::Index j = 0; j < result.stderr_importance[m].size(); ++j)
      se.push_back({{"name", result.names[static_cast<std::size_t>(j)]},
                    {"method", method_name(result.methods[m])},
                    {"stderr", result.stderr_importance[m][j]}});
  report["stderr"] = se;
  json truth = json::array();
  for (const int j : result.true_support) truth.push_back(result.names[static_cast<std::size_t>(j)]);
  report["true_support"] = truth;
  return report;
}

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::parse_error, "cannot write '" + path + "'");
  out << text;
}

inline void write_json_report(const std::string& path, const json& report) {
  write_text(path, report.dump(2) + "\n");
}

/// Flat table, one row per method x variable.
inline std::string csv_report(const ImportanceTable& table,
                              const std::vector<Eigen::VectorXd>* stderrs = nullptr) {
  std::string out = stderrs ? "method,variable,importance,stderr\n" : "method,variable,importance\n";
  for (std::size_t m = 0; m < table.methods.size(); ++m) {
    for (Eigen::Index j = 0; j < table.values[m].size(); ++j) {
      out += method_name(table.methods[m]);
      out += ',';
      out += table.names[static_cast<std::size_t>(j)];
      out += ',';
      out += format_double(table.values[m][j]);
      if (stderrs) {
        out += ',';
        out += format_double((*stderrs)[m][j]);
      }
      out += '\n';
    }
  }
  return out;
}

}  // namespace soil
