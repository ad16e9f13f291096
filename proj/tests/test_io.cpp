#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "helpers.hpp"
#include "soil/io.hpp"

using namespace soil;

namespace {

std::string write_temp(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream out(path);
  out << content;
  return path.string();
}

}  // namespace

TEST_CASE("load_dataset reads a well-formed file") {
  const std::string path = write_temp("soil_ok.csv", "x1,y\n1,2\n2,4.5\n3,6\n");
  const Dataset d = load_dataset(path, "y", Task::regression);
  CHECK(d.n() == 3);
  CHECK(d.p() == 1);
  CHECK(d.names == std::vector<std::string>{"x1"});
  CHECK(d.X(1, 0) == 2.0);
  CHECK(d.y[1] == 4.5);
}

TEST_CASE("load_dataset reports the offending row and column") {
  const std::string path = write_temp("soil_na.csv", "x1,x2,y\n1,2,3\n4,NA,6\n");
  try {
    load_dataset(path, "y", Task::regression);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::parse_error);
    CHECK(std::string(e.what()).find("row 3") != std::string::npos);
    CHECK(std::string(e.what()).find("column 2") != std::string::npos);
  }

  const std::string ragged = write_temp("soil_ragged.csv", "x1,y\n1,2\n3\n");
  CHECK_THROWS_AS(load_dataset(ragged, "y", Task::regression), Error);

  const std::string empty_cell = write_temp("soil_empty.csv", "x1,y\n1,\n2,3\n");
  CHECK_THROWS_AS(load_dataset(empty_cell, "y", Task::regression), Error);
}

TEST_CASE("load_dataset validates the response") {
  const std::string path = write_temp("soil_cls.csv", "x1,y\n1,0\n2,1\n3,2\n");
  try {
    load_dataset(path, "y", Task::classification);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::non_binary_response);
  }

  try {
    load_dataset(path, "missing", Task::regression);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::missing_column);
  }
}

TEST_CASE("json reports round-trip their numbers exactly") {
  Rng rng(401);
  ImportanceTable table;
  table.names = {"a", "b", "c"};
  table.methods = {WeightingMethod::arm, WeightingMethod::bic_p};
  for (int m = 0; m < 2; ++m) {
    Eigen::VectorXd v(3);
    for (int j = 0; j < 3; ++j) v[j] = rng.uniform01();
    table.values.push_back(v);
  }
  const json report = importance_report(12345, json{{"k", "v"}}, table);
  CHECK(report.at("schema_version") == kReportSchemaVersion);
  CHECK(report.at("meta").at("seed") == 12345);

  const json reparsed = json::parse(report.dump(2));
  const auto& entries = reparsed.at("importance");
  REQUIRE(entries.size() == 6);
  int idx = 0;
  for (int m = 0; m < 2; ++m)
    for (int j = 0; j < 3; ++j, ++idx) {
      CHECK(entries[idx].at("value").get<double>() == table.values[m][j]);
      CHECK(entries[idx].at("name").get<std::string>() == table.names[j]);
    }
}

TEST_CASE("17-digit formatting reproduces doubles bit-exactly") {
  Rng rng(402);
  for (int trial = 0; trial < 1000; ++trial) {
    const double x = (rng.uniform01() - 0.5) * std::pow(10.0, rng.uniform_int(20) - 10);
    const std::string s = format_double(x);
    CHECK(std::strtod(s.c_str(), nullptr) == x);
  }
}

TEST_CASE("csv report is one row per method and variable") {
  ImportanceTable table;
  table.names = {"a", "b"};
  table.methods = {WeightingMethod::arm};
  Eigen::VectorXd v(2);
  v << 0.5, 0.25;
  table.values.push_back(v);
  const std::string csv = csv_report(table);
  CHECK(csv == "method,variable,importance\narm,a,0.5\narm,b,0.25\n");
}
