#pragma once

#include <string>
#include <vector>

namespace qflag {

struct RunConfig {
  double q = 0.5;
  int n = 3;
  int m_max = 40;
  int shell = -1;     // suite default when negative
  double tol = -1.0;  // suite default when negative
  std::vector<int> k_values;  // phase-asymptotics; empty means 1..5
  int l = -1;
  int m = -1;
};

struct Check {
  std::string name;
  std::string anchor;  // the statement being checked
  double value = 0.0;
  double bound = 0.0;
  bool pass = false;
};

struct SuiteReport {
  std::string suite;
  double q = 0.5;
  std::vector<Check> checks;
  std::vector<std::string> notes;  // informational output, never asserted

  bool passed() const;
};

const std::vector<std::string>& suite_names();

// Throws std::invalid_argument for an unknown suite.
SuiteReport run_suite(const std::string& name, const RunConfig& cfg);

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  std::string csv() const;
  std::string json() const;
};

const std::vector<std::string>& table_names();

// Throws std::invalid_argument for an unknown table.
Table make_table(const std::string& name, const RunConfig& cfg);

std::string report_json(const SuiteReport& report);
std::string report_csv(const SuiteReport& report);

}  // namespace qflag
