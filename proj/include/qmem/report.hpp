#pragma once

#include <string>
#include <utility>
#include <vector>

namespace qmem {

// One numeric result with its analytic counterpart and declared tolerance.
struct ScalarCheck {
  std::string name;
  double numeric = 0;
  double analytic = 0;
  double rel_dev = 0;
  double tolerance = 0;
  bool pass = false;
};

ScalarCheck make_check(const std::string& name, double numeric, double analytic,
                       double tolerance);

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

struct ScenarioReport {
  std::string scenario;
  std::vector<std::pair<std::string, double>> params_echo;
  std::vector<Table> tables;
  std::vector<ScalarCheck> checks;
  std::vector<std::string> warnings;

  bool all_pass() const;
  const Table* table(const std::string& name) const;
};

}  // namespace qmem
