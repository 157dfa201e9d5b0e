#include "qmem/report.hpp"

#include <cmath>

namespace qmem {

ScalarCheck make_check(const std::string& name, double numeric, double analytic,
                       double tolerance) {
  ScalarCheck c;
  c.name = name;
  c.numeric = numeric;
  c.analytic = analytic;
  c.tolerance = tolerance;
  const double scale = std::abs(analytic) > 1e-12 ? std::abs(analytic) : 1.0;
  c.rel_dev = std::abs(numeric - analytic) / scale;
  c.pass = std::isfinite(numeric) && c.rel_dev <= tolerance;
  return c;
}

bool ScenarioReport::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

const Table* ScenarioReport::table(const std::string& name) const {
  for (const auto& t : tables)
    if (t.name == name) return &t;
  return nullptr;
}

}  // namespace qmem
