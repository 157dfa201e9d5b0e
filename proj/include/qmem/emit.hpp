#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qmem/config.hpp"
#include "qmem/report.hpp"

namespace qmem {

inline constexpr const char* tool_version = "0.1.0";

// Deterministic, locale-independent number rendering: 12 significant digits.
std::string format_number(double v);

// Runs the configured scenario.
ScenarioReport run_scenario(const RunConfig& cfg);

struct EmitResult {
  std::vector<std::string> files;
  bool tolerances_pass = false;
};

// Writes the report. CSV produces <out> with the primary table plus
// <stem>_checks.csv and, when present, <stem>_spectrum.csv; JSON produces one
// document embedding the config echo. Regime warnings go to stderr only.
EmitResult emit_report(const ScenarioReport& rep, const RunConfig& cfg,
                       const std::string& out_path, OutputFormat format);

// run + emit with CLI overrides; returns the process exit code
// (0 pass, 1 tolerance failure; ConfigError/NumericError propagate).
int run_and_emit(const RunConfig& cfg, const std::string& out_override,
                 std::optional<OutputFormat> format_override);

}  // namespace qmem
