#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qmem/params.hpp"
#include "qmem/protocols.hpp"

namespace qmem {

// Lexical form of a config file: ordered sections of `key = value` entries
// with line numbers kept for diagnostics. `#` starts a comment.
struct RawConfig {
  struct Entry {
    std::string key;
    std::string value;
    int line = 0;
  };
  struct Section {
    std::string name;
    int line = 0;
    std::vector<Entry> entries;
  };
  std::vector<Section> sections;

  const Section* section(const std::string& name) const;
  const Entry* find(const std::string& section, const std::string& key) const;
};

RawConfig parse_raw_config(const std::string& text);

// Canonical rendering of a raw config (used for sweep expansion and echo).
std::string render_config(const RawConfig& raw);

enum class OutputFormat { Csv, Json };

struct OutputSpec {
  std::string path;
  OutputFormat format = OutputFormat::Csv;
};

struct WriteScenario {
  InputFieldSpec input;
  WriteOptions opt;
};
struct StoreReadoutScenario {
  InputFieldSpec input;
  StoreReadoutOptions opt;
};
struct EprScenario {
  InputFieldSpec input;
  EprOptions opt;
};
struct RepeaterScenario {
  RepeaterOptions opt;
};

using ScenarioConfig =
    std::variant<WriteScenario, StoreReadoutScenario, EprScenario, RepeaterScenario>;

// A fully validated run configuration. System parameters are given either raw
// (g, n_atoms, omega_rabi, gamma0, kappa, tau) or derived (C, gamma_pump or
// gamma_eff, gamma0, with optional kappa/tau/n_atoms); the derived style is
// back-solved to a canonical raw set. gamma = 1 is the unit everywhere.
struct RunConfig {
  SystemParams params;
  InteractionMode mode;
  bool derived_style = false;
  ScenarioConfig scenario;
  OutputSpec output;
  bool has_output = false;
  RawConfig raw;
};

RunConfig parse_config(const std::string& text);

// Sweep expansion: the named key must hold a "lo:hi:step" range; returns the
// per-point (value, config text) pairs with the range replaced by each value.
std::vector<std::pair<double, std::string>> expand_sweep(const std::string& text,
                                                         const std::string& key);

}  // namespace qmem
