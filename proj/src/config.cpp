#include "qmem/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <set>
#include <sstream>

namespace qmem {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(int line, const std::string& msg) {
  throw ConfigError("line " + std::to_string(line) + ": " + msg);
}

bool valid_key(const std::string& k) {
  if (k.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(k[0])) && k[0] != '_') return false;
  return std::all_of(k.begin(), k.end(), [](unsigned char c) {
    return std::isalnum(c) || c == '_';
  });
}

double parse_number(const std::string& value, int line, const std::string& key) {
  const std::string v = trim(value);
  char* end = nullptr;
  const double x = std::strtod(v.c_str(), &end);
  if (end != v.c_str() + v.size() || v.empty())
    fail(line, "value of '" + key + "' is not a number: '" + v + "'");
  if (!std::isfinite(x)) fail(line, "value of '" + key + "' must be finite");
  return x;
}

bool parse_bool(const std::string& value, int line, const std::string& key) {
  const std::string v = trim(value);
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  fail(line, "value of '" + key + "' must be true or false");
}

// Typed access with required-key and unknown-key bookkeeping.
class SectionReader {
 public:
  SectionReader(const RawConfig& raw, const std::string& name, bool required)
      : name_(name), section_(raw.section(name)) {
    if (required && !section_) throw ConfigError("missing [" + name + "] section");
  }

  bool exists() const { return section_ != nullptr; }
  int line() const { return section_ ? section_->line : 0; }

  bool has(const std::string& key) const { return entry(key) != nullptr; }

  double number(const std::string& key) {
    const auto* e = require(key);
    return parse_number(e->value, e->line, key);
  }
  double number_or(const std::string& key, double fallback) {
    const auto* e = entry(key);
    if (!e) return fallback;
    used_.insert(key);
    return parse_number(e->value, e->line, key);
  }
  bool flag_or(const std::string& key, bool fallback) {
    const auto* e = entry(key);
    if (!e) return fallback;
    used_.insert(key);
    return parse_bool(e->value, e->line, key);
  }
  std::string text(const std::string& key) { return trim(require(key)->value); }
  std::string text_or(const std::string& key, const std::string& fallback) {
    const auto* e = entry(key);
    if (!e) return fallback;
    used_.insert(key);
    return trim(e->value);
  }
  int key_line(const std::string& key) const {
    const auto* e = entry(key);
    return e ? e->line : 0;
  }

  void check(bool ok, const std::string& key, const std::string& msg) {
    if (!ok) fail(key_line(key) ? key_line(key) : line(), "'" + key + "': " + msg);
  }

  void reject_unknown() const {
    if (!section_) return;
    for (const auto& e : section_->entries)
      if (!used_.count(e.key))
        fail(e.line, "unknown key '" + e.key + "' in [" + name_ + "]");
  }

 private:
  const RawConfig::Entry* entry(const std::string& key) const {
    if (!section_) return nullptr;
    for (const auto& e : section_->entries)
      if (e.key == key) return &e;
    return nullptr;
  }
  const RawConfig::Entry* require(const std::string& key) {
    const auto* e = entry(key);
    if (!e)
      throw ConfigError("missing key '" + key + "' in [" + name_ + "] section");
    used_.insert(key);
    return e;
  }

  std::string name_;
  const RawConfig::Section* section_;
  std::set<std::string> used_;
};

}  // namespace

const RawConfig::Section* RawConfig::section(const std::string& name) const {
  for (const auto& s : sections)
    if (s.name == name) return &s;
  return nullptr;
}

const RawConfig::Entry* RawConfig::find(const std::string& section_name,
                                        const std::string& key) const {
  const Section* s = section(section_name);
  if (!s) return nullptr;
  for (const auto& e : s->entries)
    if (e.key == key) return &e;
  return nullptr;
}

RawConfig parse_raw_config(const std::string& text) {
  RawConfig raw;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  RawConfig::Section* current = nullptr;

  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    const std::string t = trim(line);
    if (t.empty()) continue;

    if (t.front() == '[') {
      if (t.back() != ']') fail(lineno, "unterminated section header");
      const std::string name = trim(t.substr(1, t.size() - 2));
      if (!valid_key(name)) fail(lineno, "invalid section name '" + name + "'");
      if (raw.section(name)) fail(lineno, "duplicate section [" + name + "]");
      raw.sections.push_back({name, lineno, {}});
      current = &raw.sections.back();
      continue;
    }

    const auto eq = t.find('=');
    if (eq == std::string::npos) fail(lineno, "expected 'key = value'");
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (!valid_key(key)) fail(lineno, "invalid key '" + key + "'");
    if (value.empty()) fail(lineno, "empty value for '" + key + "'");
    if (!current) fail(lineno, "'" + key + "' appears outside any section");
    for (const auto& e : current->entries)
      if (e.key == key) fail(lineno, "duplicate key '" + key + "'");
    current->entries.push_back({key, value, lineno});
  }
  return raw;
}

std::string render_config(const RawConfig& raw) {
  std::string out;
  for (const auto& s : raw.sections) {
    out += "[" + s.name + "]\n";
    for (const auto& e : s.entries) out += e.key + " = " + e.value + "\n";
  }
  return out;
}

namespace {

InteractionMode parse_mode_section(const RawConfig& raw, SystemParams& params) {
  SectionReader sec(raw, "mode", true);
  const std::string type = sec.text("type");
  InteractionMode mode;
  if (type == "eit") {
    mode = InteractionMode::eit();
    const double delta = sec.number_or("delta", 0.0);
    sec.check(delta == 0.0, "delta", "EIT requires zero one-photon detuning");
  } else if (type == "raman") {
    const double delta = sec.number("delta");
    sec.check(std::abs(delta) >= raman_min_detuning_ratio, "delta",
              "Raman requires |delta| >= 10 (in units of gamma)");
    mode = InteractionMode::raman(delta);
    params.delta1 = delta;
    params.delta2 = delta;
  } else {
    fail(sec.key_line("type"), "mode type must be 'eit' or 'raman'");
  }
  sec.reject_unknown();
  return mode;
}

SystemParams parse_system_section(const RawConfig& raw, const InteractionMode& mode,
                                  bool& derived_style) {
  SectionReader sec(raw, "system", true);
  const bool has_raw = sec.has("g") || sec.has("omega_rabi");
  const bool has_derived = sec.has("C") || sec.has("gamma_pump") || sec.has("gamma_eff");
  if (has_raw && has_derived) {
    int line = 0;
    for (const char* k : {"C", "gamma_pump", "gamma_eff"})
      if (sec.key_line(k)) line = std::max(line, sec.key_line(k));
    fail(line, "conflicting parameter styles: give raw (g, n_atoms, omega_rabi, ...) "
               "or derived (C, gamma_pump), not both");
  }
  if (!has_raw && !has_derived)
    throw ConfigError("[system] must specify either raw or derived parameters");

  SystemParams p;
  p.gamma = 1.0;  // the unit
  derived_style = has_derived;

  if (!derived_style) {
    p.g = sec.number("g");
    p.n_atoms = sec.number("n_atoms");
    p.omega_rabi = sec.number("omega_rabi");
    p.gamma0 = sec.number("gamma0");
    p.kappa = sec.number("kappa");
    p.tau = sec.number("tau");
  } else {
    const double coop = sec.number("C");
    sec.check(coop > 0, "C", "cooperativity must be positive");
    if (sec.has("gamma_pump") && sec.has("gamma_eff"))
      fail(sec.key_line("gamma_eff"), "give gamma_pump or gamma_eff, not both");
    p.gamma0 = sec.number("gamma0");
    sec.check(p.gamma0 >= 0, "gamma0", "must be non-negative");
    double pump = 0;
    if (sec.has("gamma_eff")) {
      const double ge = sec.number("gamma_eff");
      sec.check(ge >= p.gamma0, "gamma_eff", "must be at least gamma0");
      pump = ge - p.gamma0;
    } else {
      pump = sec.number("gamma_pump");
      sec.check(pump >= 0, "gamma_pump", "must be non-negative");
    }
    p.kappa = sec.number_or("kappa", 10.0);
    p.tau = sec.number_or("tau", 0.01);
    p.n_atoms = sec.number_or("n_atoms", 100.0);
    sec.check(p.n_atoms >= 1, "n_atoms", "derived style needs at least one atom");

    // canonical raw set: C pins g, the pump rate pins omega_rabi
    p.g = std::sqrt(2.0 * coop * p.kappa * p.gamma * p.tau / p.n_atoms);
    const double denom = 1.0 + 2.0 * coop;
    if (mode.kind == Mode::EIT) {
      p.omega_rabi = std::sqrt(p.gamma * pump * denom);
    } else {
      p.omega_rabi = std::abs(mode.detuning) * std::sqrt(pump / (denom * p.gamma));
      p.delta1 = mode.detuning;
      p.delta2 = mode.detuning;
    }
  }
  sec.reject_unknown();

  try {
    validate_params(p);
  } catch (const ConfigError& e) {
    fail(sec.line(), std::string("invalid [system] parameters: ") + e.what());
  }
  return p;
}

InputFieldSpec squeezed_input(SectionReader& sec) {
  if (sec.has("r") && sec.has("r_in"))
    fail(sec.key_line("r_in"), "give r or r_in, not both");
  double r = 0;
  if (sec.has("r_in")) {
    const double frac = sec.number("r_in");
    sec.check(frac >= 0 && frac < 1, "r_in", "squeezing fraction must lie in [0, 1)");
    r = -0.5 * std::log(1.0 - frac);
  } else {
    r = sec.number_or("r", 0.0);
    sec.check(r >= 0, "r", "must be non-negative");
  }
  const double angle = sec.number_or("angle", 0.0);
  return r > 0 ? InputFieldSpec::squeezed(r, angle) : InputFieldSpec::vacuum();
}

ScenarioConfig parse_scenario_section(const RawConfig& raw) {
  SectionReader sec(raw, "scenario", true);
  const std::string type = sec.text("type");
  ScenarioConfig out;

  auto positive_if_given = [&sec](const char* key, double value) {
    if (sec.has(key))
      sec.check(value > 0, key, "must be positive");
  };

  if (type == "write") {
    WriteScenario sc;
    sc.input = squeezed_input(sec);
    sc.opt.duration = sec.number_or("duration", -1);
    positive_if_given("duration", sc.opt.duration);
    sc.opt.dt = sec.number_or("dt", -1);
    positive_if_given("dt", sc.opt.dt);
    sc.opt.spectrum_points = static_cast<int>(sec.number_or("omega_points", 0));
    sec.check(sc.opt.spectrum_points >= 0, "omega_points", "must be non-negative");
    sc.opt.omega_max = sec.number_or("omega_max", -1);
    positive_if_given("omega_max", sc.opt.omega_max);
    out = sc;
  } else if (type == "store_readout") {
    StoreReadoutScenario sc;
    sc.input = squeezed_input(sec);
    sc.opt.t_write = sec.number_or("t_write", -1);
    positive_if_given("t_write", sc.opt.t_write);
    sc.opt.t_store = sec.number_or("t_store", 0.0);
    sec.check(sc.opt.t_store >= 0, "t_store", "must be non-negative");
    sc.opt.t_read = sec.number_or("t_read", -1);
    positive_if_given("t_read", sc.opt.t_read);
    sc.opt.filter_rate = sec.number_or("filter_rate", -1);
    if (sec.has("filter_rate"))
      sec.check(sc.opt.filter_rate >= 0, "filter_rate", "must be non-negative");
    sc.opt.dt = sec.number_or("dt", -1);
    positive_if_given("dt", sc.opt.dt);
    out = sc;
  } else if (type == "epr") {
    EprScenario sc;
    const double i_f = sec.number("i_f");
    sec.check(i_f > 0 && i_f <= 2, "i_f", "input inseparability must lie in (0, 2]");
    sc.input = InputFieldSpec::epr(i_f);
    sc.opt.duration = sec.number_or("duration", -1);
    positive_if_given("duration", sc.opt.duration);
    sc.opt.dt = sec.number_or("dt", -1);
    positive_if_given("dt", sc.opt.dt);
    out = sc;
  } else if (type == "repeater") {
    RepeaterScenario sc;
    if (sec.has("r1") && sec.has("sq1"))
      fail(sec.key_line("sq1"), "give r1 or sq1, not both");
    if (sec.has("sq1")) {
      const double frac = sec.number("sq1");
      sec.check(frac >= 0 && frac < 1, "sq1", "squeezing fraction must lie in [0, 1)");
      sc.opt.r1 = -0.5 * std::log(1.0 - frac);
    } else {
      sc.opt.r1 = sec.number("r1");
      sec.check(sc.opt.r1 >= 0, "r1", "must be non-negative");
    }
    sc.opt.t_max = sec.number_or("t_max", -1);
    positive_if_given("t_max", sc.opt.t_max);
    sc.opt.n_points = static_cast<int>(sec.number_or("n_points", 400));
    sec.check(sc.opt.n_points >= 10, "n_points", "need at least 10 points");
    sc.opt.rate_ratio = sec.number_or("rate_ratio", 1.0);
    sec.check(sc.opt.rate_ratio > 0, "rate_ratio", "must be positive");
    sc.opt.write_first = sec.flag_or("write_first", false);
    sc.opt.r_in = sec.number_or("r_in", -1);
    if (sec.has("r_in")) sec.check(sc.opt.r_in >= 0, "r_in", "must be non-negative");
    sc.opt.dt = sec.number_or("dt", -1);
    positive_if_given("dt", sc.opt.dt);
    out = sc;
  } else {
    fail(sec.key_line("type"),
         "scenario type must be write, store_readout, epr or repeater");
  }
  sec.reject_unknown();
  return out;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  cfg.raw = parse_raw_config(text);

  for (const auto& s : cfg.raw.sections) {
    if (s.name != "system" && s.name != "mode" && s.name != "scenario" &&
        s.name != "output")
      fail(s.line, "unknown section [" + s.name + "]");
  }

  cfg.mode = parse_mode_section(cfg.raw, cfg.params);
  cfg.params = parse_system_section(cfg.raw, cfg.mode, cfg.derived_style);
  if (cfg.mode.kind == Mode::Raman) {
    cfg.params.delta1 = cfg.mode.detuning;
    cfg.params.delta2 = cfg.mode.detuning;
  }
  cfg.scenario = parse_scenario_section(cfg.raw);

  SectionReader out(cfg.raw, "output", false);
  if (out.exists()) {
    cfg.has_output = true;
    cfg.output.path = out.text("path");
    const std::string fmt = out.text_or("format", "csv");
    if (fmt == "csv")
      cfg.output.format = OutputFormat::Csv;
    else if (fmt == "json")
      cfg.output.format = OutputFormat::Json;
    else
      fail(out.key_line("format"), "format must be csv or json");
    out.reject_unknown();
  }
  return cfg;
}

std::vector<std::pair<double, std::string>> expand_sweep(const std::string& text,
                                                         const std::string& key) {
  RawConfig raw = parse_raw_config(text);
  RawConfig::Entry* target = nullptr;
  for (auto& s : raw.sections)
    for (auto& e : s.entries)
      if (e.key == key) {
        if (target) throw ConfigError("sweep key '" + key + "' appears more than once");
        target = &e;
      }
  if (!target) throw ConfigError("sweep key '" + key + "' not found in config");

  const std::string& v = target->value;
  const auto c1 = v.find(':');
  const auto c2 = v.find(':', c1 == std::string::npos ? c1 : c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos)
    fail(target->line, "sweep key '" + key + "' must hold a lo:hi:step range");
  const double lo = parse_number(v.substr(0, c1), target->line, key);
  const double hi = parse_number(v.substr(c1 + 1, c2 - c1 - 1), target->line, key);
  const double step = parse_number(v.substr(c2 + 1), target->line, key);
  if (step <= 0 || hi < lo) fail(target->line, "sweep range must satisfy lo <= hi, step > 0");

  std::vector<std::pair<double, std::string>> points;
  for (double x = lo; x <= hi * (1.0 + 1e-12); x += step) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    target->value = buf;
    points.emplace_back(x, render_config(raw));
  }
  return points;
}

}  // namespace qmem
