#include "qmem/emit.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <json.hpp>

namespace qmem {

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

ScenarioReport run_scenario(const RunConfig& cfg) {
  if (std::holds_alternative<WriteScenario>(cfg.scenario)) {
    const auto& sc = std::get<WriteScenario>(cfg.scenario);
    return run_write(cfg.params, cfg.mode, sc.input, sc.opt);
  }
  if (std::holds_alternative<StoreReadoutScenario>(cfg.scenario)) {
    const auto& sc = std::get<StoreReadoutScenario>(cfg.scenario);
    return run_store_readout(cfg.params, cfg.mode, sc.input, sc.opt);
  }
  if (std::holds_alternative<EprScenario>(cfg.scenario)) {
    const auto& sc = std::get<EprScenario>(cfg.scenario);
    return run_epr(cfg.params, cfg.mode, sc.input, sc.opt);
  }
  const auto& sc = std::get<RepeaterScenario>(cfg.scenario);
  return run_repeater(cfg.params, cfg.mode, sc.opt);
}

namespace {

void write_file(const std::string& path, const std::string& content,
                std::vector<std::string>& files) {
  const auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw NumericError("cannot open output file " + path);
  out << content;
  if (!out) throw NumericError("failed writing output file " + path);
  files.push_back(path);
}

std::string csv_header(const ScenarioReport& rep) {
  return "# qmem " + rep.scenario + " results (units: gamma = 1)\n";
}

std::string table_csv(const ScenarioReport& rep, const Table& tab) {
  std::string out = csv_header(rep);
  for (std::size_t i = 0; i < tab.columns.size(); ++i) {
    out += tab.columns[i];
    out += i + 1 < tab.columns.size() ? ',' : '\n';
  }
  for (const auto& row : tab.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      out += format_number(row[i]);
      out += i + 1 < row.size() ? ',' : '\n';
    }
  }
  return out;
}

std::string checks_csv(const ScenarioReport& rep) {
  std::string out = csv_header(rep);
  out += "name,numeric,analytic,rel_dev,pass\n";
  for (const auto& c : rep.checks) {
    out += c.name + ',' + format_number(c.numeric) + ',' + format_number(c.analytic) +
           ',' + format_number(c.rel_dev) + ',' + (c.pass ? "pass" : "fail") + '\n';
  }
  return out;
}

nlohmann::ordered_json report_json(const ScenarioReport& rep, const RunConfig& cfg) {
  nlohmann::ordered_json doc;
  doc["tool"] = "qmem";
  doc["version"] = tool_version;
  doc["units"] = "gamma = 1";
  doc["scenario"] = rep.scenario;
  doc["pass"] = rep.all_pass();

  if (rep.scenario == "epr") {
    for (const auto& [k, v] : rep.params_echo) {
      if (k == "i_at") doc["i_at"] = v;
      if (k == "entangled") doc["entangled"] = v != 0.0;
    }
  }

  nlohmann::ordered_json params;
  for (const auto& [k, v] : rep.params_echo) params[k] = v;
  doc["params"] = params;

  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  for (const auto& c : rep.checks) {
    checks.push_back({{"name", c.name},
                      {"numeric", c.numeric},
                      {"analytic", c.analytic},
                      {"rel_dev", c.rel_dev},
                      {"tolerance", c.tolerance},
                      {"pass", c.pass}});
  }
  doc["checks"] = checks;

  nlohmann::ordered_json tables;
  for (const auto& t : rep.tables) {
    nlohmann::ordered_json tab;
    tab["columns"] = t.columns;
    tab["rows"] = t.rows;
    tables[t.name] = tab;
  }
  doc["tables"] = tables;
  doc["warnings"] = rep.warnings;

  nlohmann::ordered_json echo;
  for (const auto& s : cfg.raw.sections) {
    nlohmann::ordered_json sec;
    for (const auto& e : s.entries) sec[e.key] = e.value;
    echo[s.name] = sec;
  }
  doc["config"] = echo;
  return doc;
}

}  // namespace

EmitResult emit_report(const ScenarioReport& rep, const RunConfig& cfg,
                       const std::string& out_path, OutputFormat format) {
  EmitResult res;
  res.tolerances_pass = rep.all_pass();

  if (format == OutputFormat::Json) {
    write_file(out_path, report_json(rep, cfg).dump(2) + "\n", res.files);
    return res;
  }

  const std::filesystem::path p(out_path);
  const std::string stem = (p.parent_path() / p.stem()).string();
  const std::string ext = p.extension().empty() ? ".csv" : p.extension().string();

  const Table* primary = nullptr;
  for (const auto& t : rep.tables)
    if (t.name == "trajectory") primary = &t;
  if (!primary && !rep.tables.empty()) primary = &rep.tables.front();

  write_file(out_path, primary ? table_csv(rep, *primary) : checks_csv(rep), res.files);
  if (const Table* sp = rep.table("spectrum"))
    write_file(stem + "_spectrum" + ext, table_csv(rep, *sp), res.files);
  if (primary) write_file(stem + "_checks" + ext, checks_csv(rep), res.files);
  return res;
}

int run_and_emit(const RunConfig& cfg, const std::string& out_override,
                 std::optional<OutputFormat> format_override) {
  std::string path = out_override;
  OutputFormat format = cfg.output.format;
  if (path.empty()) {
    if (!cfg.has_output)
      throw ConfigError("no output path: give an [output] section or --out");
    path = cfg.output.path;
  }
  if (format_override) format = *format_override;

  const ScenarioReport rep = run_scenario(cfg);
  for (const auto& w : rep.warnings) std::cerr << "warning: " << w << "\n";
  const EmitResult res = emit_report(rep, cfg, path, format);
  for (const auto& f : res.files) std::cerr << "wrote " << f << "\n";
  return res.tolerances_pass ? 0 : 1;
}

}  // namespace qmem
