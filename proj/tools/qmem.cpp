// qmem - config-driven simulator for quantum state transfer between optical
// fields and atomic ensembles in a cavity.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "qmem/emit.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw qmem::ConfigError("cannot read config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::optional<qmem::OutputFormat> parse_format(const std::string& fmt) {
  if (fmt.empty()) return std::nullopt;
  if (fmt == "csv") return qmem::OutputFormat::Csv;
  if (fmt == "json") return qmem::OutputFormat::Json;
  throw qmem::ConfigError("format must be csv or json");
}

int cmd_run(const std::string& config_path, const std::string& out,
            const std::string& fmt) {
  const qmem::RunConfig cfg = qmem::parse_config(read_file(config_path));
  return qmem::run_and_emit(cfg, out, parse_format(fmt));
}

int cmd_validate(const std::string& config_path) {
  const qmem::RunConfig cfg = qmem::parse_config(read_file(config_path));
  const qmem::RegimeReport regime = qmem::validate_regime(cfg.params, cfg.mode);
  std::cout << "config OK\n";
  for (const auto& c : regime.checks) {
    std::cout << (c.pass ? "  pass  " : "  warn  ") << c.name << " (ratio "
              << qmem::format_number(c.ratio) << ")\n";
  }
  return 0;
}

int cmd_sweep(const std::string& config_path, const std::string& key,
              const std::string& out_dir, const std::string& fmt) {
  const std::string text = read_file(config_path);
  const auto points = qmem::expand_sweep(text, key);
  std::filesystem::create_directories(out_dir);

  std::string summary = "# qmem sweep over " + key + " (units: gamma = 1)\n";
  summary += "index," + key + ",name,numeric,analytic,rel_dev,pass\n";
  bool all_pass = true;

  for (std::size_t i = 0; i < points.size(); ++i) {
    const qmem::RunConfig cfg = qmem::parse_config(points[i].second);
    const auto format = parse_format(fmt).value_or(cfg.output.format);
    const std::string ext = format == qmem::OutputFormat::Json ? ".json" : ".csv";
    char idx[16];
    std::snprintf(idx, sizeof(idx), "%03zu", i);
    const std::string point_path =
        (std::filesystem::path(out_dir) / (key + "_" + idx + ext)).string();

    const qmem::ScenarioReport rep = qmem::run_scenario(cfg);
    qmem::emit_report(rep, cfg, point_path, format);
    all_pass = all_pass && rep.all_pass();
    for (const auto& c : rep.checks) {
      summary += std::string(idx) + ',' + qmem::format_number(points[i].first) + ',' +
                 c.name + ',' + qmem::format_number(c.numeric) + ',' +
                 qmem::format_number(c.analytic) + ',' + qmem::format_number(c.rel_dev) +
                 ',' + (c.pass ? "pass" : "fail") + '\n';
    }
  }

  const std::string summary_path =
      (std::filesystem::path(out_dir) / "summary.csv").string();
  std::ofstream out(summary_path, std::ios::binary);
  out << summary;
  std::cerr << "wrote " << summary_path << "\n";
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quantum state transfer between optical fields and atomic ensembles"};
  app.require_subcommand(1);

  std::string config_path, out, fmt, key, out_dir;

  auto* run = app.add_subcommand("run", "run one scenario from a config file");
  run->add_option("--config", config_path, "config file")->required();
  run->add_option("--out", out, "output path (overrides [output] path)");
  run->add_option("--format", fmt, "csv or json (overrides [output] format)");

  auto* validate = app.add_subcommand("validate", "parse a config and report the regime");
  validate->add_option("--config", config_path, "config file")->required();

  auto* sweep = app.add_subcommand("sweep", "expand a lo:hi:step key into per-point runs");
  sweep->add_option("--config", config_path, "config file")->required();
  sweep->add_option("--key", key, "key holding the lo:hi:step range")->required();
  sweep->add_option("--out-dir", out_dir, "directory for per-point outputs")->required();
  sweep->add_option("--format", fmt, "csv or json");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(config_path, out, fmt);
    if (validate->parsed()) return cmd_validate(config_path);
    return cmd_sweep(config_path, key, out_dir, fmt);
  } catch (const qmem::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const qmem::NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
