// Command-line front end. Data goes to the report file or standard output;
// progress notes go to standard error. Exit codes: 0 success, 2 config
// error, 1 runtime failure.
#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "otpsim/harness.hpp"
#include "otpsim/metrics.hpp"
#include "otpsim/shaping.hpp"

namespace {

using otpsim::harness::ExperimentConfig;
using otpsim::harness::ReportFormat;

ReportFormat parse_format(const std::string& name) {
  if (name == "csv") return ReportFormat::kCsv;
  if (name == "jsonl") return ReportFormat::kJsonLines;
  throw otpsim::harness::ConfigError("--format: expected csv or jsonl");
}

void execute(ExperimentConfig cfg, const std::string& out_override,
             const std::string& format_override, std::uint64_t seed_override,
             bool has_seed) {
  if (has_seed) cfg.master_seed = seed_override;
  if (!out_override.empty()) cfg.output_path = out_override;
  if (!format_override.empty()) cfg.format = parse_format(format_override);
  cfg.validate();

  std::cerr << "simulate: " << cfg.canonical_json() << "\n";
  const auto table = otpsim::harness::run_experiment(cfg);
  if (cfg.output_path.empty()) {
    otpsim::harness::emit_report(table, std::cout, cfg.format);
  } else {
    otpsim::harness::emit_report(table, cfg.output_path, cfg.format);
    std::cerr << "simulate: wrote " << table.rows.size() << " rows to "
              << cfg.output_path << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wiretap-channel simulation toolkit"};
  app.require_subcommand(1);

  std::string config_path, out_path, format_name, preset_name;
  std::uint64_t seed = 0;
  std::size_t trials = 0;

  auto* run = app.add_subcommand("run", "Run an experiment from a JSON config");
  run->add_option("--config", config_path, "Experiment config file")->required();
  auto* run_seed = run->add_option("--seed", seed, "Override the master seed");
  run->add_option("--out", out_path, "Report file (default: stdout)");
  run->add_option("--format", format_name, "csv or jsonl");

  auto* preset = app.add_subcommand("preset", "Run a built-in experiment");
  preset->add_option("name", preset_name, "table2, dosa-bullets, or nbkg-sweep")
      ->required();
  preset->add_option("--trials", trials, "Trials per grid point");
  auto* preset_seed = preset->add_option("--seed", seed, "Override the master seed");
  preset->add_option("--out", out_path, "Report file (default: stdout)");
  preset->add_option("--format", format_name, "csv or jsonl");

  auto* metrics = app.add_subcommand("metrics", "One-shot formula evaluation");
  std::string formula;
  std::vector<double> args;
  metrics->add_option("formula", formula, "doa, dosa, blocklen, or minentropy")
      ->required();
  metrics->add_option("args", args, "Formula arguments");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (run->parsed()) {
      execute(otpsim::harness::load_config(config_path), out_path, format_name,
              seed, run_seed->count() > 0);
    } else if (preset->parsed()) {
      execute(otpsim::harness::make_preset(preset_name, trials), out_path,
              format_name, seed, preset_seed->count() > 0);
    } else if (metrics->parsed()) {
      const auto need = [&](std::size_t n) {
        if (args.size() != n) {
          throw otpsim::harness::ConfigError(
              "metrics " + formula + ": expected " + std::to_string(n) +
              " numeric argument(s)");
        }
      };
      double value = 0.0;
      if (formula == "doa") {
        need(2);
        value = otpsim::metrics::degree_of_approaching({args[0], args[1]});
      } else if (formula == "dosa") {
        need(2);
        value = otpsim::metrics::degree_of_synchronous_approaching(
            {args[0], args[1]});
      } else if (formula == "blocklen") {
        need(2);
        value = static_cast<double>(otpsim::shaping::required_block_length(
            static_cast<int>(args[0]), args[1]));
      } else if (formula == "minentropy") {
        need(1);
        value = otpsim::metrics::min_entropy_bound(args[0]);
      } else {
        throw otpsim::harness::ConfigError(
            "metrics: unknown formula '" + formula +
            "' (expected doa, dosa, blocklen, or minentropy)");
      }
      std::printf("%.12g\n", value);
    }
  } catch (const otpsim::harness::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
