// Experiment front end: JSON experiment configs, deterministic seeded grid
// runs (trials fan out across threads; aggregation order is fixed, so
// scheduling never changes a byte of output), and CSV / JSON-lines reports.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "otpsim/nbkg.hpp"
#include "otpsim/shaping.hpp"

namespace otpsim::harness {

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

enum class ExperimentKind { kNbkg, kKeyless, kMetricsTable };
enum class ReportFormat { kCsv, kJsonLines };

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::kMetricsTable;
  std::uint64_t master_seed = 1;
  std::size_t trial_count = 1;
  std::string output_path;  // empty = standard output
  ReportFormat format = ReportFormat::kCsv;

  // Swept parameters; which grids apply depends on the experiment kind.
  std::vector<int> lambda_grid;          // keyless, metrics-table
  std::vector<double> error_floor_grid;  // keyless, metrics-table
  std::vector<double> snr_db_grid;       // nbkg
  std::vector<double> an_fraction_grid;  // nbkg

  // Keyless knobs.
  std::size_t blocks_per_trial = 0;  // 0 -> sized for >= 25000 shaped bits
  std::size_t block_length = 0;      // 0 -> least feasible length per floor
  std::size_t state_width = 256;
  double legit_crossover = 1e-3;
  shaping::EccScheme ecc = shaping::EccScheme::kRepetition3;

  // NBKG knobs.
  std::size_t payload_bits = 256;
  bool rayleigh_eve_gains = true;
  double eve_noise_variance = 0.0;   // 0 -> match the legitimate nodes
  std::size_t output_key_bits = 0;   // 0 -> min-entropy budget sizing

  void validate() const;      // throws ConfigError naming the field
  std::string canonical_json() const;
  std::uint64_t content_hash() const;
};

using Cell = std::variant<std::int64_t, double, std::string>;

struct ResultTable {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

ExperimentConfig load_config(const std::string& path);
ExperimentConfig parse_config(const std::string& json_text,
                              const std::string& origin);

// Cartesian grid x trial_count, each trial seeded from
// (master_seed, grid index, trial index). A failing grid point becomes an
// error row; the rest of the grid still runs.
ResultTable run_experiment(const ExperimentConfig& cfg);

void emit_report(const ResultTable& table, std::ostream& out,
                 ReportFormat format);
void emit_report(const ResultTable& table, const std::string& path,
                 ReportFormat format);

// Named presets: "table2", "dosa-bullets", "nbkg-sweep".
// trials == 0 keeps each preset's default trial count.
ExperimentConfig make_preset(const std::string& name, std::size_t trials = 0);

// Worker threads used for trials: OTPSIM_THREADS if set, else all cores.
std::size_t parallelism();

}  // namespace otpsim::harness
