#include "otpsim/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace otpsim::harness {

namespace {

using nlohmann::json;

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string ecc_name(shaping::EccScheme ecc) {
  switch (ecc) {
    case shaping::EccScheme::kPassthrough: return "passthrough";
    case shaping::EccScheme::kRepetition3: return "repetition-3";
    case shaping::EccScheme::kExternal: return "external";
  }
  return "?";
}

shaping::EccScheme ecc_from_name(const std::string& name) {
  if (name == "passthrough") return shaping::EccScheme::kPassthrough;
  if (name == "repetition-3") return shaping::EccScheme::kRepetition3;
  throw ConfigError("config field 'keyless.ecc': unknown scheme '" + name +
                    "' (expected passthrough or repetition-3)");
}

std::string kind_name(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::kNbkg: return "nbkg";
    case ExperimentKind::kKeyless: return "keyless";
    case ExperimentKind::kMetricsTable: return "metrics-table";
  }
  return "?";
}

// Mean and standard error of the mean across trials.
struct RateStat {
  double mean = 0.0;
  double se = 0.0;
};

RateStat rate_stat(const std::vector<double>& xs) {
  RateStat s;
  if (xs.empty()) return s;
  for (double x : xs) s.mean += x;
  s.mean /= static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - s.mean) * (x - s.mean);
    s.se = std::sqrt(ss / static_cast<double>(xs.size() - 1) /
                     static_cast<double>(xs.size()));
  }
  return s;
}

// Runs tasks 0..count-1 on the configured number of threads; results land in
// task order regardless of scheduling.
template <typename Task>
void run_parallel(std::size_t count, Task&& task) {
  const std::size_t workers = std::min(parallelism(), std::max<std::size_t>(count, 1));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
        task(i);
      }
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace

std::size_t parallelism() {
  if (const char* env = std::getenv("OTPSIM_THREADS")) {
    const long n = std::strtol(env, nullptr, 10);
    if (n >= 1) return static_cast<std::size_t>(n);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

void ExperimentConfig::validate() const {
  if (trial_count < 1) {
    throw ConfigError("config field 'trial_count': must be >= 1");
  }
  switch (kind) {
    case ExperimentKind::kKeyless:
    case ExperimentKind::kMetricsTable: {
      if (lambda_grid.empty()) {
        throw ConfigError("config field 'grid.lambda': must be non-empty");
      }
      if (error_floor_grid.empty()) {
        throw ConfigError("config field 'grid.error_floor': must be non-empty");
      }
      for (int lambda : lambda_grid) {
        if (lambda < 1) {
          throw ConfigError("config field 'grid.lambda': entries must be >= 1");
        }
      }
      const bool keyless = kind == ExperimentKind::kKeyless;
      for (double p : error_floor_grid) {
        if (!(p > 0.0) || p > 1.0) {
          throw ConfigError(
              "config field 'grid.error_floor': entries must lie in (0, 1]");
        }
        if (keyless && p > 0.5) {
          throw ConfigError(
              "config field 'grid.error_floor': keyless runs model the floor "
              "as a binary symmetric channel, so entries must be <= 0.5");
        }
        if (keyless && block_length > 0) {
          const std::size_t least = shaping::required_block_length(
              *std::max_element(lambda_grid.begin(), lambda_grid.end()), p);
          if (block_length < least) {
            throw ConfigError(
                "config field 'keyless.block_length': " +
                std::to_string(block_length) +
                " is below the required minimum " + std::to_string(least) +
                " for error_floor " + format_double(p));
          }
        }
      }
      if (keyless && !(legit_crossover >= 0.0 && legit_crossover <= 0.5)) {
        throw ConfigError(
            "config field 'keyless.legit_crossover': must lie in [0, 0.5]");
      }
      if (keyless) {
        for (int lambda : lambda_grid) {
          if (state_width < static_cast<std::size_t>(lambda)) {
            throw ConfigError(
                "config field 'keyless.state_width': must be >= lambda");
          }
        }
      }
      break;
    }
    case ExperimentKind::kNbkg: {
      if (snr_db_grid.empty()) {
        throw ConfigError("config field 'grid.snr_db': must be non-empty");
      }
      if (an_fraction_grid.empty()) {
        throw ConfigError(
            "config field 'grid.an_power_fraction': must be non-empty");
      }
      for (double a : an_fraction_grid) {
        if (!(a >= 0.0) || !(a < 1.0)) {
          throw ConfigError(
              "config field 'grid.an_power_fraction': entries must lie in [0, 1)");
        }
      }
      if (payload_bits == 0 || payload_bits % 2 != 0) {
        throw ConfigError("config field 'nbkg.payload_bits': must be even, > 0");
      }
      if (eve_noise_variance < 0.0) {
        throw ConfigError(
            "config field 'nbkg.eve_noise_variance': must be >= 0");
      }
      if (output_key_bits >= 2 * payload_bits) {
        throw ConfigError(
            "config field 'nbkg.output_key_bits': must be below twice the payload");
      }
      break;
    }
  }
}

std::string ExperimentConfig::canonical_json() const {
  json j;
  j["experiment"] = kind_name(kind);
  j["master_seed"] = master_seed;
  j["trial_count"] = trial_count;
  j["format"] = format == ReportFormat::kCsv ? "csv" : "jsonl";
  json grid;
  if (!lambda_grid.empty()) grid["lambda"] = lambda_grid;
  if (!error_floor_grid.empty()) grid["error_floor"] = error_floor_grid;
  if (!snr_db_grid.empty()) grid["snr_db"] = snr_db_grid;
  if (!an_fraction_grid.empty()) grid["an_power_fraction"] = an_fraction_grid;
  j["grid"] = grid;
  if (kind == ExperimentKind::kKeyless) {
    j["keyless"] = {{"blocks_per_trial", blocks_per_trial},
                    {"block_length", block_length},
                    {"state_width", state_width},
                    {"legit_crossover", legit_crossover},
                    {"ecc", ecc_name(ecc)}};
  }
  if (kind == ExperimentKind::kNbkg) {
    j["nbkg"] = {{"payload_bits", payload_bits},
                 {"rayleigh_eve_gains", rayleigh_eve_gains},
                 {"eve_noise_variance", eve_noise_variance},
                 {"output_key_bits", output_key_bits}};
  }
  return j.dump();
}

std::uint64_t ExperimentConfig::content_hash() const {
  return detail::fnv1a64(canonical_json());
}

namespace {

template <typename T>
T field_or(const json& j, const char* key, T fallback, const char* section) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string("config field '") + section + key +
                      "': wrong type");
  }
}

}  // namespace

ExperimentConfig parse_config(const std::string& json_text,
                              const std::string& origin) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(origin + ": " + e.what());
  }
  ExperimentConfig cfg;
  if (!j.contains("experiment")) {
    throw ConfigError(origin + ": config field 'experiment' is required");
  }
  const std::string kind = j.at("experiment").get<std::string>();
  if (kind == "nbkg") {
    cfg.kind = ExperimentKind::kNbkg;
  } else if (kind == "keyless") {
    cfg.kind = ExperimentKind::kKeyless;
  } else if (kind == "metrics-table") {
    cfg.kind = ExperimentKind::kMetricsTable;
  } else {
    throw ConfigError(
        "config field 'experiment': expected nbkg, keyless, or metrics-table");
  }
  cfg.master_seed = field_or<std::uint64_t>(j, "master_seed", 1, "");
  cfg.trial_count = field_or<std::size_t>(j, "trial_count", 1, "");
  cfg.output_path = field_or<std::string>(j, "output", "", "");
  const std::string fmt = field_or<std::string>(j, "format", "csv", "");
  if (fmt == "csv") {
    cfg.format = ReportFormat::kCsv;
  } else if (fmt == "jsonl") {
    cfg.format = ReportFormat::kJsonLines;
  } else {
    throw ConfigError("config field 'format': expected csv or jsonl");
  }
  const json grid = j.value("grid", json::object());
  cfg.lambda_grid = field_or<std::vector<int>>(grid, "lambda", {}, "grid.");
  cfg.error_floor_grid =
      field_or<std::vector<double>>(grid, "error_floor", {}, "grid.");
  cfg.snr_db_grid = field_or<std::vector<double>>(grid, "snr_db", {}, "grid.");
  cfg.an_fraction_grid =
      field_or<std::vector<double>>(grid, "an_power_fraction", {}, "grid.");
  if (j.contains("keyless")) {
    const json& k = j.at("keyless");
    cfg.blocks_per_trial =
        field_or<std::size_t>(k, "blocks_per_trial", 0, "keyless.");
    cfg.block_length = field_or<std::size_t>(k, "block_length", 0, "keyless.");
    cfg.state_width = field_or<std::size_t>(k, "state_width", 256, "keyless.");
    cfg.legit_crossover =
        field_or<double>(k, "legit_crossover", 1e-3, "keyless.");
    cfg.ecc = ecc_from_name(
        field_or<std::string>(k, "ecc", "repetition-3", "keyless."));
  }
  if (j.contains("nbkg")) {
    const json& n = j.at("nbkg");
    cfg.payload_bits = field_or<std::size_t>(n, "payload_bits", 256, "nbkg.");
    cfg.rayleigh_eve_gains =
        field_or<bool>(n, "rayleigh_eve_gains", true, "nbkg.");
    cfg.eve_noise_variance =
        field_or<double>(n, "eve_noise_variance", 0.0, "nbkg.");
    cfg.output_key_bits =
        field_or<std::size_t>(n, "output_key_bits", 0, "nbkg.");
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file: " + path);
  }
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), path);
}

namespace {

struct GridPoint {
  int lambda = 0;
  double error_floor = 0.0;
  double snr_db = 0.0;
  double an_fraction = 0.0;
};

std::vector<GridPoint> expand_grid(const ExperimentConfig& cfg) {
  std::vector<GridPoint> points;
  if (cfg.kind == ExperimentKind::kNbkg) {
    for (double snr : cfg.snr_db_grid) {
      for (double an : cfg.an_fraction_grid) {
        GridPoint p;
        p.snr_db = snr;
        p.an_fraction = an;
        points.push_back(p);
      }
    }
  } else {
    for (int lambda : cfg.lambda_grid) {
      for (double floor : cfg.error_floor_grid) {
        GridPoint p;
        p.lambda = lambda;
        p.error_floor = floor;
        points.push_back(p);
      }
    }
  }
  return points;
}

std::vector<Cell> common_cells(const ExperimentConfig& cfg) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "0x%016llx",
                static_cast<unsigned long long>(cfg.content_hash()));
  return {static_cast<std::int64_t>(cfg.master_seed), std::string(buf)};
}

void run_keyless(const ExperimentConfig& cfg, ResultTable& table) {
  table.columns = {"experiment",       "master_seed",
                   "config_hash",      "status",
                   "lambda",           "error_floor",
                   "block_length",     "blocks_per_trial",
                   "trial_count",      "shaped_bits_total",
                   "eve_ber_shaped",   "eve_ber_shaped_se",
                   "eve_ber_unshaped", "eve_ber_unshaped_se",
                   "legit_ber_post_ecc", "legit_ber_post_ecc_se",
                   "legit_ber_message",  "legit_ber_message_se",
                   "achieved_dosa",    "achieved_dosa_coded"};
  const auto points = expand_grid(cfg);
  const std::size_t trials = cfg.trial_count;

  struct TrialSlot {
    shaping::KeylessReport report;
    std::string error;
  };
  std::vector<TrialSlot> slots(points.size() * trials);
  std::vector<std::size_t> qs(points.size(), 0);
  std::vector<std::string> point_errors(points.size());

  for (std::size_t g = 0; g < points.size(); ++g) {
    try {
      const std::size_t least = shaping::required_block_length(
          points[g].lambda, points[g].error_floor);
      const std::size_t len = cfg.block_length ? cfg.block_length : least;
      qs[g] = cfg.blocks_per_trial ? cfg.blocks_per_trial
                                   : (25000 + len - 1) / len;
    } catch (const std::exception& e) {
      point_errors[g] = e.what();
    }
  }

  run_parallel(points.size() * trials, [&](std::size_t task) {
    const std::size_t g = task / trials;
    const std::size_t t = task % trials;
    if (!point_errors[g].empty()) return;
    try {
      shaping::ShaperConfig sc;
      sc.params.lambda = points[g].lambda;
      sc.params.error_floor = points[g].error_floor;
      sc.params.block_length =
          cfg.block_length ? cfg.block_length
                           : shaping::required_block_length(
                                 points[g].lambda, points[g].error_floor);
      sc.state_width = std::max<std::size_t>(
          cfg.state_width, static_cast<std::size_t>(points[g].lambda));
      sc.ecc_scheme = cfg.ecc;
      SeedStream trial_seed{cfg.master_seed,
                            "keyless/g" + std::to_string(g) + "/t" +
                                std::to_string(t)};
      sc.session_seed = trial_seed.child("session").key();
      slots[task].report = shaping::simulate_keyless(
          sc, channel::BscConfig{cfg.legit_crossover},
          channel::BscConfig{points[g].error_floor}, qs[g], trial_seed);
    } catch (const std::exception& e) {
      slots[task].error = e.what();
    }
  });

  for (std::size_t g = 0; g < points.size(); ++g) {
    std::vector<Cell> row;
    row.emplace_back(std::string("keyless"));
    for (auto& c : common_cells(cfg)) row.push_back(std::move(c));

    std::string error = point_errors[g];
    std::vector<double> shaped, unshaped, post_ecc, message;
    std::size_t block_len = 0;
    double dosa = 0.0, dosa_coded = 0.0;
    for (std::size_t t = 0; t < trials && error.empty(); ++t) {
      const TrialSlot& slot = slots[g * trials + t];
      if (!slot.error.empty()) {
        error = slot.error;
        break;
      }
      shaped.push_back(slot.report.eve_ber_with_shaping);
      unshaped.push_back(slot.report.eve_ber_without_shaping);
      post_ecc.push_back(slot.report.legit_ber_post_ecc);
      message.push_back(slot.report.legit_ber);
      block_len = slot.report.block_length;
      dosa = slot.report.achieved_dosa;
      dosa_coded = slot.report.achieved_dosa_coded;
    }
    row.emplace_back(error.empty() ? std::string("ok")
                                   : "error: " + error);
    row.emplace_back(static_cast<std::int64_t>(points[g].lambda));
    row.emplace_back(points[g].error_floor);
    row.emplace_back(static_cast<std::int64_t>(block_len));
    row.emplace_back(static_cast<std::int64_t>(qs[g]));
    row.emplace_back(static_cast<std::int64_t>(trials));
    row.emplace_back(static_cast<std::int64_t>(block_len * qs[g] * trials));
    for (const auto* xs : {&shaped, &unshaped, &post_ecc, &message}) {
      const RateStat s = error.empty() ? rate_stat(*xs) : RateStat{};
      row.emplace_back(s.mean);
      row.emplace_back(s.se);
    }
    row.emplace_back(dosa);
    row.emplace_back(dosa_coded);
    table.rows.push_back(std::move(row));
  }
}

void run_nbkg_experiment(const ExperimentConfig& cfg, ResultTable& table) {
  table.columns = {"experiment",        "master_seed",
                   "config_hash",       "status",
                   "snr_db",            "an_power_fraction",
                   "payload_bits",      "trial_count",
                   "key_mismatch_rate", "key_mismatch_rate_se",
                   "eve_key_distance",  "eve_key_distance_se",
                   "eve_symbol_ber",    "eve_symbol_ber_se",
                   "legit_symbol_ber",  "legit_symbol_ber_se",
                   "block_error_rate",  "block_error_rate_se",
                   "mean_output_key_bits", "achieved_dosa", "achieved_dosa_se"};
  const auto points = expand_grid(cfg);
  const std::size_t trials = cfg.trial_count;

  struct TrialSlot {
    nbkg::NbkgReport report;
    std::string error;
  };
  std::vector<TrialSlot> slots(points.size() * trials);

  run_parallel(points.size() * trials, [&](std::size_t task) {
    const std::size_t g = task / trials;
    const std::size_t t = task % trials;
    try {
      nbkg::NbkgConfig nc;
      nc.payload_bits = cfg.payload_bits;
      nc.snr_db = points[g].snr_db;
      nc.rotation.an_power_fraction = points[g].an_fraction;
      nc.rayleigh_eve_gains = cfg.rayleigh_eve_gains;
      nc.eve_noise_variance = cfg.eve_noise_variance;
      nc.output_key_bits = cfg.output_key_bits;
      SeedStream trial_seed{cfg.master_seed,
                            "nbkg/g" + std::to_string(g) + "/t" +
                                std::to_string(t)};
      slots[task].report = nbkg::run_nbkg(nc, trial_seed);
    } catch (const std::exception& e) {
      slots[task].error = e.what();
    }
  });

  for (std::size_t g = 0; g < points.size(); ++g) {
    std::vector<Cell> row;
    row.emplace_back(std::string("nbkg"));
    for (auto& c : common_cells(cfg)) row.push_back(std::move(c));

    std::string error;
    std::vector<double> mismatch, distance, eve_ber, legit_ber, block_err, dosa;
    double key_bits = 0.0;
    for (std::size_t t = 0; t < trials && error.empty(); ++t) {
      const TrialSlot& slot = slots[g * trials + t];
      if (!slot.error.empty()) {
        error = slot.error;
        break;
      }
      mismatch.push_back(slot.report.key_mismatch ? 1.0 : 0.0);
      distance.push_back(slot.report.eve_key_distance);
      eve_ber.push_back(slot.report.eve_symbol_ber);
      legit_ber.push_back(slot.report.legit_symbol_ber);
      block_err.push_back(slot.report.exchange_block_error ? 1.0 : 0.0);
      dosa.push_back(slot.report.achieved_dosa);
      key_bits += static_cast<double>(slot.report.output_key_bits);
    }
    row.emplace_back(error.empty() ? std::string("ok")
                                   : "error: " + error);
    row.emplace_back(points[g].snr_db);
    row.emplace_back(points[g].an_fraction);
    row.emplace_back(static_cast<std::int64_t>(cfg.payload_bits));
    row.emplace_back(static_cast<std::int64_t>(trials));
    for (const auto* xs :
         {&mismatch, &distance, &eve_ber, &legit_ber, &block_err}) {
      const RateStat s = error.empty() ? rate_stat(*xs) : RateStat{};
      row.emplace_back(s.mean);
      row.emplace_back(s.se);
    }
    row.emplace_back(error.empty() ? key_bits / static_cast<double>(trials)
                                   : 0.0);
    const RateStat d = error.empty() ? rate_stat(dosa) : RateStat{};
    row.emplace_back(d.mean);
    row.emplace_back(d.se);
    table.rows.push_back(std::move(row));
  }
}

void run_metrics_table(const ExperimentConfig& cfg, ResultTable& table) {
  table.columns = {"experiment",    "master_seed",  "config_hash",
                   "status",        "lambda",       "error_floor",
                   "block_length",  "achieved_dosa", "above_one",
                   "min_entropy_bits", "required_floor_for_dosa"};
  for (const auto& point : expand_grid(cfg)) {
    std::vector<Cell> row;
    row.emplace_back(std::string("metrics-table"));
    for (auto& c : common_cells(cfg)) row.push_back(std::move(c));
    try {
      const std::size_t len =
          shaping::required_block_length(point.lambda, point.error_floor);
      const double dosa =
          static_cast<double>(point.lambda) / static_cast<double>(len);
      row.emplace_back(std::string("ok"));
      row.emplace_back(static_cast<std::int64_t>(point.lambda));
      row.emplace_back(point.error_floor);
      row.emplace_back(static_cast<std::int64_t>(len));
      row.emplace_back(dosa);
      row.emplace_back(static_cast<std::int64_t>(dosa > 1.0 ? 1 : 0));
      row.emplace_back(metrics::min_entropy_bound(point.error_floor));
      row.emplace_back(metrics::required_error_floor(dosa));
    } catch (const std::exception& e) {
      row.emplace_back("error: " + std::string(e.what()));
      row.emplace_back(static_cast<std::int64_t>(point.lambda));
      row.emplace_back(point.error_floor);
      row.emplace_back(static_cast<std::int64_t>(0));
      row.emplace_back(0.0);
      row.emplace_back(static_cast<std::int64_t>(0));
      row.emplace_back(0.0);
      row.emplace_back(0.0);
    }
    table.rows.push_back(std::move(row));
  }
}

}  // namespace

ResultTable run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  ResultTable table;
  switch (cfg.kind) {
    case ExperimentKind::kKeyless:
      run_keyless(cfg, table);
      break;
    case ExperimentKind::kNbkg:
      run_nbkg_experiment(cfg, table);
      break;
    case ExperimentKind::kMetricsTable:
      run_metrics_table(cfg, table);
      break;
  }
  return table;
}

namespace {

std::string cell_text(const Cell& cell) {
  if (std::holds_alternative<std::int64_t>(cell)) {
    return std::to_string(std::get<std::int64_t>(cell));
  }
  if (std::holds_alternative<double>(cell)) {
    return format_double(std::get<double>(cell));
  }
  std::string s = std::get<std::string>(cell);
  for (char& c : s) {
    if (c == ',' || c == '\n') c = ';';
  }
  return s;
}

std::string cell_json(const Cell& cell) {
  if (std::holds_alternative<std::string>(cell)) {
    return json(std::get<std::string>(cell)).dump();
  }
  return cell_text(cell);
}

}  // namespace

void emit_report(const ResultTable& table, std::ostream& out,
                 ReportFormat format) {
  if (format == ReportFormat::kCsv) {
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
      if (c) out << ',';
      out << table.columns[c];
    }
    out << '\n';
    for (const auto& row : table.rows) {
      for (std::size_t c = 0; c < row.size(); ++c) {
        if (c) out << ',';
        out << cell_text(row[c]);
      }
      out << '\n';
    }
  } else {
    for (const auto& row : table.rows) {
      out << '{';
      for (std::size_t c = 0; c < row.size(); ++c) {
        if (c) out << ',';
        out << json(table.columns[c]).dump() << ':' << cell_json(row[c]);
      }
      out << "}\n";
    }
  }
}

void emit_report(const ResultTable& table, const std::string& path,
                 ReportFormat format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open report file for writing: " + path);
  }
  emit_report(table, out, format);
  if (!out) {
    throw std::runtime_error("write failure on report file: " + path);
  }
}

ExperimentConfig make_preset(const std::string& name, std::size_t trials) {
  ExperimentConfig cfg;
  cfg.master_seed = 1;
  if (name == "table2") {
    cfg.kind = ExperimentKind::kKeyless;
    cfg.trial_count = 4;
    cfg.lambda_grid = {128};
    cfg.error_floor_grid = {0.2, 0.3, 0.4, 0.5};
    cfg.legit_crossover = 1e-3;
    cfg.ecc = shaping::EccScheme::kRepetition3;
  } else if (name == "dosa-bullets") {
    cfg.kind = ExperimentKind::kMetricsTable;
    cfg.trial_count = 1;
    cfg.lambda_grid = {128};
    cfg.error_floor_grid = {0.2, 0.3, 0.5};
  } else if (name == "nbkg-sweep") {
    cfg.kind = ExperimentKind::kNbkg;
    cfg.trial_count = 25;
    cfg.snr_db_grid = {10.0, 15.0, 20.0, 25.0, 30.0};
    cfg.an_fraction_grid = {0.5};
    cfg.payload_bits = 256;
  } else {
    throw ConfigError("unknown preset '" + name +
                      "' (expected table2, dosa-bullets, or nbkg-sweep)");
  }
  if (trials) cfg.trial_count = trials;
  return cfg;
}

}  // namespace otpsim::harness
