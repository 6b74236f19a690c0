#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "otpsim/harness.hpp"

using namespace otpsim;
using namespace otpsim::harness;

namespace {

std::string render(const ResultTable& table, ReportFormat format) {
  std::ostringstream out;
  emit_report(table, out, format);
  return out.str();
}

double cell_double(const Cell& c) {
  if (std::holds_alternative<double>(c)) return std::get<double>(c);
  return static_cast<double>(std::get<std::int64_t>(c));
}

std::size_t column_index(const ResultTable& t, const std::string& name) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) {
    if (t.columns[i] == name) return i;
  }
  throw std::runtime_error("no such column: " + name);
}

}  // namespace

TEST_CASE("minimal keyless config parses with defaults") {
  const auto cfg = parse_config(R"({
    "experiment": "keyless",
    "grid": {"lambda": [16], "error_floor": [0.3]}
  })", "<test>");
  CHECK(cfg.kind == ExperimentKind::kKeyless);
  CHECK(cfg.master_seed == 1);
  CHECK(cfg.trial_count == 1);
  CHECK(cfg.legit_crossover == 1e-3);
  CHECK(cfg.ecc == shaping::EccScheme::kRepetition3);
  CHECK(cfg.blocks_per_trial == 0);
  CHECK(cfg.format == ReportFormat::kCsv);
}

TEST_CASE("config rejections name the offending field") {
  // out-of-range error floor
  try {
    parse_config(R"({"experiment":"keyless",
                     "grid":{"lambda":[16],"error_floor":[1.2]}})", "<t>");
    CHECK(false);
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("error_floor") != std::string::npos);
  }
  // block length below the feasibility bound, message cites the minimum
  try {
    parse_config(R"({"experiment":"keyless",
                     "grid":{"lambda":[128],"error_floor":[0.2]},
                     "keyless":{"block_length":128}})", "<t>");
    CHECK(false);
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("block_length") != std::string::npos);
    CHECK(msg.find("398") != std::string::npos);
  }
  // malformed json reports its origin
  try {
    parse_config("{not json", "badfile.json");
    CHECK(false);
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("badfile.json") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_config(R"({"experiment":"bogus"})", "<t>"),
                  ConfigError);
  CHECK_THROWS_AS(
      parse_config(R"({"experiment":"nbkg","trial_count":0,
                       "grid":{"snr_db":[10],"an_power_fraction":[0.5]}})",
                   "<t>"),
      ConfigError);
}

TEST_CASE("load_config reads files and reports missing paths") {
  namespace fs = std::filesystem;
  const fs::path path = fs::temp_directory_path() / "otpsim_cfg_test.json";
  {
    std::ofstream out(path);
    out << R"({"experiment":"metrics-table",
               "grid":{"lambda":[128],"error_floor":[0.2,0.5]}})";
  }
  const auto cfg = load_config(path.string());
  CHECK(cfg.kind == ExperimentKind::kMetricsTable);
  CHECK(cfg.error_floor_grid.size() == 2);
  fs::remove(path);
  CHECK_THROWS_AS(load_config(path.string()), ConfigError);
}

TEST_CASE("metrics-table rows carry the block-length table") {
  const auto table = run_experiment(make_preset("dosa-bullets"));
  REQUIRE(table.rows.size() == 3);
  const std::size_t len_col = column_index(table, "block_length");
  const std::size_t dosa_col = column_index(table, "achieved_dosa");
  const std::size_t status_col = column_index(table, "status");
  const std::int64_t expect_len[3] = {398, 249, 128};
  const double expect_dosa[3] = {0.32, 0.51, 1.00};
  for (std::size_t r = 0; r < 3; ++r) {
    CHECK(std::get<std::string>(table.rows[r][status_col]) == "ok");
    CHECK(std::get<std::int64_t>(table.rows[r][len_col]) == expect_len[r]);
    const double rounded =
        std::round(cell_double(table.rows[r][dosa_col]) * 100.0) / 100.0;
    CHECK(rounded == doctest::Approx(expect_dosa[r]));
  }
}

TEST_CASE("reports are byte-identical for identical config and seed") {
  auto cfg = make_preset("table2");
  cfg.trial_count = 2;
  cfg.blocks_per_trial = 40;  // trimmed for test speed
  const std::string a = render(run_experiment(cfg), ReportFormat::kCsv);
  const std::string b = render(run_experiment(cfg), ReportFormat::kCsv);
  CHECK(a == b);
  CHECK(!a.empty());
  CHECK(a.back() == '\n');

  auto reseeded = cfg;
  reseeded.master_seed = 2;
  CHECK(render(run_experiment(reseeded), ReportFormat::kCsv) != a);
}

TEST_CASE("empty tables still emit the header") {
  ResultTable table;
  table.columns = {"a", "b"};
  CHECK(render(table, ReportFormat::kCsv) == "a,b\n");
  CHECK(render(table, ReportFormat::kJsonLines).empty());
}

TEST_CASE("json-lines output round-trips for regression diffing") {
  auto cfg = make_preset("nbkg-sweep");
  cfg.trial_count = 3;
  cfg.snr_db_grid = {12.0, 20.0};
  cfg.payload_bits = 64;
  const auto table = run_experiment(cfg);
  const std::string text = render(table, ReportFormat::kJsonLines);
  std::istringstream lines(text);
  std::string line;
  std::size_t row = 0;
  while (std::getline(lines, line)) {
    const auto parsed = nlohmann::json::parse(line);
    REQUIRE(row < table.rows.size());
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
      const Cell& cell = table.rows[row][c];
      const auto& field = parsed.at(table.columns[c]);
      if (std::holds_alternative<std::string>(cell)) {
        CHECK(field.get<std::string>() == std::get<std::string>(cell));
      } else {
        // numbers survive the %.6g formatting round trip
        CHECK(field.get<double>() ==
              doctest::Approx(cell_double(cell)).epsilon(1e-5));
      }
    }
    ++row;
  }
  CHECK(row == table.rows.size());
}

TEST_CASE("trial seeds for distinct grid slots are uncorrelated") {
  const int pairs = 100000;
  double s1 = 0.0, s2 = 0.0, s11 = 0.0, s22 = 0.0, s12 = 0.0;
  for (int i = 0; i < pairs; ++i) {
    SeedStream a{1, "keyless/g" + std::to_string(i) + "/t0"};
    SeedStream b{1, "keyless/g" + std::to_string(i) + "/t1"};
    RandomStream ra(a), rb(b);
    const double x = ra.uniform();
    const double y = rb.uniform();
    s1 += x; s2 += y; s11 += x * x; s22 += y * y; s12 += x * y;
  }
  const double n = pairs;
  const double cov = s12 / n - (s1 / n) * (s2 / n);
  const double v1 = s11 / n - (s1 / n) * (s1 / n);
  const double v2 = s22 / n - (s2 / n) * (s2 / n);
  CHECK(std::abs(cov / std::sqrt(v1 * v2)) < 0.01);
}

TEST_CASE("standard errors shrink like the square root of the trial count") {
  auto small = make_preset("nbkg-sweep");
  small.snr_db_grid = {16.0};
  small.payload_bits = 64;
  small.trial_count = 50;
  auto large = small;
  large.trial_count = 200;

  const auto ts = run_experiment(small);
  const auto tl = run_experiment(large);
  const std::size_t se_col = column_index(ts, "eve_symbol_ber_se");
  const double se_small = cell_double(ts.rows[0][se_col]);
  const double se_large = cell_double(tl.rows[0][se_col]);
  REQUIRE(se_small > 0.0);
  REQUIRE(se_large > 0.0);
  const double ratio = se_small / se_large;
  CHECK(ratio > 1.6);
  CHECK(ratio < 2.4);
}

TEST_CASE("a failing grid point becomes an error row, the rest still run") {
  ExperimentConfig cfg;
  cfg.kind = ExperimentKind::kMetricsTable;
  cfg.lambda_grid = {128};
  cfg.error_floor_grid = {0.2, 1.0, 0.5};  // the middle one cannot size a block
  const auto table = run_experiment(cfg);
  REQUIRE(table.rows.size() == 3);
  const std::size_t status_col = column_index(table, "status");
  CHECK(std::get<std::string>(table.rows[0][status_col]) == "ok");
  CHECK(std::get<std::string>(table.rows[1][status_col]).find("error") == 0);
  CHECK(std::get<std::string>(table.rows[2][status_col]) == "ok");
}

TEST_CASE("unknown presets are rejected") {
  CHECK_THROWS_AS(make_preset("nope"), ConfigError);
}
