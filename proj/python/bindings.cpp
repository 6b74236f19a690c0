// Python bindings for the simulation core. Bit blocks cross the boundary as
// '0'/'1' strings; reports and estimates cross as small structs.
#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "otpsim/channel.hpp"
#include "otpsim/harness.hpp"
#include "otpsim/metrics.hpp"
#include "otpsim/nbkg.hpp"
#include "otpsim/shaping.hpp"

namespace py = pybind11;

using namespace otpsim;

namespace {

BitBlock block_from_str(const std::string& s) { return BitBlock::from_string(s); }

SeedStream seed_of(std::uint64_t master, const std::string& label) {
  return SeedStream{master, label};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Deterministic wiretap-channel simulation toolkit";

  // ---- metrics ----
  py::class_<metrics::HighSnrDosa>(m, "HighSnrDosa")
      .def_readonly("value", &metrics::HighSnrDosa::value)
      .def_readonly("low_snr", &metrics::HighSnrDosa::low_snr);

  py::class_<metrics::DosaEstimate>(m, "DosaEstimate")
      .def_readonly("value", &metrics::DosaEstimate::value)
      .def_readonly("forward_bits", &metrics::DosaEstimate::forward_bits)
      .def_readonly("backward_bits", &metrics::DosaEstimate::backward_bits)
      .def_readonly("eve_bits", &metrics::DosaEstimate::eve_bits)
      .def_readonly("data_link_bits", &metrics::DosaEstimate::data_link_bits);

  py::class_<metrics::AuditResult>(m, "AuditResult")
      .def_readonly("h_m", &metrics::AuditResult::h_m)
      .def_readonly("h_m_given_x", &metrics::AuditResult::h_m_given_x);

  m.def("degree_of_approaching",
        [](double key_bits, double message_bits) {
          return metrics::degree_of_approaching({key_bits, message_bits});
        },
        py::arg("key_entropy_bits"), py::arg("message_entropy_bits"));
  m.def("degree_of_synchronous_approaching",
        [](double key_capacity, double channel_capacity) {
          return metrics::degree_of_synchronous_approaching(
              {key_capacity, channel_capacity});
        },
        py::arg("secret_key_capacity"), py::arg("channel_capacity"));
  m.def("dosa_highsnr_approx", &metrics::dosa_highsnr_approx,
        py::arg("snr_linear"));
  m.def("estimate_dosa_montecarlo", &metrics::estimate_dosa_montecarlo,
        py::arg("snr_linear"), py::arg("sample_count"), py::arg("rng_seed"),
        py::call_guard<py::gil_scoped_release>());
  m.def("min_entropy_bound", &metrics::min_entropy_bound,
        py::arg("error_floor"));
  m.def("required_error_floor", &metrics::required_error_floor,
        py::arg("target_dosa"));
  m.def("exhaustive_secrecy_audit",
        [](const std::function<std::uint32_t(std::uint32_t, std::uint32_t)>& f,
           std::size_t message_width, std::size_t key_width,
           const std::vector<double>& prior) {
          return metrics::exhaustive_secrecy_audit(f, message_width, key_width,
                                                   prior);
        },
        py::arg("cipher"), py::arg("message_width"), py::arg("key_width"),
        py::arg("message_prior"));

  // ---- channel models ----
  m.def("bsc",
        [](const std::string& bits, double crossover, std::uint64_t seed,
           const std::string& label) {
          return channel::bsc(block_from_str(bits), {crossover},
                              seed_of(seed, label))
              .to_string();
        },
        py::arg("bits"), py::arg("crossover"), py::arg("seed"),
        py::arg("label") = "bsc");
  m.def("bit_error_rate",
        [](const std::string& a, const std::string& b) {
          return channel::bit_error_rate(block_from_str(a), block_from_str(b));
        },
        py::arg("a"), py::arg("b"));

  // ---- randomness shaping ----
  m.def("required_block_length", &shaping::required_block_length,
        py::arg("lambda_bits"), py::arg("error_floor"));
  m.def("eve_success_exhaustive", &shaping::eve_success_exhaustive,
        py::arg("lambda_bits"), py::arg("error_floor"),
        py::call_guard<py::gil_scoped_release>());

  py::class_<shaping::KeylessReport>(m, "KeylessReport")
      .def_readonly("eve_ber_without_shaping",
                    &shaping::KeylessReport::eve_ber_without_shaping)
      .def_readonly("eve_ber_with_shaping",
                    &shaping::KeylessReport::eve_ber_with_shaping)
      .def_readonly("legit_ber", &shaping::KeylessReport::legit_ber)
      .def_readonly("legit_ber_post_ecc",
                    &shaping::KeylessReport::legit_ber_post_ecc)
      .def_readonly("block_length", &shaping::KeylessReport::block_length)
      .def_readonly("achieved_dosa", &shaping::KeylessReport::achieved_dosa)
      .def_readonly("achieved_dosa_coded",
                    &shaping::KeylessReport::achieved_dosa_coded);

  m.def("simulate_keyless",
        [](int lambda_bits, double error_floor, std::size_t block_length,
           double legit_crossover, const std::string& ecc, std::size_t q,
           std::uint64_t seed, const std::string& label) {
          shaping::ShaperConfig cfg;
          cfg.params.lambda = lambda_bits;
          cfg.params.error_floor = error_floor;
          cfg.params.block_length =
              block_length ? block_length
                           : shaping::required_block_length(lambda_bits,
                                                            error_floor);
          cfg.state_width = std::max<std::size_t>(
              256, static_cast<std::size_t>(lambda_bits));
          if (ecc == "passthrough") {
            cfg.ecc_scheme = shaping::EccScheme::kPassthrough;
          } else if (ecc == "repetition-3") {
            cfg.ecc_scheme = shaping::EccScheme::kRepetition3;
          } else {
            throw std::invalid_argument("ecc: passthrough or repetition-3");
          }
          const SeedStream root = seed_of(seed, label);
          cfg.session_seed = root.child("session").key();
          return shaping::simulate_keyless(cfg, {legit_crossover},
                                           {error_floor}, q, root);
        },
        py::arg("lambda_bits"), py::arg("error_floor"),
        py::arg("block_length") = 0, py::arg("legit_crossover") = 1e-3,
        py::arg("ecc") = "repetition-3", py::arg("q") = 64,
        py::arg("seed") = 1, py::arg("label") = "keyless",
        py::call_guard<py::gil_scoped_release>());

  // ---- NBKG ----
  py::class_<nbkg::NbkgReport>(m, "NbkgReport")
      .def_readonly("key_mismatch", &nbkg::NbkgReport::key_mismatch)
      .def_readonly("eve_key_distance", &nbkg::NbkgReport::eve_key_distance)
      .def_readonly("eve_symbol_ber", &nbkg::NbkgReport::eve_symbol_ber)
      .def_readonly("legit_symbol_ber", &nbkg::NbkgReport::legit_symbol_ber)
      .def_readonly("achieved_dosa", &nbkg::NbkgReport::achieved_dosa)
      .def_readonly("output_key_bits", &nbkg::NbkgReport::output_key_bits)
      .def_readonly("exchange_block_error",
                    &nbkg::NbkgReport::exchange_block_error);

  m.def("run_nbkg",
        [](std::size_t payload_bits, double snr_db, double an_power_fraction,
           bool rayleigh_eve_gains, double eve_noise_variance,
           std::size_t output_key_bits, std::uint64_t seed,
           const std::string& label) {
          nbkg::NbkgConfig cfg;
          cfg.payload_bits = payload_bits;
          cfg.snr_db = snr_db;
          cfg.rotation.an_power_fraction = an_power_fraction;
          cfg.rayleigh_eve_gains = rayleigh_eve_gains;
          cfg.eve_noise_variance = eve_noise_variance;
          cfg.output_key_bits = output_key_bits;
          return nbkg::run_nbkg(cfg, seed_of(seed, label));
        },
        py::arg("payload_bits") = 256, py::arg("snr_db") = 25.0,
        py::arg("an_power_fraction") = 0.5,
        py::arg("rayleigh_eve_gains") = true,
        py::arg("eve_noise_variance") = 0.0, py::arg("output_key_bits") = 0,
        py::arg("seed") = 1, py::arg("label") = "nbkg",
        py::call_guard<py::gil_scoped_release>());

  // ---- harness ----
  m.def("run_preset",
        [](const std::string& name, std::size_t trials, std::uint64_t seed,
           const std::string& format) {
          auto cfg = harness::make_preset(name, trials);
          if (seed) cfg.master_seed = seed;
          cfg.format = format == "jsonl" ? harness::ReportFormat::kJsonLines
                                         : harness::ReportFormat::kCsv;
          const auto table = harness::run_experiment(cfg);
          std::ostringstream out;
          harness::emit_report(table, out, cfg.format);
          return out.str();
        },
        py::arg("name"), py::arg("trials") = 0, py::arg("seed") = 0,
        py::arg("format") = "csv", py::call_guard<py::gil_scoped_release>());
  m.def("run_config_text",
        [](const std::string& json_text) {
          const auto cfg = harness::parse_config(json_text, "<string>");
          const auto table = harness::run_experiment(cfg);
          std::ostringstream out;
          harness::emit_report(table, out, cfg.format);
          return out.str();
        },
        py::arg("json_text"), py::call_guard<py::gil_scoped_release>());
}
