#include "otpsim/nbkg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "otpsim/hashing.hpp"
#include "otpsim/metrics.hpp"

namespace otpsim::nbkg {

namespace {

constexpr double kInvSqrt2 = 0.7071067811865475244;

// 2x2 symmetric positive-definite inverse for the eavesdropper metric.
struct Cov2 {
  double a = 1.0, b = 0.0, d = 1.0;  // [[a, b], [b, d]]

  bool invertible() const { return std::abs(a * d - b * b) > 1e-300; }

  // Mahalanobis quadratic form x' * inv(C) * x.
  double quad(double x, double y) const {
    const double det = a * d - b * b;
    return (d * x * x - 2.0 * b * x * y + a * y * y) / det;
  }
};

}  // namespace

void RotationConfig::validate() const {
  if (!(theta > 0.0) || !(theta < std::numbers::pi / 4.0)) {
    throw std::invalid_argument(
        "RotationConfig: theta must lie strictly inside (0, pi/4)");
  }
  if (!(an_power_fraction >= 0.0) || !(an_power_fraction < 1.0)) {
    throw std::invalid_argument(
        "RotationConfig: an_power_fraction must lie in [0, 1)");
  }
}

LocalKey collect_noise_bits(std::size_t count, const SeedStream& seed) {
  if (count == 0) {
    throw std::invalid_argument("collect_noise_bits: count must be positive");
  }
  RandomStream rng(seed);
  LocalKey key{BitBlock(count)};
  for (std::size_t i = 0; i < count; ++i) {
    key.bits.set(i, rng.gaussian() >= 0.0);
  }
  return key;
}

std::vector<ComplexSample> modulate_qpsk(const BitBlock& bits) {
  if (bits.size() % 2 != 0) {
    throw std::invalid_argument("modulate_qpsk: bit count must be even");
  }
  std::vector<ComplexSample> out;
  out.reserve(bits.size() / 2);
  for (std::size_t i = 0; i < bits.size(); i += 2) {
    const double re = bits.get(i) ? -kInvSqrt2 : kInvSqrt2;
    const double im = bits.get(i + 1) ? -kInvSqrt2 : kInvSqrt2;
    out.emplace_back(re, im);
  }
  return out;
}

double rotate_and_project(ComplexSample symbol, const RotationConfig& cfg) {
  return symbol.real() * std::cos(cfg.theta) +
         symbol.imag() * std::sin(cfg.theta);
}

std::array<double, 4> projection_alphabet(const RotationConfig& cfg) {
  const double c = std::cos(cfg.theta) * kInvSqrt2;
  const double s = std::sin(cfg.theta) * kInvSqrt2;
  // Symbol (b0<<1 | b1): b0 flips the real sign, b1 the imaginary sign.
  return {c + s, c - s, -(c - s), -(c + s)};
}

double projection_scale(const RotationConfig& cfg) {
  // Alphabet second moment is 1/2 for every theta.
  return std::sqrt(2.0 * (1.0 - cfg.an_power_fraction));
}

ComplexSample build_tx_signal(double projection, const RotationConfig& cfg,
                              RandomStream& an_rng) {
  const double an = cfg.an_power_fraction > 0.0
                        ? std::sqrt(cfg.an_power_fraction) * an_rng.gaussian()
                        : 0.0;
  return {projection * projection_scale(cfg), an};
}

std::vector<ComplexSample> build_tx_block(const std::vector<double>& projections,
                                          const RotationConfig& cfg,
                                          const SeedStream& seed) {
  RandomStream rng(seed);
  std::vector<ComplexSample> out;
  out.reserve(projections.size());
  for (double p : projections) out.push_back(build_tx_signal(p, cfg, rng));
  return out;
}

std::uint8_t detect_projection(ComplexSample received,
                               const RotationConfig& cfg) {
  const auto alphabet = projection_alphabet(cfg);
  const double scale = projection_scale(cfg);
  const double y = received.real();
  std::uint8_t best = 0;
  double best_dist = std::abs(y - alphabet[0] * scale);
  for (std::uint8_t s = 1; s < 4; ++s) {
    const double d = std::abs(y - alphabet[s] * scale);
    if (d < best_dist) {
      best_dist = d;
      best = s;
    }
  }
  return best;
}

namespace {

std::vector<double> project_block(const BitBlock& bits,
                                  const RotationConfig& cfg) {
  const auto symbols = modulate_qpsk(bits);
  std::vector<double> projections;
  projections.reserve(symbols.size());
  for (const auto& s : symbols) {
    projections.push_back(rotate_and_project(s, cfg));
  }
  return projections;
}

BitBlock detect_block(const std::vector<ComplexSample>& received,
                      const RotationConfig& cfg) {
  BitBlock bits(received.size() * 2);
  for (std::size_t i = 0; i < received.size(); ++i) {
    const std::uint8_t s = detect_projection(received[i], cfg);
    bits.set(2 * i, (s >> 1) & 1u);
    bits.set(2 * i + 1, s & 1u);
  }
  return bits;
}

}  // namespace

ExchangeResult exchange_round(const LocalKey& alice, const LocalKey& bob,
                              const WiretapLinkConfig& link,
                              const RotationConfig& cfg,
                              const SeedStream& seed) {
  if (alice.bits.size() != bob.bits.size()) {
    throw std::invalid_argument("exchange_round: local key length mismatch");
  }
  cfg.validate();
  const auto tx_a =
      build_tx_block(project_block(alice.bits, cfg), cfg, seed.child("an_a"));
  const auto tx_b =
      build_tx_block(project_block(bob.bits, cfg), cfg, seed.child("an_b"));
  // After self-interference cancellation each side sees only the peer's
  // signal plus its own receiver noise.
  const auto rx_a = channel::awgn(tx_b, link.snr_db, seed.child("noise_a"));
  const auto rx_b = channel::awgn(tx_a, link.snr_db, seed.child("noise_b"));
  ExchangeResult result;
  result.alice_received = detect_block(rx_a, cfg);
  result.bob_received = detect_block(rx_b, cfg);
  result.eve_observation =
      channel::eve_superposition(tx_a, tx_b, link, seed.child("noise_eve"));
  return result;
}

EveEstimates eve_detect(const std::vector<ComplexSample>& observation,
                        const WiretapLinkConfig& link,
                        const RotationConfig& cfg) {
  const auto alphabet = projection_alphabet(cfg);
  const double scale = projection_scale(cfg);
  const ComplexSample ha = link.eve_gain_a;
  const ComplexSample hb = link.eve_gain_b;

  // Conditional covariance of the observation given both symbols: each
  // party's artificial noise lies along j*h, plus isotropic receiver noise.
  const double an = cfg.an_power_fraction;
  Cov2 cov;
  cov.a = an * (ha.imag() * ha.imag() + hb.imag() * hb.imag()) +
          link.eve_noise_variance / 2.0;
  cov.d = an * (ha.real() * ha.real() + hb.real() * hb.real()) +
          link.eve_noise_variance / 2.0;
  cov.b = -an * (ha.imag() * ha.real() + hb.imag() * hb.real());
  const bool use_mahalanobis = cov.invertible();

  // Means of the 16 joint hypotheses.
  std::array<ComplexSample, 16> mean;
  for (int sa = 0; sa < 4; ++sa) {
    for (int sb = 0; sb < 4; ++sb) {
      mean[sa * 4 + sb] =
          ha * (alphabet[sa] * scale) + hb * (alphabet[sb] * scale);
    }
  }

  EveEstimates est{BitBlock(observation.size() * 2),
                   BitBlock(observation.size() * 2)};
  for (std::size_t i = 0; i < observation.size(); ++i) {
    int best = 0;
    double best_metric = 0.0;
    for (int h = 0; h < 16; ++h) {
      const double dx = observation[i].real() - mean[h].real();
      const double dy = observation[i].imag() - mean[h].imag();
      const double metric =
          use_mahalanobis ? cov.quad(dx, dy) : dx * dx + dy * dy;
      if (h == 0 || metric < best_metric) {
        best_metric = metric;
        best = h;
      }
    }
    const std::uint8_t sa = static_cast<std::uint8_t>(best >> 2);
    const std::uint8_t sb = static_cast<std::uint8_t>(best & 3);
    est.alice_estimate.set(2 * i, (sa >> 1) & 1u);
    est.alice_estimate.set(2 * i + 1, sa & 1u);
    est.bob_estimate.set(2 * i, (sb >> 1) & 1u);
    est.bob_estimate.set(2 * i + 1, sb & 1u);
  }
  return est;
}

GlobalKey privacy_amplify(const BitBlock& bits, const BitBlock& public_seed,
                          std::size_t out_len) {
  if (out_len == 0 || out_len >= bits.size()) {
    throw std::invalid_argument(
        "privacy_amplify: output must be shorter than the input");
  }
  if (public_seed.size() != bits.size() + out_len - 1) {
    throw std::invalid_argument("privacy_amplify: seed length mismatch");
  }
  return {toeplitz_hash(bits, public_seed, out_len), public_seed};
}

void NbkgConfig::validate() const {
  rotation.validate();
  if (payload_bits == 0 || payload_bits % 2 != 0) {
    throw std::invalid_argument("NbkgConfig: payload_bits must be even, > 0");
  }
  if (eve_noise_variance < 0.0) {
    throw std::invalid_argument("NbkgConfig: negative eve_noise_variance");
  }
  if (output_key_bits >= 2 * payload_bits) {
    throw std::invalid_argument(
        "NbkgConfig: output key must be shorter than the exchanged material");
  }
}

NbkgReport run_nbkg(const NbkgConfig& cfg, const SeedStream& seed) {
  cfg.validate();
  const std::size_t n = cfg.payload_bits;

  WiretapLinkConfig link;
  link.snr_db = cfg.snr_db;
  link.eve_noise_variance =
      cfg.eve_noise_variance > 0.0
          ? cfg.eve_noise_variance
          : channel::noise_variance_from_snr_db(cfg.snr_db);
  if (cfg.rayleigh_eve_gains) {
    RandomStream gain_rng(seed.child("eve_gains"));
    link.eve_gain_a = channel::sample_rayleigh_gain(gain_rng);
    link.eve_gain_b = channel::sample_rayleigh_gain(gain_rng);
  } else {
    link.eve_gain_a = cfg.eve_gain_a;
    link.eve_gain_b = cfg.eve_gain_b;
  }

  const LocalKey alice = collect_noise_bits(n, seed.child("noise_alice"));
  const LocalKey bob = collect_noise_bits(n, seed.child("noise_bob"));

  const ExchangeResult ex =
      exchange_round(alice, bob, link, cfg.rotation, seed.child("exchange"));
  const EveEstimates eve =
      eve_detect(ex.eve_observation, link, cfg.rotation);

  NbkgReport report;
  const std::size_t legit_errors =
      hamming_distance(ex.alice_received, bob.bits) +
      hamming_distance(ex.bob_received, alice.bits);
  report.legit_symbol_ber =
      static_cast<double>(legit_errors) / static_cast<double>(2 * n);
  report.exchange_block_error = legit_errors > 0;
  report.eve_symbol_ber =
      (channel::bit_error_rate(eve.alice_estimate, alice.bits) +
       channel::bit_error_rate(eve.bob_estimate, bob.bits)) /
      2.0;

  // Output length: the requested length capped by the min-entropy budget of
  // the exchanged material, estimated from Eve's measured error rate.
  const double floor_hat = std::min(report.eve_symbol_ber, 0.5);
  const double per_bit =
      floor_hat > 0.0 ? metrics::min_entropy_bound(floor_hat) : 0.0;
  const auto budget = static_cast<std::size_t>(
      std::floor(per_bit * static_cast<double>(2 * n)));
  const std::size_t requested =
      cfg.output_key_bits > 0 ? cfg.output_key_bits : n;
  const std::size_t out_len =
      std::max<std::size_t>(1, std::min({requested, budget, 2 * n - 1}));
  report.output_key_bits = out_len;

  // Everyone hashes (Alice material, Bob material) with the same public seed.
  RandomStream amp_rng(seed.child("amplifier"));
  BitBlock amp_seed(2 * n + out_len - 1);
  for (std::size_t i = 0; i < amp_seed.size(); ++i) {
    amp_seed.set(i, amp_rng.next_u64() & 1u);
  }
  const GlobalKey alice_key =
      privacy_amplify(alice.bits.concat(ex.alice_received), amp_seed, out_len);
  const GlobalKey bob_key =
      privacy_amplify(ex.bob_received.concat(bob.bits), amp_seed, out_len);
  const GlobalKey eve_key = privacy_amplify(
      eve.alice_estimate.concat(eve.bob_estimate), amp_seed, out_len);

  report.key_mismatch = !(alice_key.bits == bob_key.bits);
  report.eve_key_distance =
      channel::bit_error_rate(alice_key.bits, eve_key.bits);
  // n/2 full-duplex channel uses produce out_len key bits; the reference
  // data link moves 4 bits per use (QPSK, both directions at once).
  report.achieved_dosa = static_cast<double>(out_len) /
                         (static_cast<double>(n) / 2.0) / 4.0;
  return report;
}

}  // namespace otpsim::nbkg
