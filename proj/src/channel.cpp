#include "otpsim/channel.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace otpsim::channel {

double noise_variance_from_snr_db(double snr_db) {
  if (std::isinf(snr_db) && snr_db > 0) return 0.0;
  return std::pow(10.0, -snr_db / 10.0);
}

std::vector<ComplexSample> awgn(const std::vector<ComplexSample>& samples,
                                double snr_db, const SeedStream& seed) {
  const double var = noise_variance_from_snr_db(snr_db);
  if (var == 0.0) return samples;
  RandomStream rng(seed);
  std::vector<ComplexSample> out;
  out.reserve(samples.size());
  for (const auto& s : samples) out.push_back(s + rng.complex_gaussian(var));
  return out;
}

BitBlock bsc(const BitBlock& bits, const BscConfig& config,
             const SeedStream& seed) {
  if (config.crossover < 0.0 || config.crossover > 0.5) {
    throw std::invalid_argument("bsc: crossover must lie in [0, 0.5]");
  }
  BitBlock out = bits;
  if (config.crossover == 0.0) return out;
  RandomStream rng(seed);
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (rng.bernoulli(config.crossover)) out.flip(i);
  }
  return out;
}

std::vector<ComplexSample> eve_superposition(
    const std::vector<ComplexSample>& tx_a,
    const std::vector<ComplexSample>& tx_b, const WiretapLinkConfig& cfg,
    const SeedStream& seed) {
  if (tx_a.size() != tx_b.size()) {
    throw std::invalid_argument("eve_superposition: stream length mismatch");
  }
  if (cfg.eve_noise_variance < 0.0) {
    throw std::invalid_argument("eve_superposition: negative noise variance");
  }
  RandomStream rng(seed);
  std::vector<ComplexSample> out;
  out.reserve(tx_a.size());
  for (std::size_t i = 0; i < tx_a.size(); ++i) {
    ComplexSample z = cfg.eve_gain_a * tx_a[i] + cfg.eve_gain_b * tx_b[i];
    if (cfg.eve_noise_variance > 0.0) {
      z += rng.complex_gaussian(cfg.eve_noise_variance);
    }
    out.push_back(z);
  }
  return out;
}

ComplexSample sample_rayleigh_gain(const SeedStream& seed) {
  RandomStream rng(seed);
  return sample_rayleigh_gain(rng);
}

ComplexSample sample_rayleigh_gain(RandomStream& rng) {
  return rng.complex_gaussian(1.0);
}

double bit_error_rate(const BitBlock& a, const BitBlock& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("bit_error_rate: length mismatch");
  }
  if (a.empty()) return 0.0;
  return static_cast<double>(hamming_distance(a, b)) /
         static_cast<double>(a.size());
}

}  // namespace otpsim::channel
