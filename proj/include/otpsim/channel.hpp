// Seedable channel primitives: complex AWGN links, binary symmetric channels,
// Rayleigh eavesdropper gains, and the full-duplex superposition seen by a
// third party. Every operation is a pure function of (inputs, seed).
//
// Conventions fixed here and used everywhere: SNR is energy per complex
// symbol over total complex noise variance; AWGN noise variance is split
// equally between the real and imaginary parts; snr_db = +infinity is the
// noise-off sentinel so algebraic identities can be asserted exactly.
#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "otpsim/bitblock.hpp"
#include "otpsim/rng.hpp"

namespace otpsim {

using ComplexSample = std::complex<double>;

namespace channel {

struct BscConfig {
  double crossover = 0.0;  // in [0, 0.5]
};

struct WiretapLinkConfig {
  double snr_db = 25.0;               // legitimate links; gains fixed at unity
  ComplexSample eve_gain_a{1.0, 0.0};  // Alice -> Eve
  ComplexSample eve_gain_b{0.0, 1.0};  // Bob -> Eve
  double eve_noise_variance = 1e-3;    // total complex variance; 0 = noise off
};

// Total complex noise variance for a given SNR against unit symbol energy.
// Returns 0 for the +infinity sentinel.
double noise_variance_from_snr_db(double snr_db);

std::vector<ComplexSample> awgn(const std::vector<ComplexSample>& samples,
                                double snr_db, const SeedStream& seed);

BitBlock bsc(const BitBlock& bits, const BscConfig& config,
             const SeedStream& seed);

// eve_gain_a * tx_a + eve_gain_b * tx_b + CN(0, eve_noise_variance).
std::vector<ComplexSample> eve_superposition(
    const std::vector<ComplexSample>& tx_a,
    const std::vector<ComplexSample>& tx_b, const WiretapLinkConfig& cfg,
    const SeedStream& seed);

// Unit average power complex Gaussian gain.
ComplexSample sample_rayleigh_gain(const SeedStream& seed);
ComplexSample sample_rayleigh_gain(RandomStream& rng);

double bit_error_rate(const BitBlock& a, const BitBlock& b);

}  // namespace channel
}  // namespace otpsim
