// Noise-based key generation: both parties quantize locally collected noise
// into bits, exchange them over a full-duplex link protected by constellation
// rotation plus artificial-noise injection, and distill the global key with
// a Toeplitz privacy-amplification hash.
//
// The rotation trick: a QPSK point is rotated by theta and projected onto
// the real axis. For theta in (0, pi/4) the four projections stay distinct,
// so the real line carries both bits and the imaginary dimension is free for
// artificial noise. A legitimate receiver detects on the real axis and never
// sees the peer's noise; an eavesdropper receives the superposition of both
// transmit signals, where signal and noise dimensions mix.
#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "otpsim/bitblock.hpp"
#include "otpsim/channel.hpp"
#include "otpsim/rng.hpp"

namespace otpsim::nbkg {

using channel::WiretapLinkConfig;

// Maps the QPSK projections onto uniform 4-PAM, maximizing the minimum
// projected distance.
inline double default_rotation_angle() { return std::atan(0.5); }

struct RotationConfig {
  double theta = default_rotation_angle();  // (0, pi/4), projections distinct
  double an_power_fraction = 0.5;           // [0, 1) share given to noise

  void validate() const;
};

struct LocalKey {
  BitBlock bits;
};

struct GlobalKey {
  BitBlock bits;
  BitBlock amplifier_seed;  // public universal-hash seed
};

// Per-trial protocol measurements.
struct NbkgReport {
  bool key_mismatch = false;      // Alice's and Bob's global keys differ
  double eve_key_distance = 0.0;  // normalized Hamming distance, Eve vs Alice
  double eve_symbol_ber = 0.0;    // Eve's exchange-bit error rate
  double legit_symbol_ber = 0.0;  // legitimate exchange-bit error rate
  double achieved_dosa = 0.0;     // key bits per use / data-link bits per use
  std::size_t output_key_bits = 0;
  bool exchange_block_error = false;  // any legitimate bit error this trial
};

// Steps 1-2: sign-quantized Gaussian noise samples, i.i.d. uniform bits.
LocalKey collect_noise_bits(std::size_t count, const SeedStream& seed);

// Gray-mapped unit-energy QPSK; bit pair (b0, b1) -> ((1-2*b0) + j(1-2*b1))/sqrt(2).
std::vector<ComplexSample> modulate_qpsk(const BitBlock& bits);

// Re(symbol * e^{-j theta}).
double rotate_and_project(ComplexSample symbol, const RotationConfig& cfg);

// Projection of each 2-bit symbol value (b0<<1 | b1); descending order
// {+ (c+s), +(c-s), -(c-s), -(c+s)}/sqrt(2). Second moment is 1/2 for any
// theta, since cos^2 + sin^2 = 1.
std::array<double, 4> projection_alphabet(const RotationConfig& cfg);

// Radio-side amplitude applied to projections so that the information
// component carries (1 - an_power_fraction) of unit transmit power.
double projection_scale(const RotationConfig& cfg);

// Real part: scaled projection. Imaginary part: Gaussian artificial noise of
// power an_power_fraction. Average total transmit power is 1.
ComplexSample build_tx_signal(double projection, const RotationConfig& cfg,
                              RandomStream& an_rng);
std::vector<ComplexSample> build_tx_block(const std::vector<double>& projections,
                                          const RotationConfig& cfg,
                                          const SeedStream& seed);

// Minimum-distance detection on the real axis; returns the 2-bit symbol.
// Assumes perfect self-interference cancellation, so the input is the peer's
// signal plus receiver noise.
std::uint8_t detect_projection(ComplexSample received, const RotationConfig& cfg);

struct ExchangeResult {
  BitBlock alice_received;  // Alice's estimate of Bob's bits
  BitBlock bob_received;    // Bob's estimate of Alice's bits
  std::vector<ComplexSample> eve_observation;
};

// Step 3: simultaneous bidirectional transfer of the local keys. Both
// parties transmit at once; Eve records the superposition.
ExchangeResult exchange_round(const LocalKey& alice, const LocalKey& bob,
                              const WiretapLinkConfig& link,
                              const RotationConfig& cfg,
                              const SeedStream& seed);

struct EveEstimates {
  BitBlock alice_estimate;
  BitBlock bob_estimate;
};

// Joint maximum-likelihood detection of the 16 (Alice, Bob) symbol pairs
// from the 2D observation, marginalizing the Gaussian artificial-noise
// dimensions. Eve is granted the rotation angle and her channel gains.
EveEstimates eve_detect(const std::vector<ComplexSample>& observation,
                        const WiretapLinkConfig& link,
                        const RotationConfig& cfg);

// Step 4: binary Toeplitz hash of the exchanged material down to out_len
// bits. public_seed must hold bits.size() + out_len - 1 bits.
GlobalKey privacy_amplify(const BitBlock& bits, const BitBlock& public_seed,
                          std::size_t out_len);

struct NbkgConfig {
  std::size_t payload_bits = 256;  // per-party local key bits, even
  double snr_db = 25.0;            // legitimate links
  RotationConfig rotation{};
  bool rayleigh_eve_gains = true;  // fresh Rayleigh gains per trial
  ComplexSample eve_gain_a{1.0, 0.0};  // used when rayleigh_eve_gains = false
  ComplexSample eve_gain_b{0.0, 1.0};
  double eve_noise_variance = 0.0;  // 0 -> same noise power as the legit nodes
  // 0 -> sized from the min-entropy budget implied by Eve's measured BER;
  // always capped by that budget and by (total exchanged bits - 1).
  std::size_t output_key_bits = 0;

  void validate() const;
};

// Full protocol: collect, exchange, amplify; Eve runs her best-effort
// detector on the superposed observation and hashes her estimates with the
// same public seed.
NbkgReport run_nbkg(const NbkgConfig& cfg, const SeedStream& seed);

}  // namespace otpsim::nbkg
