// Closed-form secrecy quantities and the exhaustive perfect-secrecy audit.
//
// Degree-of-Approaching compares key entropy to protected-message entropy;
// Degree-of-Synchronous-Approaching compares key-generation capacity to the
// data-link capacity. The remaining operations relate an eavesdropper error
// floor p_e to per-bit min-entropy (log2(1/(1-p_e))) and back. All logarithms
// are base 2; entropies use the 0*log(0) = 0 convention.
#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace otpsim::metrics {

struct EntropyBudget {
  double key_entropy_bits = 0.0;      // E_K, >= 0
  double message_entropy_bits = 1.0;  // E_M, > 0
};

struct CapacityPair {
  double secret_key_capacity = 0.0;  // C_K, >= 0, bits per unit time
  double channel_capacity = 1.0;     // C_M, > 0, bits per unit time
};

struct SecurityParams {
  int lambda = 128;         // bits of computational security, > 0
  double error_floor = 0.5;  // p_e in (0, 1]
  std::size_t block_length = 128;  // L, >= lambda / log2(1/(1-p_e))

  void validate() const;  // throws std::invalid_argument on violation
};

// E_K / E_M. Values above 1 are returned as-is; reporting layers flag them.
double degree_of_approaching(const EntropyBudget& budget);

// C_K / C_M.
double degree_of_synchronous_approaching(const CapacityPair& pair);

// High-SNR closed-form approximation 1 - 2.83/log2(snr). May be negative at
// low SNR; the flag marks estimates below zero rather than clamping them.
struct HighSnrDosa {
  double value = 0.0;
  bool low_snr = false;
};
HighSnrDosa dosa_highsnr_approx(double snr_linear);

// Monte Carlo counterpart over the constellation-rotation exchange signal
// model. Numerator: I(key_a; rx_b) + I(key_b; rx_a) - I((key_a, key_b); eve),
// with 4-PAM projected inputs, half-power artificial noise, unit legitimate
// gains and equal noise variances everywhere. Denominator: the mutual
// information of the bidirectional full-duplex QPSK data link at the same
// SNR. The closed form above and this estimator are kept separate on
// purpose; they agree only as a loose trend, never numerically.
struct DosaEstimate {
  double value = 0.0;
  double forward_bits = 0.0;   // I(key_a; rx_b) per channel use
  double backward_bits = 0.0;  // I(key_b; rx_a)
  double eve_bits = 0.0;       // I((key_a, key_b); eve observation)
  double data_link_bits = 0.0; // bidirectional QPSK link, both directions
};
DosaEstimate estimate_dosa_montecarlo(double snr_linear,
                                      std::size_t sample_count,
                                      std::uint64_t rng_seed);

// Per-bit min-entropy bound log2(1/(1 - error_floor)), bits per transmitted
// bit. error_floor == 1 yields +infinity.
double min_entropy_bound(double error_floor);

// Inverse relation: the error floor needed for a target DoSA, 1 - 2^(-d).
double required_error_floor(double target_dosa);

// Exhaustive perfect-secrecy audit. Enumerates every (message, key) pair of
// a deterministic cipher with a uniform independent key, builds the joint
// distribution of (message, ciphertext), and returns H(M) and H(M|X) in
// bits. Perfect secrecy means the two coincide.
struct JointDistribution {
  std::size_t message_width = 0;
  std::size_t observation_width = 0;
  std::vector<double> probabilities;  // indexed (m << observation_width) | x

  double prob(std::uint32_t m, std::uint32_t x) const {
    return probabilities[(static_cast<std::size_t>(m) << observation_width) | x];
  }
};

using CipherFn = std::function<std::uint32_t(std::uint32_t msg, std::uint32_t key)>;

struct AuditResult {
  double h_m = 0.0;
  double h_m_given_x = 0.0;
};

JointDistribution joint_distribution_of_cipher(
    const CipherFn& cipher, std::size_t message_width, std::size_t key_width,
    const std::vector<double>& message_prior, std::size_t observation_width);

AuditResult exhaustive_secrecy_audit(const CipherFn& cipher,
                                     std::size_t message_width,
                                     std::size_t key_width,
                                     const std::vector<double>& message_prior);

AuditResult exhaustive_secrecy_audit(const CipherFn& cipher,
                                     std::size_t message_width,
                                     std::size_t key_width,
                                     const std::vector<double>& message_prior,
                                     std::size_t observation_width);

}  // namespace otpsim::metrics
