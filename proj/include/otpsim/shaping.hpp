// Keyless secure transmission: block sizing from the eavesdropper error
// floor, and the randomness-shaping chain that spreads and accumulates that
// floor across a whole session.
//
// Three extractors compose the chain. The in-block extractor is a public
// invertible GF(2) matrix, so one residual bit error scrambles roughly half
// of the recovered block. The one-way extractor expands the running state
// into a pseudorandom mask (universal hash of the state, then ChaCha20
// expansion). The compressive extractor folds each sent block back into the
// state, so a corrupted block scrambles every later one. Encoding of block i
// with state s_{i-1}:
//
//     u_i = m_i XOR mask(s_{i-1});  v_i = B * u_i;  x_i = ecc(v_i);
//     s_i = compress(s_{i-1}, v_i)
//
// and decoding inverts each step in order. The initial state t_0 is a random
// vector shared before the session starts.
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "otpsim/bitblock.hpp"
#include "otpsim/channel.hpp"
#include "otpsim/gf2.hpp"
#include "otpsim/metrics.hpp"
#include "otpsim/rng.hpp"

namespace otpsim::shaping {

// Least L with L * log2(1/(1 - error_floor)) >= lambda: the shortest block
// carrying lambda bits of adversarial uncertainty at the given floor.
std::size_t required_block_length(int lambda, double error_floor);

enum class EccScheme {
  kPassthrough,   // rate 1
  kRepetition3,   // triple repetition, majority decoding
  kExternal,      // caller-supplied codec
};

struct EccCodec {
  std::function<BitBlock(const BitBlock&)> encode;
  std::function<BitBlock(const BitBlock&)> decode;
};

BitBlock ecc_encode(const BitBlock& block, EccScheme scheme);
BitBlock ecc_decode(const BitBlock& word, EccScheme scheme);

struct ShaperConfig {
  metrics::SecurityParams params{};   // lambda, error floor, block length L
  std::size_t state_width = 256;      // chained accumulator width, >= lambda
  EccScheme ecc_scheme = EccScheme::kRepetition3;
  std::optional<EccCodec> external_codec;  // required for kExternal
  std::uint64_t session_seed = 0;     // public; keys the extractors
  bool t0_through_eve_channel = false;  // see simulate_keyless

  void validate() const;
};

struct ShaperState {
  BitBlock accumulator;

  static ShaperState random(std::size_t width, const SeedStream& seed);
};

// In-block diffusion matrix: invertible by construction, derived from the
// seed bits, with every row and column of both the matrix and its inverse
// touching at least a quarter of the block.
class BreMatrix {
 public:
  BreMatrix(std::size_t block_length, const BitBlock& public_matrix_seed);

  BitBlock forward(const BitBlock& block) const;
  BitBlock inverse(const BitBlock& block) const;

  const Gf2Matrix& matrix() const { return forward_; }
  const Gf2Matrix& matrix_inverse() const { return inverse_; }

 private:
  Gf2Matrix forward_;
  Gf2Matrix inverse_;
};

// One-shot forms. An empty seed is the identity sentinel (test-only).
BitBlock bre_forward(const BitBlock& block, const BitBlock& public_matrix_seed);
BitBlock bre_inverse(const BitBlock& block, const BitBlock& public_matrix_seed);

// One-way mask expansion of the accumulator.
BitBlock ore(const ShaperState& state, std::size_t out_len,
             std::uint64_t session_seed);

// Compression of (state, block) back to state width.
ShaperState cre(const ShaperState& state, const BitBlock& block,
                std::uint64_t session_seed);

std::vector<BitBlock> shaper_encode(const std::vector<BitBlock>& blocks,
                                    const ShaperState& t0,
                                    const ShaperConfig& cfg);
std::vector<BitBlock> shaper_decode(const std::vector<BitBlock>& codewords,
                                    const ShaperState& t0,
                                    const ShaperConfig& cfg);

struct KeylessReport {
  double eve_ber_without_shaping = 0.0;
  double eve_ber_with_shaping = 0.0;
  double legit_ber = 0.0;           // recovered message vs truth, end to end
  double legit_ber_post_ecc = 0.0;  // ECC-decoded codeword stream vs truth
  std::size_t block_length = 0;
  double achieved_dosa = 0.0;        // lambda / L
  double achieved_dosa_coded = 0.0;  // lambda / transmitted (coded) length
};

// Sends q random blocks through the chain. Bob sees the coded bits through
// the raw legitimate BSC and decodes normally. Eve's channel models the
// error floor left by physical-layer security *after* her best decoding
// effort, so it applies to her recovered shaped stream (and, in the control
// arm without shaping, to the plain message stream) rather than to the coded
// bits. The control arm reports what Eve attains when no shaping is used.
KeylessReport simulate_keyless(const ShaperConfig& cfg,
                               const channel::BscConfig& legit,
                               const channel::BscConfig& eve, std::size_t q,
                               const SeedStream& seed);

// Exact probability that a whole block reaches the adversary error-free,
// obtained by explicit summation over the error-pattern distribution (full
// 2^L enumeration for small L, exact weight-class summation otherwise).
// Always <= 2^(-lambda) when L comes from required_block_length.
double eve_success_exhaustive(int lambda, double error_floor);

}  // namespace otpsim::shaping
