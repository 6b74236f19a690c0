#include "otpsim/shaping.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include "otpsim/hashing.hpp"

namespace otpsim::shaping {

std::size_t required_block_length(int lambda, double error_floor) {
  if (lambda < 1) {
    throw std::invalid_argument("required_block_length: lambda must be >= 1");
  }
  if (!(error_floor > 0.0) || !(error_floor < 1.0)) {
    throw std::invalid_argument(
        "required_block_length: error_floor must lie in (0, 1)");
  }
  const double per_bit = -std::log2(1.0 - error_floor);
  auto len = static_cast<std::size_t>(
      std::ceil(static_cast<double>(lambda) / per_bit));
  // Pin down the least L with L * per_bit >= lambda against rounding slop.
  while (len > 1 && static_cast<double>(len - 1) * per_bit >=
                        static_cast<double>(lambda)) {
    --len;
  }
  while (static_cast<double>(len) * per_bit < static_cast<double>(lambda)) {
    ++len;
  }
  return len;
}

BitBlock ecc_encode(const BitBlock& block, EccScheme scheme) {
  switch (scheme) {
    case EccScheme::kPassthrough:
      return block;
    case EccScheme::kRepetition3: {
      BitBlock out(block.size() * 3);
      for (std::size_t i = 0; i < block.size(); ++i) {
        if (block.get(i)) {
          out.set(3 * i, true);
          out.set(3 * i + 1, true);
          out.set(3 * i + 2, true);
        }
      }
      return out;
    }
    case EccScheme::kExternal:
      throw std::invalid_argument("ecc_encode: external codec not bound here");
  }
  throw std::logic_error("ecc_encode: unknown scheme");
}

BitBlock ecc_decode(const BitBlock& word, EccScheme scheme) {
  switch (scheme) {
    case EccScheme::kPassthrough:
      return word;
    case EccScheme::kRepetition3: {
      if (word.size() % 3 != 0) {
        throw std::invalid_argument(
            "ecc_decode: repetition-3 word length not divisible by 3");
      }
      BitBlock out(word.size() / 3);
      for (std::size_t i = 0; i < out.size(); ++i) {
        const int votes = word.get(3 * i) + word.get(3 * i + 1) +
                          word.get(3 * i + 2);
        if (votes >= 2) out.set(i, true);
      }
      return out;
    }
    case EccScheme::kExternal:
      throw std::invalid_argument("ecc_decode: external codec not bound here");
  }
  throw std::logic_error("ecc_decode: unknown scheme");
}

void ShaperConfig::validate() const {
  params.validate();
  if (state_width < static_cast<std::size_t>(params.lambda)) {
    throw std::invalid_argument(
        "ShaperConfig: state_width must be at least lambda");
  }
  if (ecc_scheme == EccScheme::kExternal &&
      (!external_codec || !external_codec->encode || !external_codec->decode)) {
    throw std::invalid_argument(
        "ShaperConfig: external ECC selected without a codec");
  }
}

ShaperState ShaperState::random(std::size_t width, const SeedStream& seed) {
  RandomStream rng(seed);
  ShaperState state{BitBlock(width)};
  for (std::size_t i = 0; i < width; ++i) {
    state.accumulator.set(i, rng.next_u64() & 1u);
  }
  return state;
}

namespace {

// Deterministic matrix derivation with a verified diffusion floor: retry
// with a bumped tweak until every row and column of the matrix and its
// inverse has weight >= max(1, L/4).
bool diffusion_ok(const Gf2Matrix& m, std::size_t floor_weight) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (m.row_weight(i) < floor_weight || m.col_weight(i) < floor_weight) {
      return false;
    }
  }
  return true;
}

BitBlock ecc_encode_with(const ShaperConfig& cfg, const BitBlock& block) {
  if (cfg.ecc_scheme == EccScheme::kExternal) {
    return cfg.external_codec->encode(block);
  }
  return ecc_encode(block, cfg.ecc_scheme);
}

BitBlock ecc_decode_with(const ShaperConfig& cfg, const BitBlock& word) {
  if (cfg.ecc_scheme == EccScheme::kExternal) {
    return cfg.external_codec->decode(word);
  }
  return ecc_decode(word, cfg.ecc_scheme);
}

}  // namespace

BreMatrix::BreMatrix(std::size_t block_length,
                     const BitBlock& public_matrix_seed) {
  if (block_length == 0) {
    throw std::invalid_argument("BreMatrix: empty block");
  }
  if (public_matrix_seed.empty()) {
    // Identity sentinel, for tests that need the chain without diffusion.
    forward_ = Gf2Matrix::identity(block_length);
    inverse_ = forward_;
    return;
  }
  std::uint64_t key = detail::splitmix64(
      detail::fnv1a64(public_matrix_seed.to_string()) ^ block_length);
  const std::size_t floor_weight = std::max<std::size_t>(1, block_length / 4);
  for (std::uint64_t tweak = 0;; ++tweak) {
    RandomStream rng(key + tweak);
    Gf2Matrix candidate = Gf2Matrix::random_invertible(block_length, rng);
    Gf2Matrix inv = candidate.inverse();
    if (diffusion_ok(candidate, floor_weight) && diffusion_ok(inv, floor_weight)) {
      forward_ = std::move(candidate);
      inverse_ = std::move(inv);
      return;
    }
  }
}

BitBlock BreMatrix::forward(const BitBlock& block) const {
  return forward_.multiply(block);
}

BitBlock BreMatrix::inverse(const BitBlock& block) const {
  return inverse_.multiply(block);
}

BitBlock bre_forward(const BitBlock& block, const BitBlock& public_matrix_seed) {
  return BreMatrix(block.size(), public_matrix_seed).forward(block);
}

BitBlock bre_inverse(const BitBlock& block, const BitBlock& public_matrix_seed) {
  return BreMatrix(block.size(), public_matrix_seed).inverse(block);
}

BitBlock ore(const ShaperState& state, std::size_t out_len,
             std::uint64_t session_seed) {
  if (out_len == 0) {
    throw std::invalid_argument("ore: empty mask requested");
  }
  // Universal-hash the state down to a 256-bit key, then expand. The mask
  // reveals nothing about the state short of inverting the expansion.
  const std::size_t width = state.accumulator.size();
  const BitBlock hash_seed = chacha20_expand(
      derive_chacha_key(session_seed, "ore-seed"), width + 255);
  const BitBlock key_bits = toeplitz_hash(state.accumulator, hash_seed, 256);
  return chacha20_expand(chacha_key_from_bits(key_bits), out_len);
}

ShaperState cre(const ShaperState& state, const BitBlock& block,
                std::uint64_t session_seed) {
  const std::size_t width = state.accumulator.size();
  const BitBlock input = state.accumulator.concat(block);
  const BitBlock hash_seed = chacha20_expand(
      derive_chacha_key(session_seed, "cre-seed"), input.size() + width - 1);
  return ShaperState{toeplitz_hash(input, hash_seed, width)};
}

namespace {

// Session context caching the derived matrix and hash seeds; the per-block
// recurrence is shared verbatim between encode and decode.
struct ChainContext {
  explicit ChainContext(const ShaperConfig& cfg)
      : cfg_(cfg),
        block_length_(cfg.params.block_length),
        matrix_seed_(derive_matrix_seed(cfg)),
        bre_(block_length_, matrix_seed_),
        ore_key_seed_(chacha20_expand(
            derive_chacha_key(cfg.session_seed, "ore-seed"),
            cfg.state_width + 255)),
        cre_seed_(chacha20_expand(
            derive_chacha_key(cfg.session_seed, "cre-seed"),
            cfg.state_width + block_length_ + cfg.state_width - 1)) {}

  BitBlock mask(const ShaperState& state) const {
    const BitBlock key_bits =
        toeplitz_hash(state.accumulator, ore_key_seed_, 256);
    return chacha20_expand(chacha_key_from_bits(key_bits), block_length_);
  }

  ShaperState advance(const ShaperState& state, const BitBlock& shaped) const {
    return ShaperState{
        toeplitz_hash(state.accumulator.concat(shaped), cre_seed_,
                      cfg_.state_width)};
  }

  static BitBlock derive_matrix_seed(const ShaperConfig& cfg) {
    return chacha20_expand(derive_chacha_key(cfg.session_seed, "bre-matrix"),
                           128);
  }

  const ShaperConfig& cfg_;
  std::size_t block_length_;
  BitBlock matrix_seed_;
  BreMatrix bre_;
  BitBlock ore_key_seed_;
  BitBlock cre_seed_;
};

void check_chain_inputs(const std::vector<BitBlock>& blocks,
                        const ShaperState& t0, const ShaperConfig& cfg,
                        std::size_t expected_len, const char* what) {
  cfg.validate();
  if (t0.accumulator.size() != cfg.state_width) {
    throw std::invalid_argument(std::string(what) + ": t0 width mismatch");
  }
  for (const auto& b : blocks) {
    if (b.size() != expected_len) {
      throw std::invalid_argument(std::string(what) + ": block length mismatch");
    }
  }
}

}  // namespace

std::vector<BitBlock> shaper_encode(const std::vector<BitBlock>& blocks,
                                    const ShaperState& t0,
                                    const ShaperConfig& cfg) {
  check_chain_inputs(blocks, t0, cfg, cfg.params.block_length, "shaper_encode");
  const ChainContext ctx(cfg);
  std::vector<BitBlock> codewords;
  codewords.reserve(blocks.size());
  ShaperState state = t0;
  for (const auto& m : blocks) {
    const BitBlock u = m ^ ctx.mask(state);
    const BitBlock v = ctx.bre_.forward(u);
    codewords.push_back(ecc_encode_with(cfg, v));
    state = ctx.advance(state, v);
  }
  return codewords;
}

std::vector<BitBlock> shaper_decode(const std::vector<BitBlock>& codewords,
                                    const ShaperState& t0,
                                    const ShaperConfig& cfg) {
  cfg.validate();
  if (t0.accumulator.size() != cfg.state_width) {
    throw std::invalid_argument("shaper_decode: t0 width mismatch");
  }
  const ChainContext ctx(cfg);
  std::vector<BitBlock> blocks;
  blocks.reserve(codewords.size());
  ShaperState state = t0;
  for (const auto& x : codewords) {
    const BitBlock v = ecc_decode_with(cfg, x);
    if (v.size() != cfg.params.block_length) {
      throw std::invalid_argument("shaper_decode: codeword length mismatch");
    }
    const BitBlock u = ctx.bre_.inverse(v);
    blocks.push_back(u ^ ctx.mask(state));
    state = ctx.advance(state, v);
  }
  return blocks;
}

KeylessReport simulate_keyless(const ShaperConfig& cfg,
                               const channel::BscConfig& legit,
                               const channel::BscConfig& eve, std::size_t q,
                               const SeedStream& seed) {
  cfg.validate();
  if (std::abs(eve.crossover - cfg.params.error_floor) > 1e-12) {
    throw std::invalid_argument(
        "simulate_keyless: eve crossover must equal the configured error floor");
  }
  const std::size_t block_len = cfg.params.block_length;

  // Random message blocks.
  RandomStream msg_rng(seed.child("messages"));
  std::vector<BitBlock> messages(q, BitBlock(block_len));
  for (auto& m : messages) {
    for (std::size_t i = 0; i < block_len; ++i) {
      m.set(i, msg_rng.next_u64() & 1u);
    }
  }
  ShaperState t0 = ShaperState::random(cfg.state_width, seed.child("t0"));

  const std::vector<BitBlock> codewords = shaper_encode(messages, t0, cfg);
  const std::size_t coded_len = codewords.empty()
                                    ? ecc_encode_with(cfg, BitBlock(block_len)).size()
                                    : codewords[0].size();

  // Bob: raw channel on the coded bits, then normal decoding.
  std::size_t legit_msg_errors = 0;
  std::size_t legit_post_ecc_errors = 0;
  {
    std::vector<BitBlock> received;
    received.reserve(q);
    for (std::size_t i = 0; i < q; ++i) {
      received.push_back(channel::bsc(
          codewords[i], legit, seed.child("legit_bsc/" + std::to_string(i))));
    }
    ShaperState state = t0;
    const ChainContext ctx(cfg);
    for (std::size_t i = 0; i < q; ++i) {
      const BitBlock v_hat = ecc_decode_with(cfg, received[i]);
      const BitBlock v_true = ecc_decode_with(cfg, codewords[i]);
      legit_post_ecc_errors += hamming_distance(v_hat, v_true);
      const BitBlock u_hat = ctx.bre_.inverse(v_hat);
      const BitBlock m_hat = u_hat ^ ctx.mask(state);
      legit_msg_errors += hamming_distance(m_hat, messages[i]);
      state = ctx.advance(state, v_hat);
    }
  }

  // Eve: her channel is the residual floor after her own decoding effort,
  // so it corrupts the shaped stream she recovers.
  std::size_t eve_msg_errors = 0;
  {
    ShaperState state =
        cfg.t0_through_eve_channel
            ? ShaperState{channel::bsc(t0.accumulator, eve, seed.child("eve_t0"))}
            : t0;
    const ChainContext ctx(cfg);
    for (std::size_t i = 0; i < q; ++i) {
      const BitBlock v_true = ecc_decode_with(cfg, codewords[i]);
      const BitBlock v_hat = channel::bsc(
          v_true, eve, seed.child("eve_bsc/" + std::to_string(i)));
      const BitBlock u_hat = ctx.bre_.inverse(v_hat);
      const BitBlock m_hat = u_hat ^ ctx.mask(state);
      eve_msg_errors += hamming_distance(m_hat, messages[i]);
      state = ctx.advance(state, v_hat);
    }
  }

  // Control arm without shaping: plain ECC transmission of the same blocks.
  std::size_t eve_plain_errors = 0;
  for (std::size_t i = 0; i < q; ++i) {
    const BitBlock eve_plain = channel::bsc(
        messages[i], eve, seed.child("eve_plain/" + std::to_string(i)));
    eve_plain_errors += hamming_distance(eve_plain, messages[i]);
  }

  const double total_bits = static_cast<double>(q * block_len);
  KeylessReport report;
  report.block_length = block_len;
  report.legit_ber = q ? static_cast<double>(legit_msg_errors) / total_bits : 0.0;
  report.legit_ber_post_ecc =
      q ? static_cast<double>(legit_post_ecc_errors) / total_bits : 0.0;
  report.eve_ber_with_shaping =
      q ? static_cast<double>(eve_msg_errors) / total_bits : 0.0;
  report.eve_ber_without_shaping =
      q ? static_cast<double>(eve_plain_errors) / total_bits : 0.0;
  report.achieved_dosa =
      static_cast<double>(cfg.params.lambda) / static_cast<double>(block_len);
  report.achieved_dosa_coded =
      static_cast<double>(cfg.params.lambda) / static_cast<double>(coded_len);
  return report;
}

double eve_success_exhaustive(int lambda, double error_floor) {
  if (lambda < 1 || lambda > 16) {
    throw std::invalid_argument(
        "eve_success_exhaustive: lambda must lie in 1..16");
  }
  const std::size_t len = required_block_length(lambda, error_floor);
  const long double p = error_floor;
  long double success = 0.0L;
  long double total = 0.0L;
  if (len <= 24) {
    // Walk every error pattern; the clean pattern is the success event.
    std::vector<long double> weight_prob(len + 1);
    for (std::size_t w = 0; w <= len; ++w) {
      weight_prob[w] = std::pow(p, static_cast<int>(w)) *
                       std::pow(1.0L - p, static_cast<int>(len - w));
    }
    const std::size_t patterns = std::size_t{1} << len;
    for (std::size_t pattern = 0; pattern < patterns; ++pattern) {
      const long double prob = weight_prob[std::popcount(pattern)];
      total += prob;
      if (pattern == 0) success = prob;
    }
  } else {
    // Same summation grouped by Hamming weight, with exact binomials.
    long double binom = 1.0L;
    for (std::size_t w = 0; w <= len; ++w) {
      const long double prob =
          binom * std::pow(p, static_cast<int>(w)) *
          std::pow(1.0L - p, static_cast<int>(len - w));
      total += prob;
      if (w == 0) success = prob;
      binom = binom * static_cast<long double>(len - w) /
              static_cast<long double>(w + 1);
    }
  }
  if (std::abs(static_cast<double>(total) - 1.0) > 1e-9) {
    throw std::runtime_error(
        "eve_success_exhaustive: error-pattern mass does not sum to 1");
  }
  return static_cast<double>(success);
}

}  // namespace otpsim::shaping
