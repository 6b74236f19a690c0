#include "otpsim/hashing.hpp"

#include <bit>
#include <stdexcept>

#include "otpsim/rng.hpp"

namespace otpsim {

namespace {

inline std::uint32_t rotl32(std::uint32_t x, int n) {
  return (x << n) | (x >> (32 - n));
}

inline void quarter_round(std::uint32_t& a, std::uint32_t& b, std::uint32_t& c,
                          std::uint32_t& d) {
  a += b; d ^= a; d = rotl32(d, 16);
  c += d; b ^= c; b = rotl32(b, 12);
  a += b; d ^= a; d = rotl32(d, 8);
  c += d; b ^= c; b = rotl32(b, 7);
}

// One ChaCha20 block: 512 bits of keystream for (key, block counter).
void chacha20_block(const ChaChaKey& key, std::uint64_t counter,
                    std::uint32_t out[16]) {
  std::uint32_t s[16] = {
      0x61707865u, 0x3320646Eu, 0x79622D32u, 0x6B206574u,
      key[0], key[1], key[2], key[3],
      key[4], key[5], key[6], key[7],
      static_cast<std::uint32_t>(counter),
      static_cast<std::uint32_t>(counter >> 32),
      0u, 0u};
  std::uint32_t w[16];
  for (int i = 0; i < 16; ++i) w[i] = s[i];
  for (int round = 0; round < 10; ++round) {
    quarter_round(w[0], w[4], w[8], w[12]);
    quarter_round(w[1], w[5], w[9], w[13]);
    quarter_round(w[2], w[6], w[10], w[14]);
    quarter_round(w[3], w[7], w[11], w[15]);
    quarter_round(w[0], w[5], w[10], w[15]);
    quarter_round(w[1], w[6], w[11], w[12]);
    quarter_round(w[2], w[7], w[8], w[13]);
    quarter_round(w[3], w[4], w[9], w[14]);
  }
  for (int i = 0; i < 16; ++i) out[i] = w[i] + s[i];
}

}  // namespace

ChaChaKey derive_chacha_key(std::uint64_t constant, std::string_view domain) {
  ChaChaKey key{};
  std::uint64_t z = detail::splitmix64(constant) ^ detail::fnv1a64(domain);
  for (int i = 0; i < 4; ++i) {
    z = detail::splitmix64(z);
    key[2 * i] = static_cast<std::uint32_t>(z);
    key[2 * i + 1] = static_cast<std::uint32_t>(z >> 32);
  }
  return key;
}

ChaChaKey chacha_key_from_bits(const BitBlock& bits) {
  ChaChaKey key{};
  for (std::size_t i = 0; i < 8; ++i) {
    const std::size_t pos = i * 32;
    if (pos < bits.size()) {
      const std::size_t n = std::min<std::size_t>(32, bits.size() - pos);
      key[i] = static_cast<std::uint32_t>(bits.word_at(pos, n));
    }
  }
  return key;
}

BitBlock chacha20_expand(const ChaChaKey& key, std::size_t nbits) {
  BitBlock out(nbits);
  auto& words = out.words();
  std::uint32_t block[16];
  std::size_t word_idx = 0;
  for (std::uint64_t counter = 0; word_idx < words.size(); ++counter) {
    chacha20_block(key, counter, block);
    for (int i = 0; i < 16 && word_idx * 64 < nbits; i += 2) {
      words[word_idx++] = static_cast<std::uint64_t>(block[i]) |
                          (static_cast<std::uint64_t>(block[i + 1]) << 32);
    }
  }
  // Zero any bits past nbits in the last word.
  if (nbits & 63) words.back() &= (std::uint64_t{1} << (nbits & 63)) - 1;
  return out;
}

BitBlock toeplitz_hash(const BitBlock& input, const BitBlock& seed,
                       std::size_t out_len) {
  const std::size_t in_len = input.size();
  if (seed.size() != in_len + out_len - 1) {
    throw std::invalid_argument("toeplitz_hash: seed must hold in+out-1 bits");
  }
  // out[i] = parity_j seed[i + in_len - 1 - j] * x[j]
  //        = <seed[i .. i+in_len), reverse(x)>
  const BitBlock rev = input.reversed();
  const auto& rw = rev.words();
  BitBlock out(out_len);
  for (std::size_t i = 0; i < out_len; ++i) {
    std::uint64_t acc = 0;
    for (std::size_t w = 0; w * 64 < in_len; ++w) {
      const std::size_t n = std::min<std::size_t>(64, in_len - w * 64);
      acc ^= seed.word_at(i + w * 64, n) & rw[w];
    }
    if (std::popcount(acc) & 1) out.set(i, true);
  }
  return out;
}

}  // namespace otpsim
