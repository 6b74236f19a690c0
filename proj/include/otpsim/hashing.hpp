// Keyed bit-expansion and 2-universal compression primitives shared by the
// privacy-amplification and randomness-shaping layers: a ChaCha20 keystream
// expander and a binary Toeplitz hash.
#pragma once

#include <array>
#include <cstddef>
#include <cstdint>

#include "otpsim/bitblock.hpp"

namespace otpsim {

using ChaChaKey = std::array<std::uint32_t, 8>;

// Derives a 256-bit ChaCha key from a 64-bit constant plus a domain label.
ChaChaKey derive_chacha_key(std::uint64_t constant, std::string_view domain);

// Packs the first 256 bits of a block (zero padded) into a key.
ChaChaKey chacha_key_from_bits(const BitBlock& bits);

// nbits of ChaCha20 keystream under the given key, starting at block counter 0.
BitBlock chacha20_expand(const ChaChaKey& key, std::size_t nbits);

// Binary Toeplitz hash T*x over GF(2). T is out_len x in_len with
// T[i][j] = seed[i + in_len - 1 - j]; seed must hold in_len + out_len - 1
// bits. 2-universal: for fixed distinct inputs, each output bit differs with
// probability 1/2 over a uniform seed.
BitBlock toeplitz_hash(const BitBlock& input, const BitBlock& seed,
                       std::size_t out_len);

}  // namespace otpsim
