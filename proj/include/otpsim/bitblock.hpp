// Fixed-length bit sequences packed into 64-bit words. BitBlock is the unit
// of message, codeword, and key material throughout the toolkit; the packed
// representation keeps GF(2) linear algebra (XOR, masked parity) cheap.
#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace otpsim {

class BitBlock {
 public:
  BitBlock() = default;

  explicit BitBlock(std::size_t nbits)
      : nbits_(nbits), words_((nbits + 63) / 64, 0) {}

  static BitBlock from_string(std::string_view s) {
    BitBlock b(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] == '1') {
        b.set(i, true);
      } else if (s[i] != '0') {
        throw std::invalid_argument("BitBlock::from_string: expected '0'/'1'");
      }
    }
    return b;
  }

  std::size_t size() const { return nbits_; }
  bool empty() const { return nbits_ == 0; }

  bool get(std::size_t i) const {
    return (words_[i >> 6] >> (i & 63)) & 1u;
  }

  void set(std::size_t i, bool v) {
    const std::uint64_t mask = std::uint64_t{1} << (i & 63);
    if (v) {
      words_[i >> 6] |= mask;
    } else {
      words_[i >> 6] &= ~mask;
    }
  }

  void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

  std::size_t count_ones() const {
    std::size_t n = 0;
    for (std::uint64_t w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }

  BitBlock& operator^=(const BitBlock& o) {
    if (o.nbits_ != nbits_) {
      throw std::invalid_argument("BitBlock xor: length mismatch");
    }
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
    return *this;
  }

  friend BitBlock operator^(BitBlock a, const BitBlock& b) {
    a ^= b;
    return a;
  }

  bool operator==(const BitBlock&) const = default;

  // Parity of the AND with another block of equal length: the GF(2) inner
  // product used by matrix rows and Toeplitz hashing.
  bool dot(const BitBlock& o) const {
    if (o.nbits_ != nbits_) {
      throw std::invalid_argument("BitBlock dot: length mismatch");
    }
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < words_.size(); ++i) acc ^= words_[i] & o.words_[i];
    return std::popcount(acc) & 1;
  }

  BitBlock concat(const BitBlock& tail) const {
    BitBlock out(nbits_ + tail.nbits_);
    for (std::size_t i = 0; i < words_.size(); ++i) out.words_[i] = words_[i];
    // Tail starts at an arbitrary bit offset; splice word by word.
    const std::size_t off = nbits_;
    for (std::size_t i = 0; i < tail.nbits_; i += 64) {
      const std::size_t n = std::min<std::size_t>(64, tail.nbits_ - i);
      out.splice_word(off + i, tail.word_at(i, n), n);
    }
    return out;
  }

  BitBlock slice(std::size_t offset, std::size_t len) const {
    if (offset + len > nbits_) {
      throw std::out_of_range("BitBlock::slice: out of range");
    }
    BitBlock out(len);
    for (std::size_t i = 0; i < len; i += 64) {
      const std::size_t n = std::min<std::size_t>(64, len - i);
      out.splice_word(i, word_at(offset + i, n), n);
    }
    return out;
  }

  BitBlock reversed() const {
    BitBlock out(nbits_);
    for (std::size_t i = 0; i < nbits_; ++i) out.set(i, get(nbits_ - 1 - i));
    return out;
  }

  // Up to 64 bits starting at `pos` (little-endian bit order), zero padded.
  std::uint64_t word_at(std::size_t pos, std::size_t n = 64) const {
    const std::size_t wi = pos >> 6;
    const std::size_t sh = pos & 63;
    std::uint64_t w = words_[wi] >> sh;
    if (sh != 0 && wi + 1 < words_.size()) w |= words_[wi + 1] << (64 - sh);
    if (n < 64) w &= (std::uint64_t{1} << n) - 1;
    return w;
  }

  const std::vector<std::uint64_t>& words() const { return words_; }
  std::vector<std::uint64_t>& words() { return words_; }

  std::string to_string() const {
    std::string s(nbits_, '0');
    for (std::size_t i = 0; i < nbits_; ++i) {
      if (get(i)) s[i] = '1';
    }
    return s;
  }

 private:
  void splice_word(std::size_t pos, std::uint64_t w, std::size_t n) {
    for (std::size_t b = 0; b < n; ++b) set(pos + b, (w >> b) & 1u);
  }

  std::size_t nbits_ = 0;
  std::vector<std::uint64_t> words_;
};

inline std::size_t hamming_distance(const BitBlock& a, const BitBlock& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("hamming_distance: length mismatch");
  }
  std::size_t n = 0;
  for (std::size_t i = 0; i < a.words().size(); ++i) {
    n += static_cast<std::size_t>(std::popcount(a.words()[i] ^ b.words()[i]));
  }
  return n;
}

}  // namespace otpsim
