// Dense GF(2) matrices with packed rows: multiply, invert, and the
// random-invertible construction (product of unit-diagonal triangular
// factors) used to build diffusion matrices.
#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "otpsim/bitblock.hpp"
#include "otpsim/rng.hpp"

namespace otpsim {

class Gf2Matrix {
 public:
  Gf2Matrix() = default;
  Gf2Matrix(std::size_t rows, std::size_t cols);

  static Gf2Matrix identity(std::size_t n);

  // Invertible by construction: L * U with random unit-diagonal triangular
  // factors drawn from the stream.
  static Gf2Matrix random_invertible(std::size_t n, RandomStream& rng);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  bool get(std::size_t r, std::size_t c) const {
    return (row_ptr(r)[c >> 6] >> (c & 63)) & 1u;
  }
  void set(std::size_t r, std::size_t c, bool v) {
    const std::uint64_t mask = std::uint64_t{1} << (c & 63);
    if (v) {
      row_ptr(r)[c >> 6] |= mask;
    } else {
      row_ptr(r)[c >> 6] &= ~mask;
    }
  }

  BitBlock multiply(const BitBlock& x) const;
  Gf2Matrix multiply(const Gf2Matrix& o) const;

  // Gauss-Jordan; throws std::domain_error on a singular matrix.
  Gf2Matrix inverse() const;

  std::size_t row_weight(std::size_t r) const;
  std::size_t col_weight(std::size_t c) const;

  bool operator==(const Gf2Matrix&) const = default;

 private:
  const std::uint64_t* row_ptr(std::size_t r) const { return bits_.data() + r * wpr_; }
  std::uint64_t* row_ptr(std::size_t r) { return bits_.data() + r * wpr_; }
  void xor_row(std::size_t dst, std::size_t src);

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t wpr_ = 0;  // words per row
  std::vector<std::uint64_t> bits_;
};

}  // namespace otpsim
