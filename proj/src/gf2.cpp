#include "otpsim/gf2.hpp"

#include <bit>
#include <stdexcept>

namespace otpsim {

Gf2Matrix::Gf2Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), wpr_((cols + 63) / 64), bits_(rows * wpr_, 0) {}

Gf2Matrix Gf2Matrix::identity(std::size_t n) {
  Gf2Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
  return m;
}

Gf2Matrix Gf2Matrix::random_invertible(std::size_t n, RandomStream& rng) {
  Gf2Matrix lower(n, n);
  Gf2Matrix upper(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    lower.set(r, r, true);
    upper.set(r, r, true);
    for (std::size_t c = 0; c < r; ++c) lower.set(r, c, rng.next_u64() & 1u);
    for (std::size_t c = r + 1; c < n; ++c) upper.set(r, c, rng.next_u64() & 1u);
  }
  return lower.multiply(upper);
}

BitBlock Gf2Matrix::multiply(const BitBlock& x) const {
  if (x.size() != cols_) {
    throw std::invalid_argument("Gf2Matrix::multiply: length mismatch");
  }
  BitBlock out(rows_);
  const auto& xs = x.words();
  for (std::size_t r = 0; r < rows_; ++r) {
    const std::uint64_t* row = row_ptr(r);
    std::uint64_t acc = 0;
    for (std::size_t w = 0; w < wpr_; ++w) acc ^= row[w] & xs[w];
    if (std::popcount(acc) & 1) out.set(r, true);
  }
  return out;
}

Gf2Matrix Gf2Matrix::multiply(const Gf2Matrix& o) const {
  if (cols_ != o.rows_) {
    throw std::invalid_argument("Gf2Matrix::multiply: shape mismatch");
  }
  Gf2Matrix out(rows_, o.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    std::uint64_t* dst = out.row_ptr(r);
    for (std::size_t k = 0; k < cols_; ++k) {
      if (get(r, k)) {
        const std::uint64_t* src = o.row_ptr(k);
        for (std::size_t w = 0; w < out.wpr_; ++w) dst[w] ^= src[w];
      }
    }
  }
  return out;
}

Gf2Matrix Gf2Matrix::inverse() const {
  if (rows_ != cols_) {
    throw std::invalid_argument("Gf2Matrix::inverse: not square");
  }
  Gf2Matrix a = *this;
  Gf2Matrix inv = identity(rows_);
  for (std::size_t col = 0; col < cols_; ++col) {
    std::size_t pivot = col;
    while (pivot < rows_ && !a.get(pivot, col)) ++pivot;
    if (pivot == rows_) {
      throw std::domain_error("Gf2Matrix::inverse: singular matrix");
    }
    if (pivot != col) {
      for (std::size_t w = 0; w < wpr_; ++w) {
        std::swap(a.row_ptr(col)[w], a.row_ptr(pivot)[w]);
        std::swap(inv.row_ptr(col)[w], inv.row_ptr(pivot)[w]);
      }
    }
    for (std::size_t r = 0; r < rows_; ++r) {
      if (r != col && a.get(r, col)) {
        a.xor_row(r, col);
        inv.xor_row(r, col);
      }
    }
  }
  return inv;
}

void Gf2Matrix::xor_row(std::size_t dst, std::size_t src) {
  std::uint64_t* d = row_ptr(dst);
  const std::uint64_t* s = row_ptr(src);
  for (std::size_t w = 0; w < wpr_; ++w) d[w] ^= s[w];
}

std::size_t Gf2Matrix::row_weight(std::size_t r) const {
  const std::uint64_t* row = row_ptr(r);
  std::size_t n = 0;
  for (std::size_t w = 0; w < wpr_; ++w) n += static_cast<std::size_t>(std::popcount(row[w]));
  return n;
}

std::size_t Gf2Matrix::col_weight(std::size_t c) const {
  std::size_t n = 0;
  for (std::size_t r = 0; r < rows_; ++r) n += get(r, c);
  return n;
}

}  // namespace otpsim
