// Deterministic, splittable randomness. A SeedStream names a substream by
// (master_seed, label); RandomStream turns it into numbers with a counter-mode
// SplitMix64 generator, so identical (seed, label) always replays the same
// sequence and distinct labels are statistically independent. No libc or
// std::random_device state is involved anywhere: results are bit-identical
// across platforms and across any trial scheduling order.
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <string>
#include <string_view>

namespace otpsim {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001B3ull;
  }
  return h;
}

}  // namespace detail

struct SeedStream {
  std::uint64_t master_seed = 0;
  std::string stream_label;

  SeedStream child(std::string_view suffix) const {
    SeedStream s;
    s.master_seed = master_seed;
    s.stream_label = stream_label;
    s.stream_label += '/';
    s.stream_label += suffix;
    return s;
  }

  std::uint64_t key() const {
    return detail::splitmix64(detail::splitmix64(master_seed) ^
                              detail::fnv1a64(stream_label));
  }
};

class RandomStream {
 public:
  explicit RandomStream(const SeedStream& seed) : key_(seed.key()) {}
  explicit RandomStream(std::uint64_t raw_key) : key_(raw_key) {}

  std::uint64_t next_u64() {
    return detail::splitmix64(key_ + counter_++ * 0x9E3779B97F4A7C15ull);
  }

  // [0, 1)
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // (0, 1], safe as a log argument
  double uniform_pos() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  bool bernoulli(double p) { return uniform() < p; }

  // Standard normal via Box-Muller (explicit, not std::normal_distribution,
  // whose sequence is implementation-defined).
  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = uniform_pos();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  // Circularly symmetric complex Gaussian with E|z|^2 = total_variance.
  std::complex<double> complex_gaussian(double total_variance) {
    const double s = std::sqrt(total_variance / 2.0);
    const double re = gaussian();
    const double im = gaussian();
    return {s * re, s * im};
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace otpsim
