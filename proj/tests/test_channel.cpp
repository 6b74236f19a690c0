#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "otpsim/channel.hpp"

using namespace otpsim;
using namespace otpsim::channel;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<ComplexSample> unit_symbols(std::size_t n, std::uint64_t key) {
  RandomStream rng(key);
  std::vector<ComplexSample> v(n);
  for (auto& s : v) {
    const double phase = rng.uniform() * 2.0 * 3.14159265358979323846;
    s = {std::cos(phase), std::sin(phase)};
  }
  return v;
}

BitBlock random_bits(std::size_t n, std::uint64_t key) {
  RandomStream rng(key);
  BitBlock b(n);
  for (std::size_t i = 0; i < n; ++i) b.set(i, rng.next_u64() & 1u);
  return b;
}

}  // namespace

TEST_CASE("awgn: noise-off sentinel is the identity") {
  const auto in = unit_symbols(64, 1);
  CHECK(awgn(in, kInf, {1, "x"}) == in);
}

TEST_CASE("awgn: empirical noise power matches the snr convention") {
  const auto in = unit_symbols(1000000, 2);
  const auto out = awgn(in, 0.0, {3, "awgn"});
  double power = 0.0;
  for (std::size_t i = 0; i < in.size(); ++i) {
    power += std::norm(out[i] - in[i]);
  }
  power /= static_cast<double>(in.size());
  CHECK(power == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("awgn: fixed seed replays bit-identically") {
  const auto in = unit_symbols(256, 4);
  const auto a = awgn(in, 10.0, {5, "det"});
  const auto b = awgn(in, 10.0, {5, "det"});
  CHECK(a == b);
  const auto c = awgn(in, 10.0, {5, "other"});
  CHECK(a != c);
}

TEST_CASE("bsc: crossover edge cases and statistics") {
  const BitBlock bits = random_bits(1000000, 9);
  CHECK(bsc(bits, {0.0}, {1, "b"}) == bits);

  const BitBlock half = bsc(bits, {0.5}, {1, "half"});
  const double flipped =
      static_cast<double>(hamming_distance(bits, half)) / 1e6;
  CHECK(flipped == doctest::Approx(0.5).epsilon(0.004));

  CHECK_THROWS_AS(bsc(bits, {0.6}, {1, "bad"}), std::invalid_argument);
  CHECK_THROWS_AS(bsc(bits, {-0.1}, {1, "bad"}), std::invalid_argument);
}

TEST_CASE("bsc: rare crossover matches its rate") {
  const BitBlock bits = random_bits(10000000, 11);
  const BitBlock out = bsc(bits, {1e-3}, {2, "rare"});
  const double rate =
      static_cast<double>(hamming_distance(bits, out)) / 1e7;
  CHECK(rate == doctest::Approx(1e-3).epsilon(0.1));
}

TEST_CASE("bsc: two passes compose like crossover 2p(1-p)") {
  const double p = 0.1;
  const BitBlock bits = random_bits(1000000, 13);
  const BitBlock twice =
      bsc(bsc(bits, {p}, {3, "pass1"}), {p}, {3, "pass2"});
  const double rate =
      static_cast<double>(hamming_distance(bits, twice)) / 1e6;
  const double expected = 2.0 * p * (1.0 - p);
  const double sigma = std::sqrt(expected * (1.0 - expected) / 1e6);
  CHECK(std::abs(rate - expected) < 3.0 * sigma);
}

TEST_CASE("eve superposition: degenerate and deterministic cases") {
  const auto tx_a = unit_symbols(128, 21);
  const std::vector<ComplexSample> zeros(128, {0.0, 0.0});
  WiretapLinkConfig cfg;
  cfg.eve_gain_a = {1.0, 0.0};
  cfg.eve_gain_b = {0.0, 0.0};
  cfg.eve_noise_variance = 0.0;
  CHECK(eve_superposition(tx_a, zeros, cfg, {1, "e"}) == tx_a);

  cfg.eve_noise_variance = 0.5;
  const auto o1 = eve_superposition(tx_a, zeros, cfg, {1, "e"});
  CHECK(o1 == eve_superposition(tx_a, zeros, cfg, {1, "e"}));

  CHECK_THROWS_AS(eve_superposition(tx_a, unit_symbols(5, 2), cfg, {1, "e"}),
                  std::invalid_argument);
}

TEST_CASE("eve superposition: powers add for independent unit streams") {
  const auto tx_a = unit_symbols(100000, 23);
  const auto tx_b = unit_symbols(100000, 24);
  WiretapLinkConfig cfg;
  cfg.eve_gain_a = {0.6, 0.8};  // unit modulus
  cfg.eve_gain_b = {0.0, 1.0};
  cfg.eve_noise_variance = 0.0;
  const auto out = eve_superposition(tx_a, tx_b, cfg, {1, "p"});
  double power = 0.0;
  for (const auto& z : out) power += std::norm(z);
  power /= static_cast<double>(out.size());
  CHECK(power == doctest::Approx(2.0).epsilon(0.01));
}

TEST_CASE("eve superposition: linear in each stream when noise is off") {
  const auto x = unit_symbols(64, 25);
  const auto y = unit_symbols(64, 26);
  const auto b = unit_symbols(64, 27);
  std::vector<ComplexSample> xy(64);
  for (std::size_t i = 0; i < 64; ++i) xy[i] = x[i] + y[i];
  const std::vector<ComplexSample> zeros(64, {0.0, 0.0});
  WiretapLinkConfig cfg;
  cfg.eve_gain_a = {0.3, -0.4};
  cfg.eve_gain_b = {1.1, 0.2};
  cfg.eve_noise_variance = 0.0;
  const auto lhs = eve_superposition(xy, b, cfg, {1, "l"});
  const auto rhs_x = eve_superposition(x, b, cfg, {1, "l"});
  const auto rhs_y = eve_superposition(y, zeros, cfg, {1, "l"});
  for (std::size_t i = 0; i < 64; ++i) {
    CHECK(std::abs(lhs[i] - rhs_x[i] - rhs_y[i]) < 1e-12);
  }
}

TEST_CASE("rayleigh gains: unit power, reproducible, independent labels") {
  RandomStream rng(SeedStream{7, "gains"});
  double power = 0.0;
  for (int i = 0; i < 1000000; ++i) {
    power += std::norm(sample_rayleigh_gain(rng));
  }
  power /= 1e6;
  CHECK(power == doctest::Approx(1.0).epsilon(0.01));

  CHECK(sample_rayleigh_gain(SeedStream{7, "a"}) ==
        sample_rayleigh_gain(SeedStream{7, "a"}));

  // correlation between streams under distinct labels
  RandomStream s1(SeedStream{7, "one"});
  RandomStream s2(SeedStream{7, "two"});
  double sum1 = 0.0, sum2 = 0.0, sum11 = 0.0, sum22 = 0.0, sum12 = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const double a = sample_rayleigh_gain(s1).real();
    const double b = sample_rayleigh_gain(s2).real();
    sum1 += a;
    sum2 += b;
    sum11 += a * a;
    sum22 += b * b;
    sum12 += a * b;
  }
  const double cov = sum12 / n - (sum1 / n) * (sum2 / n);
  const double var1 = sum11 / n - (sum1 / n) * (sum1 / n);
  const double var2 = sum22 / n - (sum2 / n) * (sum2 / n);
  CHECK(std::abs(cov / std::sqrt(var1 * var2)) < 0.01);
}

TEST_CASE("bit error rate") {
  const BitBlock a = random_bits(398, 31);
  CHECK(bit_error_rate(a, a) == 0.0);
  BitBlock inverted = a;
  for (std::size_t i = 0; i < a.size(); ++i) inverted.flip(i);
  CHECK(bit_error_rate(a, inverted) == 1.0);
  BitBlock one_off = a;
  one_off.flip(200);
  CHECK(bit_error_rate(a, one_off) == doctest::Approx(1.0 / 398.0));
  CHECK(bit_error_rate(one_off, a) == bit_error_rate(a, one_off));
  CHECK_THROWS_AS(bit_error_rate(a, BitBlock(10)), std::invalid_argument);
}
