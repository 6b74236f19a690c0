#include "otpsim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "otpsim/nbkg.hpp"
#include "otpsim/rng.hpp"

namespace otpsim::metrics {

namespace {

constexpr double kHighSnrConstant = 2.83;

double entropy_term(double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; }

// log2 of the average of exp(l_i) over the hypothesis list, computed stably.
double log2_mean_exp(const double* l, std::size_t n) {
  double m = l[0];
  for (std::size_t i = 1; i < n; ++i) m = std::max(m, l[i]);
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += std::exp(l[i] - m);
  return (m + std::log(s / static_cast<double>(n))) / std::numbers::ln2;
}

}  // namespace

void SecurityParams::validate() const {
  if (lambda < 1) {
    throw std::invalid_argument("SecurityParams: lambda must be positive");
  }
  if (!(error_floor > 0.0) || error_floor > 1.0) {
    throw std::invalid_argument("SecurityParams: error_floor must lie in (0, 1]");
  }
  if (error_floor < 1.0) {
    const double per_bit = -std::log2(1.0 - error_floor);
    if (static_cast<double>(block_length) * per_bit <
        static_cast<double>(lambda)) {
      throw std::invalid_argument(
          "SecurityParams: block_length below the feasibility bound "
          "lambda / log2(1/(1-error_floor))");
    }
  }
}

double degree_of_approaching(const EntropyBudget& budget) {
  if (!(budget.message_entropy_bits > 0.0)) {
    throw std::invalid_argument(
        "degree_of_approaching: message_entropy_bits must be positive");
  }
  if (budget.key_entropy_bits < 0.0) {
    throw std::invalid_argument(
        "degree_of_approaching: key_entropy_bits must be nonnegative");
  }
  return budget.key_entropy_bits / budget.message_entropy_bits;
}

double degree_of_synchronous_approaching(const CapacityPair& pair) {
  if (!(pair.channel_capacity > 0.0)) {
    throw std::invalid_argument(
        "degree_of_synchronous_approaching: channel_capacity must be positive");
  }
  if (pair.secret_key_capacity < 0.0) {
    throw std::invalid_argument(
        "degree_of_synchronous_approaching: secret_key_capacity must be "
        "nonnegative");
  }
  return pair.secret_key_capacity / pair.channel_capacity;
}

HighSnrDosa dosa_highsnr_approx(double snr_linear) {
  if (!(snr_linear > 1.0)) {
    throw std::invalid_argument("dosa_highsnr_approx: snr must exceed 1");
  }
  const double value = 1.0 - kHighSnrConstant / std::log2(snr_linear);
  return {value, value < 0.0};
}

double min_entropy_bound(double error_floor) {
  if (!(error_floor > 0.0) || error_floor > 1.0) {
    throw std::invalid_argument("min_entropy_bound: error_floor must lie in (0, 1]");
  }
  if (error_floor == 1.0) return std::numeric_limits<double>::infinity();
  return -std::log2(1.0 - error_floor);
}

double required_error_floor(double target_dosa) {
  if (target_dosa < 0.0) {
    throw std::invalid_argument("required_error_floor: target must be nonnegative");
  }
  return 1.0 - std::exp2(-target_dosa);
}

DosaEstimate estimate_dosa_montecarlo(double snr_linear,
                                      std::size_t sample_count,
                                      std::uint64_t rng_seed) {
  if (!(snr_linear > 0.0)) {
    throw std::invalid_argument("estimate_dosa_montecarlo: snr must be positive");
  }
  if (sample_count < 10000) {
    throw std::invalid_argument(
        "estimate_dosa_montecarlo: need at least 1e4 samples");
  }

  // Footnote assumptions: unit legitimate gains, equal noise variances at
  // every node, perfect self-interference cancellation. Eve's geometry is
  // the canonical nondegenerate one (unit gains, 90 degree phase offset).
  const nbkg::RotationConfig rotation{};
  const auto alphabet = nbkg::projection_alphabet(rotation);
  const double scale = nbkg::projection_scale(rotation);
  const double an = rotation.an_power_fraction;
  const double noise_var = 1.0 / snr_linear;     // total complex variance
  const double dim_var = noise_var / 2.0;        // per real dimension
  const std::complex<double> ha{1.0, 0.0};
  const std::complex<double> hb{0.0, 1.0};

  SeedStream root{rng_seed, "dosa_mc"};
  DosaEstimate est;

  // Key link, one direction: scaled 4-PAM against real noise.
  const auto pam_direction = [&](const char* label) {
    RandomStream rng(root.child(label));
    double acc = 0.0;
    double lik[4];
    for (std::size_t i = 0; i < sample_count; ++i) {
      const int s = static_cast<int>(rng.next_u64() & 3u);
      const double y =
          alphabet[s] * scale + std::sqrt(dim_var) * rng.gaussian();
      for (int h = 0; h < 4; ++h) {
        const double d = y - alphabet[h] * scale;
        lik[h] = -d * d / (2.0 * dim_var);
      }
      acc += lik[s] / std::numbers::ln2 - log2_mean_exp(lik, 4);
    }
    return acc / static_cast<double>(sample_count);
  };
  est.forward_bits = pam_direction("forward");
  est.backward_bits = pam_direction("backward");

  // Eve: 16 joint hypotheses in 2D. Conditional covariance collects both
  // artificial-noise directions plus isotropic receiver noise.
  {
    RandomStream rng(root.child("eve"));
    const double cov_a = an * (ha.imag() * ha.imag() + hb.imag() * hb.imag()) + dim_var;
    const double cov_d = an * (ha.real() * ha.real() + hb.real() * hb.real()) + dim_var;
    const double cov_b = -an * (ha.imag() * ha.real() + hb.imag() * hb.real());
    const double det = cov_a * cov_d - cov_b * cov_b;
    std::array<std::complex<double>, 16> mean;
    for (int sa = 0; sa < 4; ++sa) {
      for (int sb = 0; sb < 4; ++sb) {
        mean[sa * 4 + sb] = ha * (alphabet[sa] * scale) + hb * (alphabet[sb] * scale);
      }
    }
    double acc = 0.0;
    double lik[16];
    for (std::size_t i = 0; i < sample_count; ++i) {
      const int s = static_cast<int>(rng.next_u64() & 15u);
      const double ga = std::sqrt(an) * rng.gaussian();
      const double gb = std::sqrt(an) * rng.gaussian();
      std::complex<double> z = mean[s] + ha * std::complex<double>{0.0, ga} +
                               hb * std::complex<double>{0.0, gb};
      z += rng.complex_gaussian(noise_var);
      for (int h = 0; h < 16; ++h) {
        const double dx = z.real() - mean[h].real();
        const double dy = z.imag() - mean[h].imag();
        lik[h] = -(cov_d * dx * dx - 2.0 * cov_b * dx * dy + cov_a * dy * dy) /
                 (2.0 * det);
      }
      acc += lik[s] / std::numbers::ln2 - log2_mean_exp(lik, 16);
    }
    est.eve_bits = acc / static_cast<double>(sample_count);
  }

  // Reference data link: plain full-duplex QPSK, each direction measured
  // with independent samples.
  const auto qpsk_direction = [&](const char* label) {
    RandomStream rng(root.child(label));
    const double p = 0.7071067811865475244;
    const std::array<std::complex<double>, 4> points{
        std::complex<double>{p, p}, {p, -p}, {-p, p}, {-p, -p}};
    double acc = 0.0;
    double lik[4];
    for (std::size_t i = 0; i < sample_count; ++i) {
      const int s = static_cast<int>(rng.next_u64() & 3u);
      const std::complex<double> z = points[s] + rng.complex_gaussian(noise_var);
      for (int h = 0; h < 4; ++h) {
        const double dx = z.real() - points[h].real();
        const double dy = z.imag() - points[h].imag();
        lik[h] = -(dx * dx + dy * dy) / (2.0 * dim_var);
      }
      acc += lik[s] / std::numbers::ln2 - log2_mean_exp(lik, 4);
    }
    return acc / static_cast<double>(sample_count);
  };
  est.data_link_bits = qpsk_direction("data_fwd") + qpsk_direction("data_bwd");

  est.value = (est.forward_bits + est.backward_bits - est.eve_bits) /
              est.data_link_bits;
  return est;
}

JointDistribution joint_distribution_of_cipher(
    const CipherFn& cipher, std::size_t message_width, std::size_t key_width,
    const std::vector<double>& message_prior, std::size_t observation_width) {
  if (message_width == 0 || message_width > 12 || key_width > 12 ||
      observation_width == 0 || observation_width > 12) {
    throw std::invalid_argument("secrecy audit: widths must lie in 1..12");
  }
  if (message_width + key_width > 24) {
    throw std::invalid_argument(
        "secrecy audit: enumeration capped at 2^24 joint states");
  }
  const std::size_t n_msg = std::size_t{1} << message_width;
  const std::size_t n_key = std::size_t{1} << key_width;
  const std::size_t n_obs = std::size_t{1} << observation_width;
  if (message_prior.size() != n_msg) {
    throw std::invalid_argument("secrecy audit: prior size mismatch");
  }
  double total = 0.0;
  for (double p : message_prior) {
    if (p < 0.0) {
      throw std::invalid_argument("secrecy audit: negative prior mass");
    }
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw std::invalid_argument("secrecy audit: prior must sum to 1");
  }

  JointDistribution joint;
  joint.message_width = message_width;
  joint.observation_width = observation_width;
  joint.probabilities.assign(n_msg * n_obs, 0.0);
  const double key_mass = 1.0 / static_cast<double>(n_key);
  for (std::uint32_t m = 0; m < n_msg; ++m) {
    if (message_prior[m] == 0.0) continue;
    for (std::uint32_t k = 0; k < n_key; ++k) {
      const std::uint32_t x = cipher(m, k);
      if (x >= n_obs) {
        throw std::invalid_argument(
            "secrecy audit: cipher output exceeds observation width");
      }
      joint.probabilities[(static_cast<std::size_t>(m) << observation_width) | x] +=
          message_prior[m] * key_mass;
    }
  }
  return joint;
}

AuditResult exhaustive_secrecy_audit(const CipherFn& cipher,
                                     std::size_t message_width,
                                     std::size_t key_width,
                                     const std::vector<double>& message_prior,
                                     std::size_t observation_width) {
  const JointDistribution joint = joint_distribution_of_cipher(
      cipher, message_width, key_width, message_prior, observation_width);
  const std::size_t n_obs = std::size_t{1} << observation_width;

  AuditResult result;
  for (double p : message_prior) result.h_m += entropy_term(p);

  double h_joint = 0.0;
  std::vector<double> obs_marginal(n_obs, 0.0);
  for (std::size_t m = 0; m < message_prior.size(); ++m) {
    for (std::size_t x = 0; x < n_obs; ++x) {
      const double p = joint.probabilities[(m << observation_width) | x];
      h_joint += entropy_term(p);
      obs_marginal[x] += p;
    }
  }
  double h_obs = 0.0;
  for (double p : obs_marginal) h_obs += entropy_term(p);
  result.h_m_given_x = h_joint - h_obs;
  return result;
}

AuditResult exhaustive_secrecy_audit(const CipherFn& cipher,
                                     std::size_t message_width,
                                     std::size_t key_width,
                                     const std::vector<double>& message_prior) {
  return exhaustive_secrecy_audit(cipher, message_width, key_width,
                                  message_prior, message_width);
}

}  // namespace otpsim::metrics
