#ifndef AJSCC_CHANNEL_HPP
#define AJSCC_CHANNEL_HPP

// Baseband AWGN stand-in for the FM/RF link, parameterized by CSNR.

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <span>

#include "ajscc/errors.hpp"

namespace ajscc {

using Rng = std::mt19937_64;

struct ChannelParams {
  double csnr_db = std::numeric_limits<double>::infinity();
  double signal_power = 1.0;  // mean square of the transmitted ensemble, V^2
  std::uint64_t seed = 0;
};

inline double noise_sigma(double csnr_db, double signal_power) {
  if (!(std::isfinite(signal_power) && signal_power > 0.0)) throw ParameterError("signal_power must be > 0");
  if (std::isnan(csnr_db) || csnr_db == -std::numeric_limits<double>::infinity())
    throw ParameterError("csnr_db must be finite or +inf");
  if (std::isinf(csnr_db)) return 0.0;
  return std::sqrt(signal_power / std::pow(10.0, csnr_db / 10.0));
}

inline double noise_sigma(const ChannelParams& c) { return noise_sigma(c.csnr_db, c.signal_power); }

inline double transmit(double s, double sigma, Rng& rng) {
  if (sigma == 0.0) return s;
  std::normal_distribution<double> g(0.0, sigma);
  return s + g(rng);
}

/// Mean of s^2.
inline double measure_signal_power(std::span<const double> ensemble) {
  if (ensemble.empty()) throw ParameterError("signal power of an empty ensemble is undefined");
  long double acc = 0.0L;
  for (double s : ensemble) acc += static_cast<long double>(s) * s;
  return static_cast<double>(acc / static_cast<long double>(ensemble.size()));
}

/// Seeded channel for bulk use; keeps one normal distribution so paired
/// draws are not discarded between calls.
class AwgnChannel {
 public:
  explicit AwgnChannel(const ChannelParams& c) : sigma_(noise_sigma(c)), rng_(c.seed) {}
  AwgnChannel(double sigma, Rng rng) : sigma_(sigma), rng_(std::move(rng)) {
    if (!(sigma >= 0.0)) throw ParameterError("sigma must be >= 0");
  }

  double sigma() const { return sigma_; }

  double transmit(double s) {
    if (sigma_ == 0.0) return s;
    return s + sigma_ * unit_(rng_);
  }

 private:
  double sigma_;
  Rng rng_;
  std::normal_distribution<double> unit_{0.0, 1.0};
};

}  // namespace ajscc

#endif  // AJSCC_CHANNEL_HPP
