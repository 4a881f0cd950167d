#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace fcs {

/// SplitMix64 step; used both as a mixer and for seed derivation.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Deterministic seed-splitting rule: independent substream `stream` of a
/// master seed. Documented in the README so external tools can reproduce
/// per-task streams.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  return splitmix64(master ^ splitmix64(stream + 0x51AFD55ED5C3A1B5ULL));
}

/// Seeded generator with hand-rolled transforms so that streams are
/// bit-identical for a given seed independent of the standard library's
/// distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(splitmix64(seed)) {}

  std::uint64_t next_u64() { return gen_(); }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  /// Exponential with the given rate (mean 1/rate).
  double exponential(double rate) {
    return -std::log1p(-uniform()) / rate;
  }

  /// Normal(0, sigma) via Box-Muller; second deviate cached.
  double normal(double sigma) {
    if (have_cached_) {
      have_cached_ = false;
      return cached_ * sigma;
    }
    double u1 = uniform();
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log1p(-u1));
    cached_ = r * std::sin(kTau * u2);
    have_cached_ = true;
    return r * std::cos(kTau * u2) * sigma;
  }

  /// Poisson-distributed count with the given mean (chunked Knuth product).
  std::uint64_t poisson(double mean) {
    std::uint64_t n = 0;
    while (mean > 20.0) {
      n += poisson_small(20.0);
      mean -= 20.0;
    }
    return n + poisson_small(mean);
  }

 private:
  static constexpr double kTau = 6.28318530717958647692;

  std::uint64_t poisson_small(double mean) {
    double limit = std::exp(-mean);
    double prod = uniform();
    std::uint64_t n = 0;
    while (prod > limit) {
      ++n;
      prod *= uniform();
    }
    return n;
  }

  std::mt19937_64 gen_;
  double cached_ = 0.0;
  bool have_cached_ = false;
};

}  // namespace fcs
