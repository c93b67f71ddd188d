// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace tdsim {

// SplitMix64-based deterministic PRNG with keyed substream derivation.
//
// Every stochastic quantity in the simulator is drawn from an Rng that is
// derived from the master seed through derive() tags, so a run is a pure
// function of (config, seed). The split rule is: child seed =
// finalize(parent_seed ^ finalize(tag ^ salt)), where finalize is the
// SplitMix64 output mixer. Deriving depends only on the creating seed,
// never on how many values the parent has produced, which is what makes
// per-drop / per-frame / per-link streams independent and parallel-safe.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ull;
    return finalize(state_);
  }

  // Uniform in [0, 1), 53-bit resolution.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Standard normal via the polar method; the rejection loop and the pair
  // cache make the draw order fully defined by this class alone.
  double next_gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * next_double() - 1.0;
      v = 2.0 * next_double() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    have_spare_ = true;
    return u * f;
  }

  // Circularly-symmetric complex Gaussian with E|z|^2 = 1.
  std::complex<double> next_cgaussian() {
    const double re = next_gaussian();
    const double im = next_gaussian();
    return {re * kInvSqrt2, im * kInvSqrt2};
  }

  // Exact Poisson sampling (Knuth). Large means are split recursively so the
  // exp(-lambda) floor never underflows.
  int next_poisson(double lambda) {
    if (lambda <= 0.0) return 0;
    int n = 0;
    while (lambda > 500.0) {
      n += next_poisson_small(500.0);
      lambda -= 500.0;
    }
    return n + next_poisson_small(lambda);
  }

  Rng derive(std::uint64_t tag) const {
    return Rng(finalize(seed_ ^ finalize(tag ^ 0xA3C59AC2B7D81F05ull)));
  }
  Rng derive(std::uint64_t a, std::uint64_t b) const { return derive(a).derive(b); }
  Rng derive(std::uint64_t a, std::uint64_t b, std::uint64_t c) const {
    return derive(a).derive(b).derive(c);
  }

  std::uint64_t seed() const { return seed_; }

  using result_type = std::uint64_t;
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~0ull; }
  result_type operator()() { return next_u64(); }

 private:
  static constexpr double kInvSqrt2 = 0.7071067811865475244;

  static std::uint64_t finalize(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  int next_poisson_small(double lambda) {
    const double limit = std::exp(-lambda);
    double prod = next_double();
    int n = 0;
    while (prod > limit) {
      prod *= next_double();
      ++n;
    }
    return n;
  }

  std::uint64_t seed_;
  std::uint64_t state_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace tdsim
