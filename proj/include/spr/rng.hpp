#ifndef SPR_RNG_HPP
#define SPR_RNG_HPP

#include <cstdint>
#include <random>

#include "spr/types.hpp"

namespace spr {

/// Seedable generator used everywhere randomness is needed. The engine is
/// std::mt19937_64 (its output stream is pinned by the standard), and all
/// conversions to doubles are explicit bit manipulations, so identical seeds
/// give byte-identical results on any platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 random mantissa bits.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, n).
  std::size_t uniform_index(std::size_t n) {
    // Rejection sampling keeps the draw exactly uniform.
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return static_cast<std::size_t>(x % n);
  }

  /// Standard normal via Box-Muller (implementation-pinned, unlike
  /// std::normal_distribution).
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1, u2;
    do {
      u1 = uniform();
    } while (u1 <= 0.0);
    u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * M_PI * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  /// Circularly symmetric complex normal with E|z|^2 = sigma^2.
  Complex complex_normal(double sigma) {
    const double s = sigma / std::sqrt(2.0);
    return {s * normal(), s * normal()};
  }

  /// k distinct indices from {0..n-1}, returned sorted.
  IndexVector sample_without_replacement(std::size_t n, std::size_t k);

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

/// Child-seed derivation (splitmix64 over master + golden-ratio stride).
/// Stream-splitting rule: stream(i) of a master seed is
/// splitmix64(master + (i+1) * 0x9E3779B97F4A7C15). Children are themselves
/// masters for further splitting, so e.g. trial t of a Monte Carlo run uses
/// derive_seed(master, t), and restart r inside the trial uses
/// derive_seed(derive_seed(master, t), r).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);

}  // namespace spr

#endif  // SPR_RNG_HPP
