#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

// Self-contained deterministic random number generation. The standard
// library's distributions are implementation-defined, so seeded runs would
// not be portable across toolchains; everything here is fully specified:
// splitmix64 (Steele/Lea/Flood) for seeding and stream derivation,
// xoshiro256++ (Blackman/Vigna) as the 64-bit generator, and the classic
// Box-Muller transform for Gaussian samples.

namespace turbo {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Derives an independent stream seed from a master seed and up to three
/// lane indices (e.g. snr point, packet number, purpose tag).
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a,
                                 std::uint64_t b = 0, std::uint64_t c = 0) {
  std::uint64_t s = master;
  splitmix64(s);
  s ^= 0xA0761D6478BD642FULL * (a + 1);
  splitmix64(s);
  s ^= 0xE7037ED1A0B428DBULL * (b + 1);
  splitmix64(s);
  s ^= 0x8EBC6AF09C88C6E3ULL * (c + 1);
  return splitmix64(s);
}

class Xoshiro256pp {
 public:
  explicit Xoshiro256pp(std::uint64_t seed) {
    for (auto& w : s_) w = splitmix64(seed);
  }

  std::uint64_t next() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  /// Uniform double in [0, 1) with 53 bits of precision.
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, bound). Modulo reduction: the bias is below
  /// 2^-53 for the bounds used here (<= a few hundred).
  std::uint64_t next_below(std::uint64_t bound) { return next() % bound; }

  /// Random bit.
  int next_bit() { return static_cast<int>(next() >> 63); }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }
  std::uint64_t s_[4];
};

/// Standard-normal generator: Box-Muller on xoshiro256++ output.
class GaussianGen {
 public:
  explicit GaussianGen(std::uint64_t seed) : rng_(seed) {}

  double next() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    // u1 in (0, 1] keeps the log finite.
    const double u1 = 1.0 - rng_.next_unit();
    const double u2 = rng_.next_unit();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

 private:
  Xoshiro256pp rng_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace turbo
