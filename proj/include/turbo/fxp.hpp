#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <string_view>

// Q10 fixed-point arithmetic: values are integers scaled by 1024, stored in
// 20-bit two's complement. +1.0 is mantissa 1024 (hex 00400), -1.0 is -1024
// (hex FFC00). All narrowing saturates and bumps a caller-supplied counter;
// rounding is always floor, matching the quantizer.

namespace turbo::fxp {

inline constexpr std::int32_t kScale = 1024;
inline constexpr std::int32_t kMinMantissa = -(1 << 19);       // -524288
inline constexpr std::int32_t kMaxMantissa = (1 << 19) - 1;    //  524287

struct Fxp20 {
  std::int32_t m = 0;  // mantissa; value = m / 1024
  friend bool operator==(Fxp20 a, Fxp20 b) { return a.m == b.m; }
  friend auto operator<=>(Fxp20 a, Fxp20 b) { return a.m <=> b.m; }
};

/// Saturation counter threaded through every narrowing operation.
struct SatCount {
  std::uint64_t n = 0;
  void hit() { ++n; }
};

inline double to_real(Fxp20 a) { return static_cast<double>(a.m) / kScale; }

inline Fxp20 saturate(std::int64_t wide, SatCount& sat) {
  if (wide < kMinMantissa) {
    sat.hit();
    return Fxp20{kMinMantissa};
  }
  if (wide > kMaxMantissa) {
    sat.hit();
    return Fxp20{kMaxMantissa};
  }
  return Fxp20{static_cast<std::int32_t>(wide)};
}

/// value = floor(x * 1024), saturated to the 20-bit range.
inline Fxp20 quantize(double x, SatCount& sat) {
  const double scaled = std::floor(x * kScale);
  if (scaled < kMinMantissa) {
    sat.hit();
    return Fxp20{kMinMantissa};
  }
  if (scaled > kMaxMantissa) {
    sat.hit();
    return Fxp20{kMaxMantissa};
  }
  return Fxp20{static_cast<std::int32_t>(scaled)};
}

inline Fxp20 add(Fxp20 a, Fxp20 b, SatCount& sat) {
  return saturate(static_cast<std::int64_t>(a.m) + b.m, sat);
}

inline Fxp20 sub(Fxp20 a, Fxp20 b, SatCount& sat) {
  return saturate(static_cast<std::int64_t>(a.m) - b.m, sat);
}

inline Fxp20 neg(Fxp20 a, SatCount& sat) {
  return saturate(-static_cast<std::int64_t>(a.m), sat);
}

/// Q10 product: (a * b) / 1024 with a 64-bit intermediate and floor rescale.
inline Fxp20 mul_q10(Fxp20 a, Fxp20 b, SatCount& sat) {
  const std::int64_t wide = static_cast<std::int64_t>(a.m) * b.m;
  return saturate(wide >> 10, sat);  // arithmetic shift = floor division
}

/// Halving with floor semantics; half(-1/1024) stays -1/1024.
inline Fxp20 half(Fxp20 a) { return Fxp20{a.m >> 1}; }

inline Fxp20 max(Fxp20 a, Fxp20 b) { return a.m >= b.m ? a : b; }

/// Renders the 20-bit two's-complement pattern as 5 uppercase hex digits,
/// e.g. -1024 -> "FFC00".
inline std::string to_hex(Fxp20 a) {
  const std::uint32_t pattern = static_cast<std::uint32_t>(a.m) & 0xFFFFFu;
  char buf[6];
  std::snprintf(buf, sizeof buf, "%05X", pattern);
  return std::string(buf);
}

inline Fxp20 from_hex(std::string_view s) {
  if (s.size() != 5) throw std::invalid_argument("fxp hex: expected 5 digits, got '" + std::string(s) + "'");
  std::uint32_t pattern = 0;
  for (char c : s) {
    pattern <<= 4;
    if (c >= '0' && c <= '9') pattern |= static_cast<std::uint32_t>(c - '0');
    else if (c >= 'A' && c <= 'F') pattern |= static_cast<std::uint32_t>(c - 'A' + 10);
    else if (c >= 'a' && c <= 'f') pattern |= static_cast<std::uint32_t>(c - 'a' + 10);
    else throw std::invalid_argument("fxp hex: bad digit in '" + std::string(s) + "'");
  }
  std::int32_t m = static_cast<std::int32_t>(pattern);
  if (m >= (1 << 19)) m -= (1 << 20);
  return Fxp20{m};
}

}  // namespace turbo::fxp
