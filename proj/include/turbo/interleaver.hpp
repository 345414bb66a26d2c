#pragma once

#include <array>
#include <cstdint>
#include <fstream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "turbo/params.hpp"
#include "turbo/rng.hpp"

// Turbo interleaver over the 250 information positions. The address table is
// either loaded from a file (one 0-based decimal index per line) or generated
// as a seeded Fisher-Yates shuffle; tail positions are never interleaved.

namespace turbo {

enum class Direction { kFwd, kInv };

class Permutation {
 public:
  /// Validates a 250-entry address table and builds the inverse map.
  /// Throws std::invalid_argument naming the first offending position.
  explicit Permutation(const std::vector<std::uint16_t>& table) {
    if (table.size() != kInfoBits)
      throw std::invalid_argument("permutation: expected " +
                                  std::to_string(kInfoBits) + " entries, got " +
                                  std::to_string(table.size()));
    std::array<int, kInfoBits> seen_at;
    seen_at.fill(-1);
    for (std::size_t i = 0; i < kInfoBits; ++i) {
      const std::uint16_t v = table[i];
      if (v >= kInfoBits)
        throw std::invalid_argument("permutation: index " + std::to_string(v) +
                                    " out of range at position " +
                                    std::to_string(i));
      if (seen_at[v] >= 0)
        throw std::invalid_argument(
            "permutation: duplicate index " + std::to_string(v) +
            " at position " + std::to_string(i) + " (first at position " +
            std::to_string(seen_at[v]) + ")");
      seen_at[v] = static_cast<int>(i);
      forward_[i] = v;
    }
    for (std::size_t i = 0; i < kInfoBits; ++i)
      inverse_[forward_[i]] = static_cast<std::uint16_t>(i);
  }

  std::uint16_t forward(std::size_t i) const { return forward_[i]; }
  std::uint16_t inverse(std::size_t i) const { return inverse_[i]; }

  /// Order-sensitive FNV-1a hash of the address table; identifies the
  /// permutation in frame metadata and CSV output.
  std::uint64_t digest() const {
    std::uint64_t h = 14695981039346656037ULL;
    for (std::uint16_t v : forward_) {
      h = (h ^ (v & 0xFF)) * 1099511628211ULL;
      h = (h ^ (v >> 8)) * 1099511628211ULL;
    }
    return h;
  }

 private:
  std::array<std::uint16_t, kInfoBits> forward_{};
  std::array<std::uint16_t, kInfoBits> inverse_{};
};

inline Permutation identity_permutation() {
  std::vector<std::uint16_t> t(kInfoBits);
  for (std::size_t i = 0; i < kInfoBits; ++i) t[i] = static_cast<std::uint16_t>(i);
  return Permutation(t);
}

/// Seeded deterministic bijection: Fisher-Yates over [0, 250) driven by
/// xoshiro256++ (see rng.hpp).
inline Permutation default_permutation(std::uint64_t seed) {
  std::vector<std::uint16_t> t(kInfoBits);
  for (std::size_t i = 0; i < kInfoBits; ++i) t[i] = static_cast<std::uint16_t>(i);
  Xoshiro256pp rng(seed);
  for (std::size_t i = kInfoBits - 1; i > 0; --i) {
    const std::size_t j = static_cast<std::size_t>(rng.next_below(i + 1));
    std::swap(t[i], t[j]);
  }
  return Permutation(t);
}

/// Reads a 250-line table file, ignoring blank lines.
inline Permutation load_permutation(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("permutation: cannot open '" + path + "'");
  std::vector<std::uint16_t> table;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    int v;
    try {
      v = std::stoi(line);
    } catch (const std::exception&) {
      throw std::invalid_argument("permutation: bad line '" + line + "' in " + path);
    }
    if (v < 0)
      throw std::invalid_argument("permutation: negative index at position " +
                                  std::to_string(table.size()));
    table.push_back(static_cast<std::uint16_t>(v));
  }
  return Permutation(table);
}

inline void save_permutation(const Permutation& p, std::ostream& os) {
  for (std::size_t i = 0; i < kInfoBits; ++i) os << p.forward(i) << "\n";
}

/// FWD produces the stream as seen by constituent encoder 2:
/// out[i] = in[forward(i)]. INV is its inverse.
template <class T>
void permute(std::span<const T> in, std::span<T> out, const Permutation& p,
             Direction d) {
  if (in.size() != kInfoBits || out.size() != kInfoBits)
    throw std::invalid_argument("permute: expected length " +
                                std::to_string(kInfoBits) + ", got " +
                                std::to_string(in.size()));
  for (std::size_t i = 0; i < kInfoBits; ++i)
    out[i] = in[d == Direction::kFwd ? p.forward(i) : p.inverse(i)];
}

template <class T>
std::vector<T> permute(std::span<const T> in, const Permutation& p, Direction d) {
  std::vector<T> out(kInfoBits);
  permute(in, std::span<T>(out), p, d);
  return out;
}

}  // namespace turbo
