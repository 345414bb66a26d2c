#pragma once

#include <array>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "turbo/fxp.hpp"
#include "turbo/interleaver.hpp"
#include "turbo/params.hpp"
#include "turbo/rng.hpp"
#include "turbo/trellis.hpp"

// Transmitter chain: two constituent RSC encoders joined by the interleaver,
// punctured to rate 1/2, tail-terminated, then BPSK-mapped onto +/-1 soft
// values.

namespace turbo {

using fxp::Fxp20;

struct InfoPacket {
  std::array<std::uint8_t, kInfoBits> bits{};
};

/// Which encoder's parity a transmitted pair carries.
enum class ParityOrigin : std::uint8_t { kP0, kP1 };

struct TxPair {
  std::uint8_t x;  // systematic bit
  std::uint8_t y;  // surviving parity bit
  ParityOrigin origin;
};

struct TxFrame {
  std::array<TxPair, kTotalPairs> pairs{};
  std::uint64_t perm_digest = 0;
};

struct ModFrame {
  struct SoftPair {
    Fxp20 xs, yp;
  };
  std::array<SoftPair, kTotalPairs> pairs{};
  std::uint64_t perm_digest = 0;
};

/// Encodes one packet. Data pair k carries encoder-1 parity on even k and
/// encoder-2 parity on odd k; then 3 tail pairs from each encoder in turn.
/// Both encoders end in state 0.
inline TxFrame turbo_encode(const InfoPacket& info, const Permutation& p) {
  TxFrame frame;
  frame.perm_digest = p.digest();

  std::uint8_t st1 = 0, st2 = 0;
  for (std::size_t k = 0; k < kInfoBits; ++k) {
    const std::uint8_t u1 = info.bits[k];
    const std::uint8_t u2 = info.bits[p.forward(k)];
    const RscStep e1 = rsc_step(st1, u1);
    const RscStep e2 = rsc_step(st2, u2);
    const bool even = (k % 2 == 0);
    frame.pairs[k] = TxPair{u1, even ? e1.parity : e2.parity,
                            even ? ParityOrigin::kP0 : ParityOrigin::kP1};
    st1 = e1.next;
    st2 = e2.next;
  }
  for (std::size_t t = 0; t < kTailSteps; ++t) {
    const std::uint8_t u = tail_input(st1);
    const RscStep e = rsc_step(st1, u);
    frame.pairs[kInfoBits + t] = TxPair{u, e.parity, ParityOrigin::kP0};
    st1 = e.next;
  }
  for (std::size_t t = 0; t < kTailSteps; ++t) {
    const std::uint8_t u = tail_input(st2);
    const RscStep e = rsc_step(st2, u);
    frame.pairs[kInfoBits + kTailSteps + t] = TxPair{u, e.parity, ParityOrigin::kP1};
    st2 = e.next;
  }
  if (st1 != 0 || st2 != 0)
    throw std::logic_error("turbo_encode: tail failed to terminate trellis");
  return frame;
}

/// bit 1 -> +1.0 (mantissa 1024), bit 0 -> -1.0 (mantissa -1024).
inline Fxp20 bpsk(std::uint8_t bit) {
  return Fxp20{bit ? fxp::kScale : -fxp::kScale};
}

inline ModFrame bpsk_map(const TxFrame& frame) {
  ModFrame mod;
  mod.perm_digest = frame.perm_digest;
  for (std::size_t k = 0; k < kTotalPairs; ++k)
    mod.pairs[k] = ModFrame::SoftPair{bpsk(frame.pairs[k].x), bpsk(frame.pairs[k].y)};
  return mod;
}

inline InfoPacket random_packet(Xoshiro256pp& rng) {
  InfoPacket pkt;
  for (auto& b : pkt.bits) b = static_cast<std::uint8_t>(rng.next_bit());
  return pkt;
}

/// Parses a packet from hex text, MSB first; needs at least 250 bits.
inline InfoPacket packet_from_hex(std::string_view hex) {
  if (hex.size() * 4 < kInfoBits)
    throw std::invalid_argument("packet: need at least 63 hex digits (250 bits), got " +
                                std::to_string(hex.size()));
  InfoPacket pkt;
  for (std::size_t i = 0; i < kInfoBits; ++i) {
    const char c = hex[i / 4];
    int v;
    if (c >= '0' && c <= '9') v = c - '0';
    else if (c >= 'A' && c <= 'F') v = c - 'A' + 10;
    else if (c >= 'a' && c <= 'f') v = c - 'a' + 10;
    else throw std::invalid_argument(std::string("packet: bad hex digit '") + c + "'");
    pkt.bits[i] = static_cast<std::uint8_t>((v >> (3 - i % 4)) & 1);
  }
  return pkt;
}

/// Parses a packet from packed bytes, MSB first within each byte.
inline InfoPacket packet_from_bytes(std::span<const std::uint8_t> bytes) {
  if (bytes.size() * 8 < kInfoBits)
    throw std::invalid_argument("packet: need at least 32 bytes (250 bits), got " +
                                std::to_string(bytes.size()));
  InfoPacket pkt;
  for (std::size_t i = 0; i < kInfoBits; ++i)
    pkt.bits[i] = (bytes[i / 8] >> (7 - i % 8)) & 1;
  return pkt;
}

// --- text format: "# turbo-txframe v1 perm=<digest>" then 256 "x y P0|P1" lines

inline void write_txframe(const TxFrame& f, std::ostream& os) {
  char head[64];
  std::snprintf(head, sizeof head, "# turbo-txframe v1 perm=%016llx\n",
                static_cast<unsigned long long>(f.perm_digest));
  os << head;
  for (const TxPair& p : f.pairs)
    os << unsigned(p.x) << " " << unsigned(p.y) << " "
       << (p.origin == ParityOrigin::kP0 ? "P0" : "P1") << "\n";
}

inline TxFrame read_txframe(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line.rfind("# turbo-txframe v1 perm=", 0) != 0)
    throw std::invalid_argument("txframe: missing header line");
  TxFrame f;
  f.perm_digest = std::stoull(line.substr(line.find("perm=") + 5), nullptr, 16);
  for (std::size_t k = 0; k < kTotalPairs; ++k) {
    if (!std::getline(is, line))
      throw std::invalid_argument("txframe: truncated at pair " + std::to_string(k));
    std::istringstream ls(line);
    unsigned x, y;
    std::string origin;
    if (!(ls >> x >> y >> origin) || x > 1 || y > 1 || (origin != "P0" && origin != "P1"))
      throw std::invalid_argument("txframe: bad pair line '" + line + "'");
    f.pairs[k] = TxPair{static_cast<std::uint8_t>(x), static_cast<std::uint8_t>(y),
                        origin == "P0" ? ParityOrigin::kP0 : ParityOrigin::kP1};
  }
  return f;
}

}  // namespace turbo
