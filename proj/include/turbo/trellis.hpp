#pragma once

#include <array>
#include <cassert>
#include <cstdint>
#include <ostream>

#include "turbo/params.hpp"

// 8-state recursive systematic convolutional constituent code of the
// cdma2000 rate-1/2 mode: feedback 1 + D^2 + D^3, parity 1 + D + D^3.
// State s = 4*s1 + 2*s2 + s3, newest register bit highest. The Y1 parity
// output of the full rate-1/3 encoder is not modeled.

namespace turbo {

struct RscStep {
  std::uint8_t next;
  std::uint8_t parity;
};

/// One encoder clock: feedback f = u ^ s2 ^ s3, shift, parity f ^ s1 ^ s3.
inline RscStep rsc_step(std::uint8_t state, std::uint8_t u) {
  assert(state < kStates && u <= 1);
  const std::uint8_t s1 = (state >> 2) & 1;
  const std::uint8_t s2 = (state >> 1) & 1;
  const std::uint8_t s3 = state & 1;
  const std::uint8_t f = u ^ s2 ^ s3;
  return RscStep{static_cast<std::uint8_t>((f << 2) | (s1 << 1) | s2),
                 static_cast<std::uint8_t>(f ^ s1 ^ s3)};
}

/// Input that zeroes the feedback (u = s2 ^ s3); three such steps drive any
/// state to 0.
inline std::uint8_t tail_input(std::uint8_t state) {
  assert(state < kStates);
  return static_cast<std::uint8_t>(((state >> 1) & 1) ^ (state & 1));
}

/// Branch-metric flavor of a state: PLUS states use Lc*(Cs + Cp) for their
/// one-branch, MINUS states use Lc*(Cs - Cp).
enum class BranchGroup : std::uint8_t { kPlus, kMinus };

struct Trellis {
  struct Edge {
    std::uint8_t next;
    std::uint8_t parity;
  };
  struct Incoming {
    std::uint8_t from;
    std::uint8_t input;
  };

  std::array<std::array<Edge, 2>, kStates> step;      // [state][input bit]
  std::array<std::array<Incoming, 2>, kStates> into;  // two predecessors each
  std::array<BranchGroup, kStates> group;             // flavor of the one-branch

  std::uint8_t next1(std::uint8_t m) const { return step[m][1].next; }
  std::uint8_t next0(std::uint8_t m) const { return step[m][0].next; }
};

inline Trellis build_trellis() {
  Trellis t{};
  std::array<int, kStates> fanin{};
  for (std::uint8_t m = 0; m < kStates; ++m) {
    for (std::uint8_t u = 0; u <= 1; ++u) {
      const RscStep s = rsc_step(m, u);
      t.step[m][u] = Trellis::Edge{s.next, s.parity};
    }
    // zero- and one-branch parities always disagree for this code
    assert(t.step[m][0].parity != t.step[m][1].parity);
    t.group[m] = t.step[m][1].parity ? BranchGroup::kPlus : BranchGroup::kMinus;
  }
  for (std::uint8_t m = 0; m < kStates; ++m) {
    for (std::uint8_t u = 0; u <= 1; ++u) {
      const std::uint8_t to = t.step[m][u].next;
      assert(fanin[to] < 2);
      t.into[to][fanin[to]++] = Trellis::Incoming{m, u};
    }
  }
  for (int c : fanin) {
    assert(c == 2);
    (void)c;
  }
  return t;
}

/// Text dump of the 16 transitions, one per line.
inline void dump_trellis(const Trellis& t, std::ostream& os) {
  os << "state input next parity group\n";
  for (unsigned m = 0; m < kStates; ++m) {
    for (unsigned u = 0; u <= 1; ++u) {
      const auto& e = t.step[m][u];
      os << m << "     " << u << "     " << unsigned(e.next) << "    "
         << unsigned(e.parity) << "      "
         << (t.group[m] == BranchGroup::kPlus ? "Cs+Cp" : "Cs-Cp") << "\n";
    }
  }
}

}  // namespace turbo
