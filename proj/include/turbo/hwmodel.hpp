#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "turbo/params.hpp"

// Analytic timing model of the FPGA decoder. Cycle count per decode:
//
//   cycles = 1 + { (6*packet_size + 2) + (6*packet_size + 2) } * n_iter * 2
//
// i.e. one reset cycle, then per SISO pass a branch/alpha loop and a
// beta/LLR loop of 6 cycles per datum plus 2 bookkeeping cycles each, two
// passes per iteration. Serial variant processes 253 stages at 101.97 MHz;
// the 11-lane variant processes ceil(253/11) = 23 per lane at 25 MHz. Area
// figures are reported synthesis constants, never computed here.

namespace turbo {

struct HwConfig {
  int packet_size = 253;      // stages processed serially per loop
  int n_iter = 1;
  double clock_mhz = 101.97;
  int lanes = 1;
  int area_aluts = 6367;

  static HwConfig serial(int n_iter = 1) {
    return HwConfig{253, n_iter, 101.97, 1, 6367};
  }
  static HwConfig parallel11(int n_iter = 1) {
    return HwConfig{23, n_iter, 25.0, 11, 28085};
  }
};

inline void validate(const HwConfig& c) {
  if (c.packet_size < 1) throw std::invalid_argument("hwmodel: packet_size < 1");
  if (c.n_iter < 1) throw std::invalid_argument("hwmodel: n_iter < 1");
  if (c.clock_mhz <= 0) throw std::invalid_argument("hwmodel: clock_mhz <= 0");
  if (c.lanes != 1 && c.lanes != 11)
    throw std::invalid_argument("hwmodel: lanes must be 1 or 11");
}

/// Closed-form cycle count.
inline std::int64_t cycles(const HwConfig& c) {
  validate(c);
  const std::int64_t half = 6LL * c.packet_size + 2;
  return 1 + (half + half) * c.n_iter * 2;
}

struct TimingReport {
  std::int64_t cycles = 0;
  double time_us = 0.0;
  double throughput_mbps = 0.0;  // 250 information bits / decode time
};

inline TimingReport timing(const HwConfig& c) {
  TimingReport r;
  r.cycles = cycles(c);
  r.time_us = static_cast<double>(r.cycles) / c.clock_mhz;  // cycles * period
  r.throughput_mbps = static_cast<double>(kInfoBits) / r.time_us;
  return r;
}

// 14-state controller plus reset. States 1-6 loop packet_size times for the
// branch/alpha phase, states 7-12 for the beta/LLR phase; the 13/14 pair
// accounts for the 2 bookkeeping cycles charged after each phase.
struct FsmSchedule {
  std::array<std::int64_t, 15> visits{};  // [0] = reset, [1..14] = state1..14
  std::int64_t total_cycles = 0;
  std::int64_t loop_count = 0;  // value the gamma/beta counters reach
};

/// Enumerates the controller walk cycle by cycle; the total must equal the
/// closed form above.
inline FsmSchedule fsm_schedule(const HwConfig& c) {
  validate(c);
  FsmSchedule s;
  s.loop_count = c.packet_size;
  auto visit = [&s](int state) {
    ++s.visits[static_cast<std::size_t>(state)];
    ++s.total_cycles;
  };
  visit(0);  // reset
  for (int it = 0; it < c.n_iter; ++it) {
    for (int pass = 0; pass < 2; ++pass) {
      for (int d = 0; d < c.packet_size; ++d)
        for (int st = 1; st <= 6; ++st) visit(st);  // branches + alphas
      visit(13);
      visit(14);
      for (int d = 0; d < c.packet_size; ++d)
        for (int st = 7; st <= 12; ++st) visit(st);  // betas + LLRs
      visit(13);
      visit(14);
    }
  }
  return s;
}

}  // namespace turbo
