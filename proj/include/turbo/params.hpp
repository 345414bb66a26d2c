#pragma once

#include <cstddef>

// Frame geometry for the rate-1/2 cdma2000 mode modeled here.

namespace turbo {

inline constexpr std::size_t kInfoBits = 250;   // information bits per packet
inline constexpr std::size_t kTailSteps = 3;    // flush steps per constituent encoder
inline constexpr std::size_t kStages = 253;     // trellis stages seen by each SISO
inline constexpr std::size_t kTotalPairs = 256; // transmitted (X, Y) pairs incl. tail
inline constexpr std::size_t kStates = 8;       // trellis states

}  // namespace turbo
