#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "turbo/fxp.hpp"
#include "turbo/interleaver.hpp"
#include "turbo/params.hpp"
#include "turbo/rng.hpp"
#include "turbo/tx_chain.hpp"

// AWGN contamination, floor quantization to Q10, depuncturing with zero
// fill, and assembly of the four decoder input streams. sigma == 0 disables
// the noise entirely (test mode); Lc then defaults to 2.0 as if sigma^2 = 1,
// since 2a/sigma^2 has no finite value.

namespace turbo {

struct ChannelParams {
  double sigma = 1.0;       // noise standard deviation; 0 = noiseless
  double gain_a = 1.0;      // channel gain (fixed 1.0 here)
  std::uint64_t seed = 0;   // noise stream seed
};

/// Eb/N0 (dB) -> sigma for unit-energy BPSK at the given code rate.
inline double sigma_from_ebn0(double ebn0_db, double code_rate) {
  if (code_rate <= 0.0 || code_rate > 1.0)
    throw std::invalid_argument("sigma_from_ebn0: rate must be in (0, 1]");
  return std::sqrt(1.0 / (2.0 * code_rate * std::pow(10.0, ebn0_db / 10.0)));
}

/// Channel reliability Lc = 2a / sigma^2, quantized once per frame.
inline Fxp20 lc_from_variance(double sigma_sq, double gain_a, fxp::SatCount& sat) {
  if (sigma_sq <= 0.0)
    throw std::invalid_argument("lc_from_variance: variance must be positive");
  return fxp::quantize(2.0 * gain_a / sigma_sq, sat);
}

inline Fxp20 lc_value(const ChannelParams& params, fxp::SatCount& sat) {
  if (params.sigma <= 0.0)
    return fxp::quantize(2.0 * params.gain_a, sat);  // noiseless convention
  return lc_from_variance(params.sigma * params.sigma, params.gain_a, sat);
}

/// One received soft value: quantize(transmitted + noise).
inline Fxp20 contaminate(double tx, double noise, fxp::SatCount& sat) {
  return fxp::quantize(tx + noise, sat);
}

struct RxFrame {
  std::array<Fxp20, kStages> cs{};      // systematic, decoder-1 order
  std::array<Fxp20, kStages> cs_int{};  // systematic for decoder 2 (data part permuted)
  std::array<Fxp20, kStages> cp0{};     // parity 0, zero-filled where punctured
  std::array<Fxp20, kStages> cp1{};     // parity 1, zero-filled where punctured
  Fxp20 lc{};
  std::uint64_t perm_digest = 0;
  std::uint64_t quantizer_saturations = 0;
};

/// Contaminates every transmitted component in pair order (X then Y) and
/// assembles the 253-stage streams. The permutation must match the frame.
inline RxFrame awgn(const ModFrame& mod, const Permutation& p,
                    const ChannelParams& params) {
  if (p.digest() != mod.perm_digest)
    throw std::invalid_argument("awgn: permutation does not match frame metadata");

  GaussianGen gauss(params.seed);
  const bool noiseless = params.sigma <= 0.0;
  auto draw = [&]() { return noiseless ? 0.0 : params.sigma * gauss.next(); };

  fxp::SatCount sat;
  std::array<Fxp20, kTotalPairs> rx_x, rx_y;
  for (std::size_t k = 0; k < kTotalPairs; ++k) {
    rx_x[k] = contaminate(fxp::to_real(mod.pairs[k].xs), draw(), sat);
    rx_y[k] = contaminate(fxp::to_real(mod.pairs[k].yp), draw(), sat);
  }

  RxFrame rx;
  rx.perm_digest = mod.perm_digest;
  for (std::size_t k = 0; k < kInfoBits; ++k) {
    rx.cs[k] = rx_x[k];
    if (k % 2 == 0) {
      rx.cp0[k] = rx_y[k];
      rx.cp1[k] = Fxp20{0};
    } else {
      rx.cp0[k] = Fxp20{0};
      rx.cp1[k] = rx_y[k];
    }
  }
  for (std::size_t t = 0; t < kTailSteps; ++t) {
    rx.cs[kInfoBits + t] = rx_x[kInfoBits + t];           // encoder-1 tail
    rx.cp0[kInfoBits + t] = rx_y[kInfoBits + t];
    rx.cs_int[kInfoBits + t] = rx_x[kInfoBits + kTailSteps + t];  // encoder-2 tail
    rx.cp1[kInfoBits + t] = rx_y[kInfoBits + kTailSteps + t];
  }
  for (std::size_t i = 0; i < kInfoBits; ++i) rx.cs_int[i] = rx.cs[p.forward(i)];

  rx.lc = lc_value(params, sat);
  rx.quantizer_saturations = sat.n;
  return rx;
}

// --- text format: header then 253 lines of "cs cs_int cp0 cp1" hex values

inline void write_rxframe(const RxFrame& rx, std::ostream& os) {
  char head[96];
  std::snprintf(head, sizeof head, "# turbo-rxframe v1 perm=%016llx lc=%s\n",
                static_cast<unsigned long long>(rx.perm_digest),
                fxp::to_hex(rx.lc).c_str());
  os << head;
  for (std::size_t k = 0; k < kStages; ++k)
    os << fxp::to_hex(rx.cs[k]) << " " << fxp::to_hex(rx.cs_int[k]) << " "
       << fxp::to_hex(rx.cp0[k]) << " " << fxp::to_hex(rx.cp1[k]) << "\n";
}

inline RxFrame read_rxframe(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line.rfind("# turbo-rxframe v1 perm=", 0) != 0)
    throw std::invalid_argument("rxframe: missing header line");
  RxFrame rx;
  const auto perm_pos = line.find("perm=") + 5;
  rx.perm_digest = std::stoull(line.substr(perm_pos, 16), nullptr, 16);
  const auto lc_pos = line.find("lc=");
  if (lc_pos == std::string::npos)
    throw std::invalid_argument("rxframe: header missing lc");
  rx.lc = fxp::from_hex(line.substr(lc_pos + 3, 5));
  for (std::size_t k = 0; k < kStages; ++k) {
    if (!std::getline(is, line))
      throw std::invalid_argument("rxframe: truncated at stage " + std::to_string(k));
    std::istringstream ls(line);
    std::string a, b, c, d;
    if (!(ls >> a >> b >> c >> d))
      throw std::invalid_argument("rxframe: bad stage line '" + line + "'");
    rx.cs[k] = fxp::from_hex(a);
    rx.cs_int[k] = fxp::from_hex(b);
    rx.cp0[k] = fxp::from_hex(c);
    rx.cp1[k] = fxp::from_hex(d);
  }
  return rx;
}

}  // namespace turbo
