#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "turbo/channel.hpp"
#include "turbo/loop.hpp"
#include "turbo/params.hpp"
#include "turbo/rng.hpp"
#include "turbo/tx_chain.hpp"

// Monte-Carlo BER harness: encode -> AWGN -> decode trials with per-iteration
// error counts taken from the decode trace (one decode per packet, snapshots
// per iteration). Fully deterministic: packet i at snr point j draws its info
// bits and noise from seeds derived from (master seed, j, i).

namespace turbo {

inline constexpr double kCodeRate = 0.5;

struct RunSpec {
  std::vector<double> snr_db;  // Eb/N0 points, any order; records sort ascending
  int iters = 7;
  int packets = 1;
  std::uint64_t seed = 1;
  Backend backend = Backend::kFxp;
  DecisionSource decision = DecisionSource::kPosteriori;
  std::optional<double> sigma_override;  // test hook; 0 disables noise
};

struct BerRecord {
  double snr_db = 0.0;
  int iteration = 0;
  std::uint64_t bit_errors = 0;
  std::uint64_t bits_total = 0;
  std::uint64_t packet_errors = 0;
  std::uint64_t packets_total = 0;
  double ber = 0.0;
};

inline std::vector<BerRecord> run_trials(const RunSpec& spec, const Permutation& p) {
  if (spec.packets < 1) throw std::invalid_argument("run_trials: packets < 1");
  if (spec.iters < 1) throw std::invalid_argument("run_trials: iters < 1");
  if (spec.snr_db.empty()) throw std::invalid_argument("run_trials: no snr points");

  std::vector<double> points = spec.snr_db;
  std::sort(points.begin(), points.end());

  const std::size_t ni = static_cast<std::size_t>(spec.iters);
  std::vector<BerRecord> records;
  records.reserve(points.size() * ni);

  for (std::size_t si = 0; si < points.size(); ++si) {
    const double snr = points[si];
    const double sigma =
        spec.sigma_override ? *spec.sigma_override : sigma_from_ebn0(snr, kCodeRate);

    std::vector<std::uint64_t> bit_errors(ni, 0), packet_errors(ni, 0);
    for (int pkt = 0; pkt < spec.packets; ++pkt) {
      Xoshiro256pp info_rng(derive_seed(spec.seed, si, static_cast<std::uint64_t>(pkt), 0));
      const InfoPacket info = random_packet(info_rng);
      const TxFrame tx = turbo_encode(info, p);
      const ChannelParams ch{sigma, 1.0,
                             derive_seed(spec.seed, si, static_cast<std::uint64_t>(pkt), 1)};
      const RxFrame rx = awgn(bpsk_map(tx), p, ch);
      DecodeOptions opts;
      opts.n_iter = spec.iters;
      opts.backend = spec.backend;
      opts.decision = spec.decision;
      opts.collect_trace = true;
      const DecodeResult res = turbo_decode(rx, p, opts);
      for (std::size_t it = 0; it < ni; ++it) {
        std::uint64_t errs = 0;
        const auto& hard = res.trace->iterations[it].hard;
        for (std::size_t k = 0; k < kInfoBits; ++k) errs += hard[k] != info.bits[k];
        bit_errors[it] += errs;
        packet_errors[it] += errs > 0;
      }
    }

    const std::uint64_t bits_total =
        static_cast<std::uint64_t>(spec.packets) * kInfoBits;
    for (std::size_t it = 0; it < ni; ++it) {
      BerRecord r;
      r.snr_db = snr;
      r.iteration = static_cast<int>(it) + 1;
      r.bit_errors = bit_errors[it];
      r.bits_total = bits_total;
      r.packet_errors = packet_errors[it];
      r.packets_total = static_cast<std::uint64_t>(spec.packets);
      r.ber = static_cast<double>(r.bit_errors) / static_cast<double>(bits_total);
      records.push_back(r);
    }
  }
  return records;
}

/// Correct-bit counts (out of 250) after each of 7 iterations, one packet.
inline std::array<int, 7> per_iteration_table(double snr_db, std::uint64_t seed,
                                              const Permutation& p,
                                              Backend backend = Backend::kFxp) {
  RunSpec spec;
  spec.snr_db = {snr_db};
  spec.iters = 7;
  spec.packets = 1;
  spec.seed = seed;
  spec.backend = backend;
  const auto records = run_trials(spec, p);
  std::array<int, 7> correct{};
  for (const auto& r : records)
    correct[static_cast<std::size_t>(r.iteration - 1)] =
        static_cast<int>(kInfoBits - r.bit_errors);
  return correct;
}

inline void emit_csv(const std::vector<BerRecord>& records, std::ostream& os) {
  os << "snr_db,iteration,bit_errors,bits_total,packet_errors,packets_total,ber\n";
  char line[160];
  for (const auto& r : records) {
    std::snprintf(line, sizeof line, "%.6g,%d,%llu,%llu,%llu,%llu,%.10g\n",
                  r.snr_db, r.iteration,
                  static_cast<unsigned long long>(r.bit_errors),
                  static_cast<unsigned long long>(r.bits_total),
                  static_cast<unsigned long long>(r.packet_errors),
                  static_cast<unsigned long long>(r.packets_total), r.ber);
    os << line;
  }
}

inline void emit_csv(const std::vector<BerRecord>& records, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("emit_csv: cannot open '" + path + "'");
  emit_csv(records, out);
  out.flush();
  if (!out) throw std::runtime_error("emit_csv: write failed for '" + path + "'");
}

}  // namespace turbo
