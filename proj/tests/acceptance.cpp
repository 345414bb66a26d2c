// Acceptance suite: one self-contained check per criterion, one PASS/FAIL
// line each. Run with no arguments for all criteria or with a list of
// criterion numbers. Exit code is the number of failures.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "turbo/bench.hpp"
#include "turbo/channel.hpp"
#include "turbo/hwmodel.hpp"
#include "turbo/interleaver.hpp"
#include "turbo/loop.hpp"
#include "turbo/siso.hpp"
#include "turbo/trellis.hpp"
#include "turbo/tx_chain.hpp"

using namespace turbo;

namespace {

struct Check {
  bool ok = true;
  std::string detail;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

bool approx(double got, double want, double rel) {
  return std::abs(got - want) <= rel * std::abs(want);
}

// --- criterion 1: quantization golden values -------------------------------

Check criterion_1() {
  Check c;
  fxp::SatCount sat;
  c.expect(fxp::to_hex(fxp::quantize(1.0, sat)) == "00400", "quantize(1.0) != 00400");
  c.expect(fxp::to_hex(fxp::quantize(-1.0, sat)) == "FFC00", "quantize(-1.0) != FFC00");
  c.expect(fxp::to_hex(fxp::quantize(3.256, sat)) == "00D06", "quantize(3.256) != 00D06");
  c.expect(sat.n == 0, "unexpected saturation");
  return c;
}

// --- criterion 2: trellis consistency ---------------------------------------

Check criterion_2() {
  Check c;
  const Trellis t = build_trellis();
  const std::array<std::uint8_t, 8> ones = {4, 0, 1, 5, 6, 2, 3, 7};
  const std::array<std::uint8_t, 8> zeros = {0, 4, 5, 1, 2, 6, 7, 3};
  for (std::uint8_t m = 0; m < 8; ++m) {
    c.expect(t.next1(m) == ones[m], "one-branch pairing broken at state " + std::to_string(m));
    c.expect(t.next0(m) == zeros[m], "zero-branch pairing broken at state " + std::to_string(m));
  }
  for (std::uint8_t m : {0, 1, 6, 7})
    c.expect(t.group[m] == BranchGroup::kPlus, "state " + std::to_string(m) + " not in Cs+Cp group");
  for (std::uint8_t m : {2, 3, 4, 5})
    c.expect(t.group[m] == BranchGroup::kMinus, "state " + std::to_string(m) + " not in Cs-Cp group");
  c.expect(t.step[5][1].parity == 0, "state-5 label discrepancy not resolved to Cs-Cp");
  return c;
}

// --- criterion 3: encoder termination ---------------------------------------

Check criterion_3() {
  Check c;
  const Permutation p = default_permutation(1);
  Xoshiro256pp rng(2024);
  for (int trial = 0; trial < 1000 && c.ok; ++trial) {
    const InfoPacket pkt = random_packet(rng);
    const TxFrame f = turbo_encode(pkt, p);
    c.expect(f.pairs.size() == 256, "frame is not 256 pairs");
    std::uint8_t st1 = 0, st2 = 0;
    for (std::size_t k = 0; k < kInfoBits; ++k) {
      st1 = rsc_step(st1, pkt.bits[k]).next;
      st2 = rsc_step(st2, pkt.bits[p.forward(k)]).next;
    }
    for (std::size_t tl = 0; tl < kTailSteps; ++tl)
      st1 = rsc_step(st1, f.pairs[kInfoBits + tl].x).next;
    for (std::size_t tl = 0; tl < kTailSteps; ++tl)
      st2 = rsc_step(st2, f.pairs[kInfoBits + kTailSteps + tl].x).next;
    c.expect(st1 == 0 && st2 == 0, "an encoder failed to terminate");
  }
  return c;
}

// --- criterion 4: Max-Log-MAP oracle equivalence ----------------------------

double pm(std::uint8_t bit) { return bit ? 1.0 : -1.0; }

std::vector<double> brute_force_llr(const SisoInput<double>& in, std::size_t n_info) {
  const std::size_t n = in.cs.size();
  const double ninf = -std::numeric_limits<double>::infinity();
  std::vector<double> best1(n, ninf), best0(n, ninf);
  for (std::uint32_t seq = 0; seq < (1u << n_info); ++seq) {
    std::vector<std::uint8_t> u(n), v(n);
    std::uint8_t st = 0;
    for (std::size_t k = 0; k < n; ++k) {
      u[k] = k < n_info ? ((seq >> k) & 1u) : tail_input(st);
      const RscStep e = rsc_step(st, u[k]);
      v[k] = e.parity;
      st = e.next;
    }
    double metric = 0.0;
    for (std::size_t k = 0; k < n; ++k)
      metric += 0.5 * pm(u[k]) * in.apriori[k] +
                0.5 * in.lc * (in.cs[k] * pm(u[k]) + in.cp[k] * pm(v[k]));
    for (std::size_t k = 0; k < n; ++k) {
      double& best = u[k] ? best1[k] : best0[k];
      best = std::max(best, metric);
    }
  }
  std::vector<double> llr(n);
  for (std::size_t k = 0; k < n; ++k) llr[k] = best1[k] - best0[k];
  return llr;
}

Check criterion_4() {
  Check c;
  const Trellis t = build_trellis();
  Xoshiro256pp rng(4242);
  int frames = 0;
  double worst = 0.0;
  for (std::size_t n_info : {4u, 6u, 8u}) {
    for (int trial = 0; trial < 40; ++trial, ++frames) {
      const std::size_t n = n_info + kTailSteps;
      SisoInput<double> in;
      in.cs.resize(n);
      in.cp.resize(n);
      in.apriori.assign(n, 0.0);
      for (std::size_t k = 0; k < n; ++k) {
        in.cs[k] = (rng.next_unit() - 0.5) * 6.0;
        in.cp[k] = (rng.next_unit() - 0.5) * 6.0;
        if (k < n_info) in.apriori[k] = (rng.next_unit() - 0.5) * 4.0;
      }
      in.lc = 0.25 + 1.75 * rng.next_unit();
      RefArith ar;
      const auto out = siso_decode(in, t, ar);
      const auto want = brute_force_llr(in, n_info);
      for (std::size_t k = 0; k < n; ++k)
        worst = std::max(worst, std::abs(out.llr[k] - want[k]));
    }
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "%d frames, max |err| = %.3g", frames, worst);
  c.detail = buf;
  c.expect(frames >= 100, "fewer than 100 frames");
  c.expect(worst <= 1e-9, "LLR deviates from the brute-force oracle");
  return c;
}

// --- criterion 5: fixed-point fidelity --------------------------------------

Check criterion_5() {
  Check c;
  const Trellis t = build_trellis();
  const Permutation p = default_permutation(1);
  std::uint64_t agree = 0, total = 0, sat_total = 0;
  for (double ebn0 : {0.0, 1.35, 2.35}) {
    const double sigma = sigma_from_ebn0(ebn0, kCodeRate);
    for (int frame = 0; frame < 100; ++frame) {
      Xoshiro256pp info_rng(derive_seed(555, static_cast<std::uint64_t>(ebn0 * 100), frame, 0));
      const InfoPacket pkt = random_packet(info_rng);
      const RxFrame rx =
          awgn(bpsk_map(turbo_encode(pkt, p)), p,
               ChannelParams{sigma, 1.0,
                             derive_seed(555, static_cast<std::uint64_t>(ebn0 * 100), frame, 1)});
      sat_total += rx.quantizer_saturations;

      // single SISO pass, both backends, identical quantized inputs
      SisoInput<Fxp20> qin;
      qin.cs.assign(rx.cs.begin(), rx.cs.end());
      qin.cp.assign(rx.cp0.begin(), rx.cp0.end());
      qin.apriori.assign(kStages, Fxp20{0});
      qin.lc = rx.lc;
      SisoInput<double> rin;
      rin.cs.resize(kStages);
      rin.cp.resize(kStages);
      rin.apriori.assign(kStages, 0.0);
      for (std::size_t k = 0; k < kStages; ++k) {
        rin.cs[k] = fxp::to_real(qin.cs[k]);
        rin.cp[k] = fxp::to_real(qin.cp[k]);
      }
      rin.lc = fxp::to_real(qin.lc);
      FxpArith fq;
      RefArith ar;
      const auto qout = siso_decode(qin, t, fq);
      const auto rout = siso_decode(rin, t, ar);
      sat_total += qout.saturations;
      for (std::size_t k = 0; k < kStages; ++k) {
        agree += (qout.llr[k].m < 0) == (rout.llr[k] < 0.0);
        ++total;
      }

      // full fixed-point turbo decode must stay saturation-free too
      DecodeOptions opts;
      opts.n_iter = 4;
      opts.backend = Backend::kFxp;
      sat_total += turbo_decode(rx, p, opts).saturations;
    }
  }
  const double rate = static_cast<double>(agree) / static_cast<double>(total);
  char buf[96];
  std::snprintf(buf, sizeof buf, "agreement %.5f over %llu bits, saturations %llu",
                rate, static_cast<unsigned long long>(total),
                static_cast<unsigned long long>(sat_total));
  c.detail = buf;
  c.expect(rate >= 0.999, "hard-decision agreement below 99.9%");
  c.expect(sat_total == 0, "saturation flags raised");
  return c;
}

// --- criterion 6: cycle model exactness --------------------------------------

Check criterion_6() {
  Check c;
  c.expect(cycles(HwConfig::serial(1)) == 6081, "cycles(253,1) != 6081");
  c.expect(cycles(HwConfig::parallel11(1)) == 561, "cycles(23,1) != 561");
  for (int n = 1; n <= 7; ++n) {
    for (const HwConfig& cfg : {HwConfig::serial(n), HwConfig::parallel11(n)}) {
      const FsmSchedule s = fsm_schedule(cfg);
      c.expect(s.total_cycles == cycles(cfg),
               "fsm enumeration disagrees with closed form at n=" + std::to_string(n));
    }
  }
  return c;
}

// --- criterion 7: throughput reproduction ------------------------------------

Check criterion_7() {
  Check c;
  const TimingReport s1 = timing(HwConfig::serial(1));
  const TimingReport s4 = timing(HwConfig::serial(4));
  const TimingReport p1 = timing(HwConfig::parallel11(1));
  const TimingReport p4 = timing(HwConfig::parallel11(4));
  c.expect(approx(s1.time_us, 59.636, 0.005), "serial 1-iter time off");
  c.expect(approx(s4.time_us, 238.516, 0.005), "serial 4-iter time off");
  c.expect(approx(s1.throughput_mbps, 4.19, 0.005), "serial 1-iter rate off");
  c.expect(approx(s4.throughput_mbps, 1.048, 0.005), "serial 4-iter rate off");
  c.expect(approx(p1.time_us, 22.44, 0.005), "parallel 1-iter time off");
  c.expect(approx(p1.throughput_mbps, 11.14, 0.005), "parallel 1-iter rate off");
  c.expect(approx(p4.throughput_mbps, 2.78, 0.005), "parallel 4-iter rate off");
  return c;
}

// --- criterion 8: noiseless end-to-end round trip ----------------------------

Check criterion_8() {
  Check c;
  const Permutation p = default_permutation(8);
  Xoshiro256pp rng(808);
  std::uint64_t errors = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const InfoPacket pkt = random_packet(rng);
    const RxFrame rx = awgn(bpsk_map(turbo_encode(pkt, p)), p, ChannelParams{0.0, 1.0, 1});
    DecodeOptions opts;
    opts.n_iter = 1;
    opts.backend = Backend::kFxp;
    const DecodeResult res = turbo_decode(rx, p, opts);
    for (std::size_t k = 0; k < kInfoBits; ++k) errors += res.bits[k] != pkt.bits[k];
  }
  c.expect(errors == 0, std::to_string(errors) + " bit errors on noiseless frames");
  return c;
}

// --- criterion 9: statistical BER behavior -----------------------------------

Check criterion_9() {
  Check c;
  const Permutation p = default_permutation(9);
  RunSpec spec;
  spec.snr_db = {0.35, 1.35, 2.35};
  spec.iters = 4;
  spec.packets = 300;
  spec.seed = 909;
  const auto records = run_trials(spec, p);

  auto at = [&](double snr, int iter) {
    for (const auto& r : records)
      if (r.snr_db == snr && r.iteration == iter) return r;
    throw std::logic_error("record not found");
  };
  const BerRecord low = at(0.35, 4), mid = at(1.35, 4), high = at(2.35, 4);
  const BerRecord mid1 = at(1.35, 1);

  char buf[160];
  std::snprintf(buf, sizeof buf,
                "ber@4it: %.4g / %.4g / %.4g; 1.35dB 1it %.4g; 2.35dB FER@4it %.4g",
                low.ber, mid.ber, high.ber, mid1.ber,
                static_cast<double>(high.packet_errors) / high.packets_total);
  c.detail = buf;

  c.expect(low.ber > mid.ber && mid.ber > high.ber,
           "mean BER not strictly ordered across 0.35/1.35/2.35 dB");
  c.expect(mid.ber * 2.0 <= mid1.ber, "less than 2x improvement at 1.35 dB");
  const double decoded =
      static_cast<double>(high.packets_total - high.packet_errors) / high.packets_total;
  c.expect(decoded >= 0.95, "fewer than 95% of packets decoded at 2.35 dB");
  return c;
}

// --- criterion 10: BER curve family shape ------------------------------------

Check criterion_10() {
  Check c;
  const Permutation p = default_permutation(10);
  RunSpec spec;
  spec.snr_db = {-2.5, -2.0, -1.5, -1.0, -0.5, 0.0};
  spec.iters = 7;
  spec.packets = 1000;
  spec.seed = 1010;
  const auto records = run_trials(spec, p);

  auto curve = [&](int iter) {
    std::vector<double> ber;
    for (const auto& r : records)
      if (r.iteration == iter) ber.push_back(r.ber);
    return ber;  // snr ascending
  };
  double min_ber = 1.0;
  for (int iter : {1, 4, 7}) {
    const auto ber = curve(iter);
    int inversions = 0;
    for (std::size_t i = 1; i < ber.size(); ++i) inversions += ber[i] > ber[i - 1];
    c.expect(inversions <= 1, "more than one inversion in the iteration-" +
                                  std::to_string(iter) + " curve");
    min_ber = std::min(min_ber, *std::min_element(ber.begin(), ber.end()));
  }
  const auto it1 = curve(1);
  const auto it7 = curve(7);
  for (std::size_t i = it1.size() / 2; i < it1.size(); ++i)
    c.expect(it7[i] <= it1[i], "iteration 7 above iteration 1 in the upper half");
  c.expect(min_ber >= 1e-3 && min_ber <= 1e-1,
           "minimum BER inconsistent with the ~1e-2 sample floor");
  char buf[64];
  std::snprintf(buf, sizeof buf, "min BER %.4g", min_ber);
  if (c.detail.empty()) c.detail = buf;
  return c;
}

// --- criterion 11: CLI determinism -------------------------------------------

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Check criterion_11() {
  Check c;
#ifdef TURBO_CLI_PATH
  const std::string cli = TURBO_CLI_PATH;
  const auto dir = std::filesystem::temp_directory_path() / "turbo_accept11";
  std::filesystem::create_directories(dir);
  const std::string a = (dir / "a.csv").string();
  const std::string b = (dir / "b.csv").string();
  const std::string ber_args = " ber --snr 0.5,1.5 --packets 20 --iters 3 --seed 5 --out ";
  c.expect(std::system((cli + ber_args + a).c_str()) == 0, "first ber run failed");
  c.expect(std::system((cli + ber_args + b).c_str()) == 0, "second ber run failed");
  c.expect(!slurp(a).empty() && slurp(a) == slurp(b), "ber CSV outputs differ");

  const std::string ta = (dir / "ta.csv").string();
  const std::string tb = (dir / "tb.csv").string();
  const std::string tim_args = " timing --lanes 11 --iters 4 --csv --out ";
  c.expect(std::system((cli + tim_args + ta).c_str()) == 0, "first timing run failed");
  c.expect(std::system((cli + tim_args + tb).c_str()) == 0, "second timing run failed");
  c.expect(!slurp(ta).empty() && slurp(ta) == slurp(tb), "timing CSV outputs differ");
  std::filesystem::remove_all(dir);
#else
  c.expect(false, "CLI path not configured");
#endif
  return c;
}

struct Criterion {
  int id;
  const char* name;
  std::function<Check()> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all = {
      {1, "quantization golden values", criterion_1},
      {2, "trellis consistency", criterion_2},
      {3, "encoder termination over 1000 random packets", criterion_3},
      {4, "Max-Log-MAP oracle equivalence", criterion_4},
      {5, "fixed-point fidelity and zero saturation", criterion_5},
      {6, "cycle model exactness", criterion_6},
      {7, "throughput reproduction within 0.5%", criterion_7},
      {8, "noiseless end-to-end round trip", criterion_8},
      {9, "statistical BER behavior", criterion_9},
      {10, "BER curve family shape", criterion_10},
      {11, "CLI determinism", criterion_11},
  };
  return all;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.push_back(std::atoi(argv[i]));

  int failures = 0;
  for (const Criterion& cr : criteria()) {
    if (!wanted.empty() &&
        std::find(wanted.begin(), wanted.end(), cr.id) == wanted.end())
      continue;
    Check result;
    try {
      result = cr.run();
    } catch (const std::exception& e) {
      result.ok = false;
      result.detail = std::string("exception: ") + e.what();
    }
    failures += !result.ok;
    std::printf("%s  criterion %2d: %s%s%s\n", result.ok ? "PASS" : "FAIL", cr.id,
                cr.name, result.detail.empty() ? "" : " — ",
                result.detail.c_str());
  }
  return failures;
}
