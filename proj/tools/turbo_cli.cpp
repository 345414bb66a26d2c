// Command-line front end: encode / corrupt / decode / ber / timing.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "turbo/bench.hpp"
#include "turbo/channel.hpp"
#include "turbo/hwmodel.hpp"
#include "turbo/interleaver.hpp"
#include "turbo/loop.hpp"
#include "turbo/tx_chain.hpp"

namespace {

// Relative output paths land in $TURBO_OUT_DIR when it is set.
std::string resolve_out(const std::string& path) {
  const char* dir = std::getenv("TURBO_OUT_DIR");
  if (!dir || !*dir || path.empty()) return path;
  std::filesystem::path p(path);
  if (p.is_absolute()) return path;
  return (std::filesystem::path(dir) / p).string();
}

// Writes to --out (resolved) or stdout when no path was given.
class OutputSink {
 public:
  explicit OutputSink(const std::string& path) {
    if (path.empty()) return;
    resolved_ = resolve_out(path);
    file_.open(resolved_, std::ios::binary);
    if (!file_) throw std::runtime_error("cannot open output file '" + resolved_ + "'");
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }
  void finish() {
    if (!file_.is_open()) return;
    file_.flush();
    if (!file_) throw std::runtime_error("write failed for '" + resolved_ + "'");
  }

 private:
  std::string resolved_;
  std::ofstream file_;
};

struct PermChoice {
  std::string file;
  std::uint64_t seed = 1;
};

void add_perm_flags(CLI::App* cmd, PermChoice& pc) {
  cmd->add_option("--perm", pc.file, "permutation table file (250 lines, 0-based)");
  cmd->add_option("--perm-seed", pc.seed,
                  "seed for the built-in permutation (ignored with --perm)");
}

turbo::Permutation resolve_perm(const PermChoice& pc) {
  return pc.file.empty() ? turbo::default_permutation(pc.seed)
                         : turbo::load_permutation(pc.file);
}

turbo::Backend parse_backend(const std::string& name) {
  if (name == "ref") return turbo::Backend::kReference;
  if (name == "fxp") return turbo::Backend::kFxp;
  throw CLI::ValidationError("--backend", "expected 'ref' or 'fxp'");
}

turbo::InfoPacket read_packet(const std::string& hex, const std::string& in_file,
                              bool random, std::uint64_t seed) {
  const int sources = !hex.empty() + !in_file.empty() + random;
  if (sources != 1)
    throw std::runtime_error("encode: give exactly one of --hex, --in, --random");
  if (!hex.empty()) return turbo::packet_from_hex(hex);
  if (random) {
    turbo::Xoshiro256pp rng(seed);
    return turbo::random_packet(rng);
  }
  std::ifstream in(in_file, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open input file '" + in_file + "'");
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return turbo::packet_from_bytes(bytes);
}

void write_trace_csv(const turbo::DecodeTrace& trace, const std::string& path) {
  std::ofstream out(resolve_out(path), std::ios::binary);
  if (!out) throw std::runtime_error("cannot open trace file '" + path + "'");
  out << "iteration,decoder,kind,index,value\n";
  char line[96];
  auto emit = [&](int it, int dec, const char* kind, const std::vector<double>& v) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      std::snprintf(line, sizeof line, "%d,%d,%s,%zu,%.10g\n", it, dec, kind, i, v[i]);
      out << line;
    }
  };
  for (std::size_t it = 0; it < trace.iterations.size(); ++it) {
    const auto& t = trace.iterations[it];
    const int n = static_cast<int>(it) + 1;
    emit(n, 1, "apriori", t.apriori1);
    emit(n, 1, "extrinsic", t.extrinsic1);
    emit(n, 1, "posteriori", t.posteriori1);
    emit(n, 2, "apriori", t.apriori2);
    emit(n, 2, "extrinsic", t.extrinsic2);
    emit(n, 2, "posteriori", t.posteriori2);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cdma2000 rate-1/2 turbo codec model (Max-Log-MAP, Q10 fixed point)"};
  app.require_subcommand(1);

  // --- encode
  auto* encode = app.add_subcommand("encode", "turbo-encode a 250-bit packet");
  std::string enc_hex, enc_in, enc_out;
  bool enc_random = false;
  std::uint64_t enc_seed = 1;
  PermChoice enc_perm;
  encode->add_option("--hex", enc_hex, "packet as >=63 hex digits, MSB first");
  encode->add_option("--in", enc_in, "packet as packed bytes (>=32), MSB first");
  encode->add_flag("--random", enc_random, "draw a random packet from --seed");
  encode->add_option("--seed", enc_seed, "seed for --random");
  encode->add_option("--out", enc_out, "output file (default stdout)");
  add_perm_flags(encode, enc_perm);

  // --- corrupt
  auto* corrupt = app.add_subcommand("corrupt", "pass an encoded frame through AWGN");
  std::string cor_in, cor_out;
  std::optional<double> cor_ebn0, cor_sigma;
  std::uint64_t cor_seed = 1;
  PermChoice cor_perm;
  corrupt->add_option("--in", cor_in, "txframe file (default stdin)");
  corrupt->add_option("--ebn0", cor_ebn0, "Eb/N0 in dB (rate 1/2)");
  corrupt->add_option("--sigma", cor_sigma, "noise std dev directly; 0 = noiseless");
  corrupt->add_option("--seed", cor_seed, "noise seed");
  corrupt->add_option("--out", cor_out, "output file (default stdout)");
  add_perm_flags(corrupt, cor_perm);

  // --- decode
  auto* decode = app.add_subcommand("decode", "turbo-decode a received frame");
  std::string dec_in, dec_out, dec_backend = "fxp", dec_decision = "post", dec_trace;
  int dec_iters = 4;
  PermChoice dec_perm;
  decode->add_option("--in", dec_in, "rxframe file (default stdin)");
  decode->add_option("--iters", dec_iters, "iterations (two SISO passes each)")
      ->check(CLI::PositiveNumber);
  decode->add_option("--backend", dec_backend, "'ref' or 'fxp'");
  decode->add_option("--decision", dec_decision,
                     "hard-decision source: 'post' or 'apriori'");
  decode->add_option("--trace", dec_trace, "write per-iteration LLR vectors as CSV");
  decode->add_option("--out", dec_out, "output file (default stdout)");
  add_perm_flags(decode, dec_perm);

  // --- ber
  auto* ber = app.add_subcommand("ber", "Monte-Carlo BER sweep, CSV output");
  std::vector<double> ber_snr;
  int ber_packets = 1000, ber_iters = 7;
  std::uint64_t ber_seed = 1;
  std::string ber_backend = "fxp", ber_out;
  PermChoice ber_perm;
  ber->add_option("--snr", ber_snr, "Eb/N0 points in dB (comma separated)")
      ->delimiter(',')
      ->required();
  ber->add_option("--packets", ber_packets, "packets per point")->check(CLI::PositiveNumber);
  ber->add_option("--iters", ber_iters, "iterations")->check(CLI::PositiveNumber);
  ber->add_option("--seed", ber_seed, "master seed");
  ber->add_option("--backend", ber_backend, "'ref' or 'fxp'");
  ber->add_option("--out", ber_out, "CSV file (default stdout)");
  add_perm_flags(ber, ber_perm);

  // --- timing
  auto* timing = app.add_subcommand("timing", "cycle/throughput model report");
  int tim_lanes = 1, tim_iters = 1;
  bool tim_csv = false;
  std::string tim_out;
  timing->add_option("--lanes", tim_lanes, "1 (serial) or 11 (parallel)")
      ->check(CLI::IsMember({1, 11}));
  timing->add_option("--iters", tim_iters, "iterations")->check(CLI::PositiveNumber);
  timing->add_flag("--csv", tim_csv, "emit CSV instead of a table");
  timing->add_option("--out", tim_out, "output file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*encode) {
      const turbo::Permutation p = resolve_perm(enc_perm);
      const turbo::InfoPacket pkt = read_packet(enc_hex, enc_in, enc_random, enc_seed);
      const turbo::TxFrame frame = turbo::turbo_encode(pkt, p);
      OutputSink sink(enc_out);
      turbo::write_txframe(frame, sink.stream());
      sink.finish();
    } else if (*corrupt) {
      const turbo::Permutation p = resolve_perm(cor_perm);
      turbo::TxFrame frame;
      if (cor_in.empty()) {
        frame = turbo::read_txframe(std::cin);
      } else {
        std::ifstream in(cor_in);
        if (!in) throw std::runtime_error("cannot open '" + cor_in + "'");
        frame = turbo::read_txframe(in);
      }
      if (cor_ebn0.has_value() == cor_sigma.has_value())
        throw std::runtime_error("corrupt: give exactly one of --ebn0, --sigma");
      turbo::ChannelParams params;
      params.sigma = cor_sigma ? *cor_sigma : turbo::sigma_from_ebn0(*cor_ebn0, 0.5);
      params.seed = cor_seed;
      const turbo::RxFrame rx = turbo::awgn(turbo::bpsk_map(frame), p, params);
      OutputSink sink(cor_out);
      turbo::write_rxframe(rx, sink.stream());
      sink.finish();
    } else if (*decode) {
      const turbo::Permutation p = resolve_perm(dec_perm);
      turbo::RxFrame rx;
      if (dec_in.empty()) {
        rx = turbo::read_rxframe(std::cin);
      } else {
        std::ifstream in(dec_in);
        if (!in) throw std::runtime_error("cannot open '" + dec_in + "'");
        rx = turbo::read_rxframe(in);
      }
      turbo::DecodeOptions opts;
      opts.n_iter = dec_iters;
      opts.backend = parse_backend(dec_backend);
      if (dec_decision == "post") opts.decision = turbo::DecisionSource::kPosteriori;
      else if (dec_decision == "apriori") opts.decision = turbo::DecisionSource::kApriori;
      else throw std::runtime_error("decode: --decision must be 'post' or 'apriori'");
      opts.collect_trace = !dec_trace.empty();
      const turbo::DecodeResult res = turbo::turbo_decode(rx, p, opts);
      if (!dec_trace.empty()) write_trace_csv(*res.trace, dec_trace);
      OutputSink sink(dec_out);
      for (auto b : res.bits) sink.stream() << unsigned(b);
      sink.stream() << "\n";
      sink.finish();
    } else if (*ber) {
      const turbo::Permutation p = resolve_perm(ber_perm);
      turbo::RunSpec spec;
      spec.snr_db = ber_snr;
      spec.packets = ber_packets;
      spec.iters = ber_iters;
      spec.seed = ber_seed;
      spec.backend = parse_backend(ber_backend);
      const auto records = turbo::run_trials(spec, p);
      OutputSink sink(ber_out);
      turbo::emit_csv(records, sink.stream());
      sink.finish();
    } else if (*timing) {
      const turbo::HwConfig cfg = tim_lanes == 1 ? turbo::HwConfig::serial(tim_iters)
                                                 : turbo::HwConfig::parallel11(tim_iters);
      const turbo::TimingReport rep = turbo::timing(cfg);
      OutputSink sink(tim_out);
      char line[160];
      if (tim_csv) {
        sink.stream() << "lanes,iterations,cycles,time_us,throughput_mbps,area_aluts,clock_mhz\n";
        std::snprintf(line, sizeof line, "%d,%d,%lld,%.6g,%.6g,%d,%.6g\n", cfg.lanes,
                      cfg.n_iter, static_cast<long long>(rep.cycles), rep.time_us,
                      rep.throughput_mbps, cfg.area_aluts, cfg.clock_mhz);
        sink.stream() << line;
      } else {
        std::snprintf(line, sizeof line,
                      "lanes %d  iters %d  clock %.6g MHz  cycles %lld  time %.6g us  "
                      "throughput %.6g Mbit/s  area %d ALUTs\n",
                      cfg.lanes, cfg.n_iter, cfg.clock_mhz,
                      static_cast<long long>(rep.cycles), rep.time_us,
                      rep.throughput_mbps, cfg.area_aluts);
        sink.stream() << line;
      }
      sink.finish();
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
