#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "turbo/channel.hpp"
#include "turbo/interleaver.hpp"
#include "turbo/params.hpp"
#include "turbo/siso.hpp"

// Iterative turbo-decoding controller: decoder 1 on (Cs, Cp0), decoder 2 on
// (interleaved Cs, Cp1), extrinsic exchange through the interleaver each way,
// hard decision H after the last iteration. One iteration = both SISO passes.

namespace turbo {

enum class Backend { kReference, kFxp };

/// What H is applied to: the deinterleaved decoder-2 a-posteriori data LLRs
/// (default), or the deinterleaved extrinsic feedback (the next a-priori).
enum class DecisionSource { kPosteriori, kApriori };

struct DecodeOptions {
  int n_iter = 4;
  Backend backend = Backend::kFxp;
  DecisionSource decision = DecisionSource::kPosteriori;
  bool collect_trace = false;
};

/// Per-iteration snapshot for test introspection and BER counting.
struct IterationTrace {
  std::vector<double> apriori1, extrinsic1;    // decoder-1 domain, 250 each
  std::vector<double> posteriori1;             // 253
  std::vector<double> apriori2, extrinsic2;    // decoder-2 (interleaved) domain
  std::vector<double> posteriori2;             // 253
  std::array<std::uint8_t, kInfoBits> hard{};  // decision snapshot
  std::uint64_t saturations = 0;               // cumulative through this iteration
};

struct DecodeTrace {
  std::vector<IterationTrace> iterations;
};

struct DecodeResult {
  std::array<std::uint8_t, kInfoBits> bits{};
  std::uint64_t saturations = 0;
  std::optional<DecodeTrace> trace;
};

/// Eq.-(6) extrinsic: e[k] = posteriori[k] - (apriori[k] + cs[k] * Lc).
template <class A, class V = typename A::Value>
std::vector<V> extrinsic(std::span<const V> posteriori, std::span<const V> apriori,
                         std::span<const V> cs, V lc, A& ar) {
  if (posteriori.size() != apriori.size() || posteriori.size() != cs.size())
    throw std::invalid_argument("extrinsic: vector lengths differ");
  std::vector<V> e(posteriori.size());
  for (std::size_t k = 0; k < e.size(); ++k)
    e[k] = ar.sub(posteriori[k], ar.add(apriori[k], ar.mul(cs[k], lc)));
  return e;
}

namespace detail {

/// H: bit = 0 if LLR < 0, else 1.
template <class A, class V = typename A::Value>
std::array<std::uint8_t, kInfoBits> harden(std::span<const V> llr) {
  std::array<std::uint8_t, kInfoBits> bits{};
  for (std::size_t k = 0; k < kInfoBits; ++k)
    bits[k] = A::is_negative(llr[k]) ? 0 : 1;
  return bits;
}

template <class A, class V = typename A::Value>
std::vector<double> trace_reals(std::span<const V> v) {
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = A::to_real(v[i]);
  return out;
}

template <class A>
DecodeResult turbo_decode_impl(const RxFrame& rx, const Permutation& p,
                               const DecodeOptions& opts, const Trellis& trellis) {
  using V = typename A::Value;
  A ar;

  auto load = [](const std::array<Fxp20, kStages>& src) {
    std::vector<V> v(kStages);
    for (std::size_t k = 0; k < kStages; ++k) v[k] = A::from_soft(src[k]);
    return v;
  };

  SisoInput<V> in1{load(rx.cs), load(rx.cp0), std::vector<V>(kStages, A::zero()),
                   A::from_soft(rx.lc)};
  SisoInput<V> in2{load(rx.cs_int), load(rx.cp1), std::vector<V>(kStages, A::zero()),
                   A::from_soft(rx.lc)};

  auto data = [](const std::vector<V>& v) {
    return std::span<const V>(v).first(kInfoBits);
  };

  DecodeResult result;
  DecodeTrace trace;
  std::array<std::uint8_t, kInfoBits> decision{};

  for (int it = 0; it < opts.n_iter; ++it) {
    // decoder 1: a-priori is the deinterleaved decoder-2 extrinsic (zero on
    // the first iteration); tail stages keep a-priori 0 throughout.
    SisoOutput<V> out1 = siso_decode(in1, trellis, ar);
    std::vector<V> ext1 =
        extrinsic(std::span<const V>(out1.llr).first(kInfoBits), data(in1.apriori),
                  data(in1.cs), in1.lc, ar);
    std::vector<double> apriori1_used;
    if (opts.collect_trace) apriori1_used = trace_reals<A>(data(in1.apriori));
    permute(std::span<const V>(ext1), std::span<V>(in2.apriori).first(kInfoBits), p,
            Direction::kFwd);

    // decoder 2 on the interleaved streams.
    SisoOutput<V> out2 = siso_decode(in2, trellis, ar);
    std::vector<V> ext2 =
        extrinsic(std::span<const V>(out2.llr).first(kInfoBits), data(in2.apriori),
                  data(in2.cs), in2.lc, ar);
    permute(std::span<const V>(ext2), std::span<V>(in1.apriori).first(kInfoBits), p,
            Direction::kInv);

    std::vector<V> post_nat =
        permute(std::span<const V>(out2.llr).first(kInfoBits), p, Direction::kInv);
    decision = opts.decision == DecisionSource::kPosteriori
                   ? harden<A>(std::span<const V>(post_nat))
                   : harden<A>(data(in1.apriori));

    if (opts.collect_trace) {
      IterationTrace t;
      t.apriori1 = std::move(apriori1_used);
      t.extrinsic1 = trace_reals<A>(std::span<const V>(ext1));
      t.posteriori1 = trace_reals<A>(std::span<const V>(out1.llr));
      t.apriori2 = trace_reals<A>(data(in2.apriori));
      t.extrinsic2 = trace_reals<A>(std::span<const V>(ext2));
      t.posteriori2 = trace_reals<A>(std::span<const V>(out2.llr));
      t.hard = decision;
      t.saturations = ar.saturations();
      trace.iterations.push_back(std::move(t));
    }
  }

  result.bits = decision;
  result.saturations = ar.saturations();
  if (opts.collect_trace) result.trace = std::move(trace);
  return result;
}

}  // namespace detail

inline DecodeResult turbo_decode(const RxFrame& rx, const Permutation& p,
                                 const DecodeOptions& opts = {}) {
  if (opts.n_iter < 1)
    throw std::invalid_argument("turbo_decode: n_iter must be >= 1");
  if (p.digest() != rx.perm_digest)
    throw std::invalid_argument("turbo_decode: permutation does not match frame");
  static const Trellis trellis = build_trellis();
  return opts.backend == Backend::kReference
             ? detail::turbo_decode_impl<RefArith>(rx, p, opts, trellis)
             : detail::turbo_decode_impl<FxpArith>(rx, p, opts, trellis);
}

}  // namespace turbo
