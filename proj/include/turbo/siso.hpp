#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "turbo/fxp.hpp"
#include "turbo/params.hpp"
#include "turbo/trellis.hpp"

// One Max-Log-MAP soft-input/soft-output pass: per-stage branch metrics,
// forward/backward state metrics, and the a-posteriori LLR as the difference
// between the best one-branch and the best zero-branch. The arithmetic is
// pluggable: RefArith computes in double, FxpArith in saturating Q10 exactly
// as the hardware would.
//
// State metric rows are max-normalized after every stage. L(d_k) is a
// difference of two maxima over (alpha + gamma + beta) terms, so subtracting
// a per-stage constant from a whole row cancels; without it the running
// path metric (roughly ½·Lc·E[cs·u + cp·v] per stage) walks out of the Q10
// range long before stage 253. The raw un-normalized kernels are exposed as
// alpha_step/beta_step.

namespace turbo {

using fxp::Fxp20;

class RefArith {
 public:
  using Value = double;
  static Value neg_inf() { return -250.0; }  // metric floor, same as hardware
  static Value zero() { return 0.0; }
  Value add(Value a, Value b) { return a + b; }
  Value sub(Value a, Value b) { return a - b; }
  Value neg(Value a) { return -a; }
  Value mul(Value a, Value b) { return a * b; }
  Value half(Value a) { return 0.5 * a; }
  static Value max(Value a, Value b) { return a > b ? a : b; }
  static bool is_negative(Value a) { return a < 0.0; }
  static Value from_soft(Fxp20 v) { return fxp::to_real(v); }
  static double to_real(Value v) { return v; }
  std::uint64_t saturations() const { return 0; }
};

class FxpArith {
 public:
  using Value = Fxp20;
  static Value neg_inf() { return Fxp20{-250 * fxp::kScale}; }  // hex C1800
  static Value zero() { return Fxp20{0}; }
  Value add(Value a, Value b) { return fxp::add(a, b, sat_); }
  Value sub(Value a, Value b) { return fxp::sub(a, b, sat_); }
  Value neg(Value a) { return fxp::neg(a, sat_); }
  Value mul(Value a, Value b) { return fxp::mul_q10(a, b, sat_); }
  Value half(Value a) { return fxp::half(a); }
  static Value max(Value a, Value b) { return fxp::max(a, b); }
  static bool is_negative(Value a) { return a.m < 0; }
  static Value from_soft(Fxp20 v) { return v; }
  static double to_real(Value v) { return fxp::to_real(v); }
  std::uint64_t saturations() const { return sat_.n; }

 private:
  fxp::SatCount sat_;
};

template <class V>
struct SisoInput {
  std::vector<V> cs;       // soft systematic
  std::vector<V> cp;       // soft parity (zero where punctured)
  std::vector<V> apriori;  // a-priori LLRs; zero at tail stages
  V lc{};                  // channel reliability
};

template <class V>
struct SisoOutput {
  std::vector<V> llr;  // a-posteriori L(d_k), one per stage
  std::uint64_t saturations = 0;
};

template <class V>
using MetricRow = std::array<V, kStates>;

template <class V>
struct MetricPlane {
  std::vector<V> gamma_plus;        // one-branch metric, (Cs+Cp) states
  std::vector<V> gamma_minus;       // one-branch metric, (Cs-Cp) states
  std::vector<MetricRow<V>> alpha;  // n+1 rows
  std::vector<MetricRow<V>> beta;   // n+1 rows
  std::size_t stages() const { return gamma_plus.size(); }
};

namespace detail {

template <class A, class V = typename A::Value>
V edge_gamma(const Trellis& t, std::uint8_t state, std::uint8_t input, V gp,
             V gm, A& ar) {
  const V base = t.group[state] == BranchGroup::kPlus ? gp : gm;
  return input ? base : ar.neg(base);
}

template <class A, class V = typename A::Value>
void normalize_row(MetricRow<V>& row, A& ar) {
  V m = row[0];
  for (std::size_t i = 1; i < kStates; ++i) m = A::max(m, row[i]);
  for (auto& v : row) v = ar.sub(v, m);
}

}  // namespace detail

/// gamma1 = ½(apriori + Lc(Cs+Cp)), gamma2 = ½(apriori + Lc(Cs-Cp)).
template <class A, class V = typename A::Value>
void branch_metrics(const SisoInput<V>& in, A& ar, MetricPlane<V>& plane) {
  const std::size_t n = in.cs.size();
  plane.gamma_plus.resize(n);
  plane.gamma_minus.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    plane.gamma_plus[k] =
        ar.half(ar.add(in.apriori[k], ar.mul(in.lc, ar.add(in.cs[k], in.cp[k]))));
    plane.gamma_minus[k] =
        ar.half(ar.add(in.apriori[k], ar.mul(in.lc, ar.sub(in.cs[k], in.cp[k]))));
  }
}

/// Raw Eq.-style forward update for one stage, no normalization.
template <class A, class V = typename A::Value>
MetricRow<V> alpha_step(const MetricRow<V>& prev, V gp, V gm, const Trellis& t,
                        A& ar) {
  MetricRow<V> next;
  for (std::size_t m = 0; m < kStates; ++m) {
    const auto& e0 = t.into[m][0];
    const auto& e1 = t.into[m][1];
    next[m] = A::max(
        ar.add(prev[e0.from], detail::edge_gamma(t, e0.from, e0.input, gp, gm, ar)),
        ar.add(prev[e1.from], detail::edge_gamma(t, e1.from, e1.input, gp, gm, ar)));
  }
  return next;
}

/// Raw backward update for one stage, no normalization.
template <class A, class V = typename A::Value>
MetricRow<V> beta_step(const MetricRow<V>& next, V gp, V gm, const Trellis& t,
                       A& ar) {
  MetricRow<V> prev;
  for (std::size_t m = 0; m < kStates; ++m) {
    prev[m] = A::max(
        ar.add(next[t.step[m][0].next], detail::edge_gamma(t, static_cast<std::uint8_t>(m), 0, gp, gm, ar)),
        ar.add(next[t.step[m][1].next], detail::edge_gamma(t, static_cast<std::uint8_t>(m), 1, gp, gm, ar)));
  }
  return prev;
}

template <class V>
MetricRow<V> boundary_row(V zero, V neg_inf) {
  MetricRow<V> row;
  row.fill(neg_inf);
  row[0] = zero;
  return row;
}

/// alpha[0] = (0, -250 x7); each later row is the stage update, renormalized.
template <class A, class V = typename A::Value>
void forward_pass(MetricPlane<V>& plane, const Trellis& t, A& ar) {
  const std::size_t n = plane.stages();
  plane.alpha.resize(n + 1);
  plane.alpha[0] = boundary_row(A::zero(), A::neg_inf());
  for (std::size_t k = 0; k < n; ++k) {
    plane.alpha[k + 1] =
        alpha_step(plane.alpha[k], plane.gamma_plus[k], plane.gamma_minus[k], t, ar);
    detail::normalize_row(plane.alpha[k + 1], ar);
  }
}

/// beta[n] = (0, -250 x7); runs from the last stage backwards.
template <class A, class V = typename A::Value>
void backward_pass(MetricPlane<V>& plane, const Trellis& t, A& ar) {
  const std::size_t n = plane.stages();
  plane.beta.resize(n + 1);
  plane.beta[n] = boundary_row(A::zero(), A::neg_inf());
  for (std::size_t k = n; k-- > 0;) {
    plane.beta[k] =
        beta_step(plane.beta[k + 1], plane.gamma_plus[k], plane.gamma_minus[k], t, ar);
    detail::normalize_row(plane.beta[k], ar);
  }
}

/// L(d_k) = max over one-branches of (alpha + gamma + beta) minus the same
/// max over zero-branches.
template <class A, class V = typename A::Value>
SisoOutput<V> llr_pass(const MetricPlane<V>& plane, const Trellis& t, A& ar) {
  const std::size_t n = plane.stages();
  SisoOutput<V> out;
  out.llr.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const V gp = plane.gamma_plus[k];
    const V gm = plane.gamma_minus[k];
    V ones{}, zeros{};
    for (std::size_t m = 0; m < kStates; ++m) {
      const V g1 = detail::edge_gamma(t, static_cast<std::uint8_t>(m), 1, gp, gm, ar);
      const V g0 = detail::edge_gamma(t, static_cast<std::uint8_t>(m), 0, gp, gm, ar);
      const V one = ar.add(plane.alpha[k][m], ar.add(g1, plane.beta[k + 1][t.next1(static_cast<std::uint8_t>(m))]));
      const V zero = ar.add(plane.alpha[k][m], ar.add(g0, plane.beta[k + 1][t.next0(static_cast<std::uint8_t>(m))]));
      ones = (m == 0) ? one : A::max(ones, one);
      zeros = (m == 0) ? zero : A::max(zeros, zero);
    }
    out.llr[k] = ar.sub(ones, zeros);
  }
  return out;
}

/// branch_metrics -> forward_pass -> backward_pass -> llr_pass.
template <class A, class V = typename A::Value>
SisoOutput<V> siso_decode(const SisoInput<V>& in, const Trellis& t, A& ar) {
  const std::size_t n = in.cs.size();
  if (in.cp.size() != n || in.apriori.size() != n)
    throw std::invalid_argument("siso_decode: input stream lengths differ");
  if (n == 0) throw std::invalid_argument("siso_decode: empty input");
  const std::uint64_t sat_before = ar.saturations();
  MetricPlane<V> plane;
  branch_metrics(in, ar, plane);
  forward_pass(plane, t, ar);
  backward_pass(plane, t, ar);
  SisoOutput<V> out = llr_pass(plane, t, ar);
  out.saturations = ar.saturations() - sat_before;
  return out;
}

}  // namespace turbo
