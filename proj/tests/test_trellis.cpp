#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <sstream>

#include "turbo/trellis.hpp"

using namespace turbo;

TEST_CASE("rsc_step matches hand-traced transitions") {
  CHECK(rsc_step(0, 1).next == 4);
  CHECK(rsc_step(0, 1).parity == 1);
  CHECK(rsc_step(0, 0).next == 0);
  CHECK(rsc_step(0, 0).parity == 0);
  // state 2 = (s1,s2,s3) = (0,1,0): f = 1^1^0 = 0, next (0,0,1)=1, parity 0
  CHECK(rsc_step(2, 1).next == 1);
  CHECK(rsc_step(2, 1).parity == 0);
}

TEST_CASE("tail input zeroes the feedback and flushes in three steps") {
  CHECK(tail_input(0) == 0);
  CHECK(tail_input(7) == 0);  // s2^s3 = 1^1
  for (std::uint8_t s = 0; s < 8; ++s) {
    std::uint8_t st = s;
    for (int t = 0; t < 3; ++t) st = rsc_step(st, tail_input(st)).next;
    CHECK(st == 0);
  }
}

TEST_CASE("trellis reproduces the published state pairings") {
  const Trellis t = build_trellis();
  const std::array<std::uint8_t, 8> ones = {4, 0, 1, 5, 6, 2, 3, 7};
  const std::array<std::uint8_t, 8> zeros = {0, 4, 5, 1, 2, 6, 7, 3};
  for (std::uint8_t m = 0; m < 8; ++m) {
    CHECK(t.next1(m) == ones[m]);
    CHECK(t.next0(m) == zeros[m]);
  }
}

TEST_CASE("branch groups split as {0,1,6,7} plus / {2,3,4,5} minus") {
  const Trellis t = build_trellis();
  for (std::uint8_t m : {0, 1, 6, 7}) CHECK(t.group[m] == BranchGroup::kPlus);
  for (std::uint8_t m : {2, 3, 4, 5}) CHECK(t.group[m] == BranchGroup::kMinus);
  // state 5's one-branch has parity 0, the grouping that wins the published
  // label disagreement
  CHECK(t.step[5][1].parity == 0);
}

TEST_CASE("state map is a bijection for each fixed input") {
  const Trellis t = build_trellis();
  for (std::uint8_t u = 0; u <= 1; ++u) {
    std::set<std::uint8_t> targets;
    for (std::uint8_t m = 0; m < 8; ++m) targets.insert(t.step[m][u].next);
    CHECK(targets.size() == 8);
  }
}

TEST_CASE("zero-branch parity is the complement of the one-branch parity") {
  const Trellis t = build_trellis();
  for (std::uint8_t m = 0; m < 8; ++m)
    CHECK(t.step[m][0].parity == (1 ^ t.step[m][1].parity));
}

TEST_CASE("every state has exactly two incoming transitions") {
  const Trellis t = build_trellis();
  for (std::uint8_t m = 0; m < 8; ++m) {
    const auto& a = t.into[m][0];
    const auto& b = t.into[m][1];
    CHECK(t.step[a.from][a.input].next == m);
    CHECK(t.step[b.from][b.input].next == m);
    CHECK((a.from != b.from || a.input != b.input));
  }
}

TEST_CASE("dump lists all sixteen transitions") {
  const Trellis t = build_trellis();
  std::ostringstream os;
  dump_trellis(t, os);
  const std::string text = os.str();
  std::size_t lines = 0;
  for (char c : text) lines += c == '\n';
  CHECK(lines == 17);  // header + 16 transitions
  CHECK(text.find("Cs+Cp") != std::string::npos);
  CHECK(text.find("Cs-Cp") != std::string::npos);
}
