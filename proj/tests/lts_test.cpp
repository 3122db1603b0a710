// Copyright 2026 The TCP Engine Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "cli.hpp"
#include "oracles.hpp"
#include "tcp/lts.hpp"
#include "tcp/syntax.hpp"
#include "tcp/verify.hpp"

namespace tcp {
namespace {

const Alphabet& abcd() {
  static const Alphabet a({"tau", "a", "b", "c", "d"});
  return a;
}

Label lbl(ActionVec l, ActionVec r) { return Label{std::move(l), std::move(r)}; }

Lts loops(Sort sort, std::vector<Label> labels, const Alphabet& a = abcd()) {
  std::vector<Transition> ts;
  for (Label& l : labels) ts.push_back({0, std::move(l), 0});
  return Lts(a, sort, {"0"}, 0, std::move(ts));
}

ModelFile philosophers() { return parse_model(cli::bundled_models()[0].second); }

TEST(LtsTest, RejectsDuplicateTransition) {
  try {
    loops({1, 0}, {lbl({1}, {}), lbl({1}, {})});
    FAIL() << "expected NotLight";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kNotLight);
  }
}

TEST(LtsTest, RejectsMalformed) {
  EXPECT_THROW(Lts(abcd(), {0, 0}, {"0", "0"}, 0, {}), Error);
  EXPECT_THROW(Lts(abcd(), {0, 0}, {"0"}, 1, {}), Error);
  EXPECT_THROW(Lts(abcd(), {1, 0}, {"0"}, 0, {{0, lbl({}, {}), 0}}), Error);
}

TEST(SemTest, Nil) {
  const Lts t = sem(Expr::nil({1, 1}), abcd());
  EXPECT_EQ(t.num_states(), 1u);
  EXPECT_TRUE(t.transitions().empty());
}

TEST(SemTest, Philosopher) {
  const ModelFile m = philosophers();
  const Lts t = sem(m.find("Ph")->body, m.alphabet);
  EXPECT_EQ(t.num_states(), 4u);
  EXPECT_EQ(t.transitions().size(), 8u);
  EXPECT_EQ(t.state_id(t.initial()), "0");
}

TEST(SemTest, RingMatchesDirectExploration) {
  const ModelFile m = philosophers();
  const Lts t = sem(m.find("DinPhil")->body, m.alphabet);
  const oracle::RingGraph ring = oracle::philosopher_ring();
  EXPECT_EQ(t.num_states(), ring.states.size());
  EXPECT_EQ(t.transitions().size(), ring.edges.size());
  for (std::size_t s = 0; s < ring.states.size(); ++s) {
    const std::string text =
        print_expr(parse_expr(oracle::ring_term(ring.states[s]), m.alphabet), m.alphabet);
    EXPECT_NE(std::find(t.payload().begin(), t.payload().end(), text), t.payload().end());
  }
}

TEST(SemTest, InvariantUnderRenaming) {
  const ModelFile m = parse_model(R"(
    alphabet { tau, a }
    proc P : 1 -> 1 = fix X { X : 1 -> 1 = <a/tau>.Y + <tau/tau>.X; Y : 1 -> 1 = <tau/a>.X; };
    proc Q : 1 -> 1 = fix A { A : 1 -> 1 = <tau/tau>.A + <a/tau>.B; B : 1 -> 1 = <tau/a>.A; };
  )");
  EXPECT_EQ(sem(m.find("P")->body, m.alphabet), sem(m.find("Q")->body, m.alphabet));
}

TEST(SemTest, StateBoundCarriesPartialResult) {
  const ModelFile m = philosophers();
  try {
    sem(m.find("DinPhil")->body, m.alphabet, 3);
    FAIL() << "expected StateBoundExceeded";
  } catch (const StateBoundExceeded& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kStateBoundExceeded);
    EXPECT_EQ(e.bound(), 3u);
    EXPECT_LE(e.partial().num_states(), 3u);
  }
}

TEST(ReachTest, DropsUnreachableComponent) {
  const Lts t(abcd(), {1, 0}, {"x", "y", "z"}, 0,
              {{0, lbl({1}, {}), 0}, {1, lbl({2}, {}), 2}, {2, lbl({3}, {}), 1}});
  EXPECT_EQ(reach(t, 0).num_states(), 1u);
  const Lts r = reach(t, 2);
  EXPECT_EQ(r.num_states(), 2u);
  EXPECT_EQ(r.state_id(r.initial()), "z");
  EXPECT_EQ(reach(r, r.initial()), r);
}

TEST(ProductTest, CountsLoops) {
  const Lts s = loops({1, 0}, {lbl({1}, {}), lbl({2}, {})});
  const Lts t = loops({0, 1}, {lbl({}, {1}), lbl({}, {2}), lbl({}, {3})});
  const Lts p = free_product(s, t);
  EXPECT_EQ(p.num_states(), 1u);
  EXPECT_EQ(p.transitions().size(), 6u);
  EXPECT_EQ(p.sort(), (Sort{1, 1}));
  EXPECT_TRUE(free_product(s, loops({0, 1}, {})).transitions().empty());
}

TEST(ProductTest, MatchesBruteForce) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 50; ++i) {
    const Lts s = random_lts(rng);
    Lts t = random_lts(rng);
    if (!(t.alphabet() == s.alphabet())) continue;
    const Lts p = free_product(s, t);
    const oracle::RawLts o = oracle::product(oracle::flatten(s), oracle::flatten(t));
    EXPECT_EQ(p.num_states(), o.states);
    EXPECT_EQ(p.transitions().size(), oracle::count_edges(o));
    EXPECT_EQ(p.state_id(p.initial()),
              "(" + s.state_id(s.initial()) + "," + t.state_id(t.initial()) + ")");
  }
}

TEST(ComposeTest, OnlyMatchingMiddleSurvives) {
  const Lts s = loops({1, 1}, {lbl({1}, {2}), lbl({1}, {3})});
  const Lts t = loops({1, 1}, {lbl({2}, {4})});
  const Lts c = compose_light(s, t);
  ASSERT_EQ(c.transitions().size(), 1u);
  EXPECT_EQ(c.transitions()[0].label, lbl({1}, {4}));
}

TEST(ComposeTest, DistinctMiddlesCollapse) {
  const Lts s = loops({1, 1}, {lbl({1}, {2}), lbl({1}, {3})});
  const Lts t = loops({1, 1}, {lbl({2}, {4}), lbl({3}, {4})});
  EXPECT_EQ(compose_light(s, t).transitions().size(), 1u);
}

TEST(ComposeTest, Errors) {
  const Lts s = loops({1, 2}, {});
  const Lts t = loops({1, 1}, {});
  EXPECT_THROW(compose_light(s, t), Error);
  const Lts other = loops({2, 1}, {}, Alphabet({"tau"}));
  try {
    compose_light(s, other);
    FAIL() << "expected AlphabetMismatch";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kAlphabetMismatch);
  }
}

TEST(ComposeTest, MatchesBruteForce) {
  std::mt19937_64 rng(23);
  RandomLtsOptions opts;
  opts.max_states = 20;
  int compared = 0;
  while (compared < 60) {
    const Lts s = random_lts(rng, opts);
    const Lts t = random_lts(rng, opts);
    if (!(s.alphabet() == t.alphabet()) || s.sort().right != t.sort().left) continue;
    ++compared;
    const Lts c = compose_light(s, t);
    const oracle::RawLts o = oracle::compose(oracle::flatten(s), oracle::flatten(t));
    EXPECT_EQ(c.num_states(), o.states);
    EXPECT_EQ(c.transitions().size(), oracle::count_edges(o));
  }
}

TEST(ComposeTest, IdentityWireIsNeutral) {
  std::mt19937_64 rng(29);
  int compared = 0;
  while (compared < 30) {
    const Lts t = random_lts(rng);
    if (t.sort().left != 1) continue;
    ++compared;
    const Lts id = sem(mk_wire(builtin_relation(BuiltinWire::kId), t.alphabet()),
                       t.alphabet());
    const Lts c = compose_light(id, t);
    EXPECT_TRUE(isomorphic(c, t).has_value());
  }
}

TEST(IsoTest, ReflexiveWithIdentity) {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 40; ++i) {
    const Lts t = random_lts(rng);
    const auto theta = isomorphic(t, t);
    ASSERT_TRUE(theta.has_value());
    EXPECT_TRUE(is_isomorphism(t, t, *theta));
    EXPECT_EQ((*theta)[t.initial()], t.initial());
  }
}

TEST(IsoTest, DifferentLabels) {
  EXPECT_FALSE(isomorphic(loops({1, 0}, {lbl({1}, {})}), loops({1, 0}, {lbl({2}, {})})));
}

// Relabels states by a random permutation, keeping the structure.
Lts shuffled(const Lts& t, std::mt19937_64& rng) {
  std::vector<std::size_t> perm(t.num_states());
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<std::string> ids(t.num_states());
  for (std::size_t s = 0; s < t.num_states(); ++s) ids[perm[s]] = t.state_id(s);
  std::vector<Transition> ts;
  for (const Transition& tr : t.transitions()) {
    ts.push_back({perm[tr.from], tr.label, perm[tr.to]});
  }
  std::sort(ts.begin(), ts.end());
  return Lts(t.alphabet(), t.sort(), ids, perm[t.initial()], ts);
}

TEST(IsoTest, EquivalenceOnPermutedCopies) {
  std::mt19937_64 rng(37);
  for (int i = 0; i < 40; ++i) {
    const Lts a = random_lts(rng);
    const Lts b = shuffled(a, rng);
    const Lts c = shuffled(b, rng);
    const auto ab = isomorphic(a, b);
    ASSERT_TRUE(ab.has_value());
    EXPECT_TRUE(is_isomorphism(a, b, *ab));
    EXPECT_TRUE(isomorphic(b, a).has_value());
    EXPECT_TRUE(isomorphic(a, c).has_value());
  }
}

TEST(IsoTest, DetectsSingleEdgeChange) {
  std::mt19937_64 rng(41);
  int tried = 0;
  while (tried < 40) {
    const Lts a = random_lts(rng);
    if (a.transitions().empty()) continue;
    ++tried;
    std::vector<Transition> ts = a.transitions();
    ts.pop_back();
    const Lts b(a.alphabet(), a.sort(), a.state_ids(), a.initial(), ts);
    EXPECT_FALSE(isomorphic(a, b).has_value());
  }
}

TEST(IsoTest, InitialStateMustMatch) {
  const Lts a(abcd(), {1, 0}, {"x", "y"}, 0, {{0, lbl({1}, {}), 1}});
  const Lts b(abcd(), {1, 0}, {"x", "y"}, 1, {{0, lbl({1}, {}), 1}});
  EXPECT_FALSE(isomorphic(a, b).has_value());
}

TEST(DeadlockTest, RingStarves) {
  const ModelFile m = philosophers();
  const Lts t = sem(m.find("DinPhil")->body, m.alphabet);
  const std::vector<std::size_t> dead = deadlocks(t);
  ASSERT_EQ(dead.size(), 1u);
  const std::string starving =
      print_expr(parse_expr(oracle::ring_term({{1, 2, 1, 2}}), m.alphabet), m.alphabet);
  EXPECT_EQ(t.payload()[dead[0]], starving);
  // Its only move is the silent self-loop.
  ASSERT_EQ(t.out(dead[0]).size(), 1u);
  EXPECT_EQ(t.out(dead[0])[0].to, dead[0]);
  EXPECT_TRUE(terminal_states(t).empty());
  for (std::size_t s = 0; s < t.num_states(); ++s) {
    EXPECT_EQ(find_path(t, s, t.initial()).has_value(), s != dead[0]);
  }
}

TEST(DeadlockTest, TerminalStatesAreDeadlocks) {
  const Lts t(abcd(), {1, 0}, {"x", "y"}, 0, {{0, lbl({1}, {}), 1}});
  EXPECT_EQ(deadlocks(t), std::vector<std::size_t>{1});
  EXPECT_EQ(terminal_states(t), std::vector<std::size_t>{1});
}

TEST(PathTest, ShortestAndTrivial) {
  const Lts t(abcd(), {1, 0}, {"x", "y", "z"}, 0,
              {{0, lbl({1}, {}), 1}, {1, lbl({2}, {}), 2}, {0, lbl({3}, {}), 2}});
  EXPECT_TRUE(find_path(t, 1, 1)->empty());
  ASSERT_TRUE(find_path(t, 0, 2).has_value());
  EXPECT_EQ(find_path(t, 0, 2)->size(), 1u);
  EXPECT_FALSE(find_path(t, 2, 0).has_value());
  EXPECT_THROW(find_path(t, 0, 9), Error);
}

}  // namespace
}  // namespace tcp
