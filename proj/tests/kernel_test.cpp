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

#include <set>

#include "oracles.hpp"
#include "tcp/kernel.hpp"
#include "tcp/syntax.hpp"
#include "tcp/verify.hpp"

namespace tcp {
namespace {

const Alphabet& three() {
  static const Alphabet a({"tau", "l", "u"});
  return a;
}

Label lbl(ActionVec l, ActionVec r) { return Label{std::move(l), std::move(r)}; }

TEST(AlphabetTest, SortsNamesAndRequiresTau) {
  const Alphabet a({"u", "tau", "l"});
  EXPECT_EQ(a.names(), (std::vector<std::string>{"l", "tau", "u"}));
  EXPECT_EQ(a.name(a.tau()), "tau");
  EXPECT_EQ(a.find("u"), Action{2});
  EXPECT_FALSE(a.find("x").has_value());
  try {
    Alphabet({"a", "b"});
    FAIL() << "expected MissingTau";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kMissingTau);
  }
  EXPECT_THROW(Alphabet({"tau", "a", "a"}), Error);
}

TEST(SortTest, NilCarriesDeclaredSort) {
  EXPECT_EQ(sort_of(Expr::nil({2, 3})), (Sort{2, 3}));
}

TEST(SortTest, PhilosopherAndRing) {
  const ModelFile m = parse_model(R"(
    alphabet { tau, l, u }
    proc Ph : 1 -> 1 = fix P0 {
      P0 : 1 -> 1 = <tau/tau>.P0 + <l/tau>.P1;
      P1 : 1 -> 1 = <tau/tau>.P1 + <tau/u>.P0;
    };
    proc Ring : 0 -> 0 = eta ; (Ph || id) ; eps;
  )");
  EXPECT_EQ(sort_of(m.find("Ph")->body), (Sort{1, 1}));
  EXPECT_EQ(sort_of(m.find("Ring")->body), (Sort{0, 0}));
}

TEST(SortTest, MismatchNamesPath) {
  const Expr a = Expr::nil({1, 2});
  const Expr b = Expr::nil({1, 1});
  const Expr bad = Expr::tensor(Expr::nil({0, 0}), Expr::star(a, b));
  EXPECT_FALSE(bad.well_formed());
  try {
    sort_of(bad);
    FAIL() << "expected SortMismatch";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kSortMismatch);
    EXPECT_NE(e.message().find("/tensor.rhs"), std::string::npos) << e.message();
  }
}

TEST(SortTest, PrefixLabelMustMatchBody) {
  const Expr bad = Expr::prefix(lbl({0}, {}), Expr::nil({1, 1}));
  EXPECT_THROW(sort_of(bad), Error);
}

TEST(SortTest, FixBodySortMustMatchVariable) {
  const Var x{"X", {1, 1}};
  const Expr bad = Expr::fix(0, {{x, Expr::nil({1, 2})}});
  EXPECT_THROW(sort_of(bad), Error);
}

TEST(SubstituteTest, DirectHit) {
  const Var x{"X", {1, 2}};
  const Expr diag = mk_wire(builtin_relation(BuiltinWire::kDup), three());
  EXPECT_EQ(substitute(Expr::var(x), {{x, diag}}), diag);
}

TEST(SubstituteTest, BoundVariableUntouched) {
  const Var x{"X", {1, 1}};
  const Expr loop = Expr::fix(0, {{x, Expr::prefix(lbl({0}, {0}), Expr::var(x))}});
  EXPECT_EQ(substitute(loop, {{x, Expr::nil({1, 1})}}), loop);
}

TEST(SubstituteTest, AvoidsCapture) {
  // (fix Y { Y = <a/a>.X }) [X := Y] must not bind the substituted Y.
  const Var x{"X", {1, 1}};
  const Var y{"Y", {1, 1}};
  const Expr inner = Expr::fix(0, {{y, Expr::prefix(lbl({0}, {0}), Expr::var(x))}});
  const Expr out = substitute(inner, {{x, Expr::var(y)}});
  EXPECT_EQ(out.free_vars(), std::vector<Var>{y});
}

TEST(SubstituteTest, RejectsSortChangingBinding) {
  const Var x{"X", {1, 1}};
  EXPECT_THROW(substitute(Expr::var(x), {{x, Expr::nil({2, 2})}}), Error);
}

TEST(UnfoldTest, ReplacesEveryBinderByItsFix) {
  const Var p0{"P0", {1, 1}};
  const Var p1{"P1", {1, 1}};
  const std::vector<Binding> bs = {
      {p0, Expr::prefix(lbl({1}, {0}), Expr::var(p1))},
      {p1, Expr::prefix(lbl({0}, {2}), Expr::var(p0))},
  };
  const Expr f0 = Expr::fix(0, bs);
  const Expr f1 = Expr::fix(1, bs);
  EXPECT_EQ(unfold(f0), Expr::prefix(lbl({1}, {0}), f1));
  EXPECT_TRUE(unfold(f0).closed());
}

TEST(CanonicalTest, AlphaEquivalentTermsCoincide) {
  const Var a{"A", {1, 1}};
  const Var b{"B", {1, 1}};
  const Expr ea = Expr::fix(0, {{a, Expr::prefix(lbl({0}, {0}), Expr::var(a))}});
  const Expr eb = Expr::fix(0, {{b, Expr::prefix(lbl({0}, {0}), Expr::var(b))}});
  EXPECT_NE(ea, eb);
  EXPECT_EQ(alpha_canonical(ea), alpha_canonical(eb));
}

TEST(CanonicalTest, SumBranchesSortedAndDeduplicated) {
  const Expr n = Expr::nil({1, 1});
  const Expr s1 = Expr::sum({{lbl({2}, {2}), n}, {lbl({0}, {0}), n}, {lbl({2}, {2}), n}}, {1, 1});
  const Expr s2 = Expr::sum({{lbl({0}, {0}), n}, {lbl({2}, {2}), n}}, {1, 1});
  EXPECT_EQ(alpha_canonical(s1), alpha_canonical(s2));
  EXPECT_EQ(alpha_canonical(s1).branches().size(), 2u);
}

TEST(CanonicalTest, IdempotentOnGeneratedTerms) {
  TermGenerator gen(three(), 7);
  for (int i = 0; i < 300; ++i) {
    const Expr e = gen.term(gen.sort(), 3);
    const Expr c = alpha_canonical(e);
    EXPECT_EQ(alpha_canonical(c), c);
    EXPECT_EQ(sort_of(c), sort_of(e));
  }
}

TEST(CanonicalTest, BinderNames) {
  EXPECT_EQ(canonical_binder_name(0, 0, 1), "V");
  EXPECT_EQ(canonical_binder_name(0, 1, 3), "V_1");
  EXPECT_EQ(canonical_binder_name(2, 0, 1), "V2");
  EXPECT_EQ(canonical_binder_name(1, 2, 3), "V1_2");
}

TEST(CanonicalTest, FreeVariableNamedLikeBinderIsKept) {
  const Var free{"V", {1, 1}};
  const Var x{"X", {1, 1}};
  const Expr e = Expr::fix(
      0, {{x, Expr::sum({{lbl({0}, {0}), Expr::var(x)}, {lbl({1}, {1}), Expr::var(free)}},
                        {1, 1})}});
  const Expr c = alpha_canonical(e);
  EXPECT_EQ(c.free_vars(), std::vector<Var>{free});
}

TEST(WireTest, DiagonalLabels) {
  const std::vector<Label> got =
      wire_label_set(builtin_relation(BuiltinWire::kDup), three());
  std::vector<Label> want;
  for (Action a = 0; a < 3; ++a) want.push_back(lbl({a}, {a, a}));
  EXPECT_EQ(got, want);
}

TEST(WireTest, EmptyRelationGivesAllLabels) {
  EXPECT_EQ(wire_label_set({{1, 1}, {}}, three()).size(), 9u);
}

TEST(WireTest, CounitOnTheLeft) {
  const std::vector<Label> got =
      wire_label_set(builtin_relation(BuiltinWire::kEps), three());
  ASSERT_EQ(got.size(), 3u);
  for (const Label& l : got) {
    EXPECT_TRUE(l.right.empty());
    ASSERT_EQ(l.left.size(), 2u);
    EXPECT_EQ(l.left[0], l.left[1]);
  }
}

TEST(WireTest, OutOfRangeIndexRejected) {
  EXPECT_THROW(wire_label_set({{1, 1}, {{1, 3}}}, three()), Error);
}

TEST(WireTest, LabelSetMatchesEnumeration) {
  // Every relation on [3] with every split, against brute force.
  std::vector<std::pair<std::size_t, std::size_t>> all;
  for (std::size_t i = 1; i <= 3; ++i) {
    for (std::size_t j = 1; j <= 3; ++j) all.push_back({i, j});
  }
  for (std::size_t m = 0; m <= 3; ++m) {
    for (std::size_t mask = 0; mask < (1u << all.size()); mask += 7) {
      WireRelation r{{m, 3 - m}, {}};
      for (std::size_t b = 0; b < all.size(); ++b) {
        if (mask >> b & 1) r.pairs.push_back(all[b]);
      }
      const std::vector<Label> got = wire_label_set(r, three());
      EXPECT_TRUE(std::is_sorted(got.begin(), got.end()));
      EXPECT_EQ(got.size(), oracle::wire_labels_by_enumeration(m, 3 - m, r.pairs, 3));
    }
  }
}

TEST(WireTest, BuiltinsByName) {
  for (BuiltinWire w : all_builtin_wires()) {
    EXPECT_EQ(builtin_wire_from_name(builtin_wire_name(w)), w);
  }
  EXPECT_FALSE(builtin_wire_from_name("nope").has_value());
  EXPECT_EQ(builtin_relation(BuiltinWire::kCodup).sort, (Sort{2, 1}));
  EXPECT_EQ(wire_class_count(builtin_relation(BuiltinWire::kDiscard)), 1u);
}

}  // namespace
}  // namespace tcp
