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

#pragma once

// Executable checks of the compositional semantics: synthesis of a term from
// a finite LTS, Sem vs. span operations, associativity, and wire laws.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "tcp/kernel.hpp"
#include "tcp/lts.hpp"

namespace tcp {

struct LawReport {
  std::string law;
  std::vector<std::string> operands;
  bool holds = false;
  std::string detail;   // sizes of both sides
  std::string witness;  // non-empty iff !holds
  // When the witness is a distinguishing trace: the label sequence, and
  // whether it is executable on the left-hand side (and not the right).
  std::vector<Label> trace;
  bool trace_on_lhs = false;
};

std::string to_text(const LawReport& r);
std::string to_json(const std::vector<LawReport>& reports, const Alphabet& a);

// Isomorphism check of two LTSs packaged as a report, with a concrete
// witness when they differ.
LawReport compare_lts(std::string law, std::vector<std::string> operands,
                      const Lts& lhs, const Lts& rhs);

// fix X_s { X_v = sum over v's transitions of label.X_target; ... } with one
// binding per state reachable from s. Throws NotLight on a repeated
// transition and UnknownState if s is out of range.
Expr synth_expr(const Lts& t, std::size_t s);

// Sem(synth_expr(t, s)) against reach(t, s).
LawReport check_synth(const Lts& t, std::size_t s,
                      std::size_t max_states = kDefaultMaxStates);

// Sem(P || Q) against reach(free_product(Sem P, Sem Q), initial).
LawReport check_prop2_tensor(const Expr& p, const Expr& q, const Alphabet& a,
                             std::size_t max_states = kDefaultMaxStates);

// Sem(P ; Q) against reach(compose_light(Sem P, Sem Q), initial).
LawReport check_prop2_star(const Expr& p, const Expr& q, const Alphabet& a,
                           std::size_t max_states = kDefaultMaxStates);

enum class Composition { kTensor, kStar };

// Both bracketings of p op q op r: a label-preserving bijection between
// their one-step transitions, and isomorphic semantics.
LawReport check_assoc(const Expr& p, const Expr& q, const Expr& r,
                      Composition op, const Alphabet& a,
                      std::size_t max_states = kDefaultMaxStates);

// Coassociativity, counit, separability, both Frobenius equations, and
// left/right identity laws for every built-in wire they apply to.
std::vector<LawReport> check_wire_laws(const Alphabet& a);

// --- random corpora -------------------------------------------------------

// Sort-directed generator of closed, well-formed terms: nil, prefix sums
// (at most 3 branches), wires, tensor, star, and guarded fix (at most 2
// bindings).
class TermGenerator {
 public:
  TermGenerator(const Alphabet& a, std::uint64_t seed);

  Expr term(Sort sort, int depth);
  Sort sort(std::size_t max_arity = 2);
  std::mt19937_64& rng() { return rng_; }

 private:
  Expr gen(Sort sort, int depth, std::vector<Var>& scope);
  Expr prefix_sum(Sort sort, int depth, std::vector<Var>& scope);
  Expr leaf_body(Sort sort, int depth, std::vector<Var>& scope);
  Expr random_wire(Sort sort);
  Label label(Sort sort);
  std::size_t below(std::size_t n);

  const Alphabet& alphabet_;
  std::mt19937_64 rng_;
  std::size_t fresh_ = 0;
};

struct RandomLtsOptions {
  std::size_t max_states = 8;
  std::size_t max_actions = 3;  // including tau
  std::size_t max_arity = 2;
  std::size_t max_out_degree = 3;
};

Lts random_lts(std::mt19937_64& rng, const RandomLtsOptions& options = {});

}  // namespace tcp
