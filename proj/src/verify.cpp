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

#include "tcp/verify.hpp"

#include <algorithm>
#include <deque>
#include <json.hpp>
#include <map>
#include <set>

#include "tcp/sos.hpp"
#include "tcp/syntax.hpp"

namespace tcp {
namespace {

std::string sizes(const Lts& t) {
  return std::to_string(t.num_states()) + " states, " +
         std::to_string(t.transitions().size()) + " transitions";
}

std::string trace_text(const std::vector<Label>& trace, const Alphabet& a) {
  if (trace.empty()) return "(empty trace)";
  std::string out;
  for (const Label& l : trace) {
    if (!out.empty()) out += ' ';
    out += to_string(l, a);
  }
  return out;
}

// Shortest label sequence executable from the initial state of exactly one
// side, found by exploring the determinized pair.
std::optional<std::pair<std::vector<Label>, bool>> distinguishing_trace(
    const Lts& lhs, const Lts& rhs, std::size_t limit = 20000) {
  using Set = std::vector<std::size_t>;
  struct Node {
    Set left, right;
    std::vector<Label> trace;
  };
  std::set<std::pair<Set, Set>> seen;
  std::deque<Node> queue;
  queue.push_back({{lhs.initial()}, {rhs.initial()}, {}});
  seen.insert({queue.front().left, queue.front().right});
  while (!queue.empty() && seen.size() < limit) {
    Node node = std::move(queue.front());
    queue.pop_front();
    std::map<Label, std::pair<std::set<std::size_t>, std::set<std::size_t>>> next;
    for (std::size_t s : node.left) {
      for (const Transition& tr : lhs.out(s)) next[tr.label].first.insert(tr.to);
    }
    for (std::size_t s : node.right) {
      for (const Transition& tr : rhs.out(s)) next[tr.label].second.insert(tr.to);
    }
    for (auto& [label, targets] : next) {
      std::vector<Label> trace = node.trace;
      trace.push_back(label);
      if (targets.first.empty() != targets.second.empty()) {
        return std::pair{trace, !targets.first.empty()};
      }
      Set l(targets.first.begin(), targets.first.end());
      Set r(targets.second.begin(), targets.second.end());
      if (seen.insert({l, r}).second) {
        queue.push_back({std::move(l), std::move(r), std::move(trace)});
      }
    }
  }
  return std::nullopt;
}

LawReport failure(LawReport r, std::string witness) {
  r.holds = false;
  r.witness = std::move(witness);
  return r;
}

}  // namespace

LawReport compare_lts(std::string law, std::vector<std::string> operands,
                      const Lts& lhs, const Lts& rhs) {
  LawReport r;
  r.law = std::move(law);
  r.operands = std::move(operands);
  r.detail = "lhs " + sizes(lhs) + "; rhs " + sizes(rhs);
  if (isomorphic(lhs, rhs)) {
    r.holds = true;
    return r;
  }
  if (!(lhs.alphabet() == rhs.alphabet())) {
    return failure(std::move(r), "the two sides use different alphabets");
  }
  if (lhs.sort() != rhs.sort()) {
    return failure(std::move(r), "sorts differ: " + to_string(lhs.sort()) +
                                     " vs " + to_string(rhs.sort()));
  }
  if (auto t = distinguishing_trace(lhs, rhs)) {
    r.trace = t->first;
    r.trace_on_lhs = t->second;
    return failure(std::move(r),
                   "trace " + trace_text(r.trace, lhs.alphabet()) +
                       " is possible only on the " +
                       (r.trace_on_lhs ? "left" : "right"));
  }
  if (lhs.num_states() != rhs.num_states()) {
    return failure(std::move(r), "state counts differ");
  }
  if (lhs.transitions().size() != rhs.transitions().size()) {
    return failure(std::move(r), "transition counts differ");
  }
  return failure(std::move(r),
                 "same traces and sizes, but no label-preserving state "
                 "bijection fixes the initial states");
}

Expr synth_expr(const Lts& t, std::size_t s) {
  const Lts r = reach(t, s);
  std::vector<Var> vars;
  for (std::size_t v = 0; v < r.num_states(); ++v) {
    vars.push_back(Var{"S" + std::to_string(v), r.sort()});
  }
  std::vector<Binding> bindings;
  for (std::size_t v = 0; v < r.num_states(); ++v) {
    std::vector<Branch> branches;
    for (const Transition& tr : r.out(v)) {
      branches.push_back({tr.label, Expr::var(vars[tr.to])});
    }
    bindings.push_back({vars[v], Expr::sum(std::move(branches), r.sort())});
  }
  return Expr::fix(r.initial(), std::move(bindings));
}

LawReport check_synth(const Lts& t, std::size_t s, std::size_t max_states) {
  Expr e = synth_expr(t, s);
  Lts lhs = sem(e, t.alphabet(), max_states);
  Lts rhs = reach(t, s);
  return compare_lts("synthesis", {"state " + t.state_id(s)}, lhs, rhs);
}

LawReport check_prop2_tensor(const Expr& p, const Expr& q, const Alphabet& a,
                             std::size_t max_states) {
  Lts lhs = sem(Expr::tensor(p, q), a, max_states);
  Lts product = free_product(sem(p, a, max_states), sem(q, a, max_states));
  Lts rhs = reach(product, product.initial());
  return compare_lts("sem-tensor", {print_expr(p, a), print_expr(q, a)}, lhs,
                     rhs);
}

LawReport check_prop2_star(const Expr& p, const Expr& q, const Alphabet& a,
                           std::size_t max_states) {
  Expr composed = Expr::star(p, q);
  sort_of(composed);
  Lts lhs = sem(composed, a, max_states);
  Lts product = compose_light(sem(p, a, max_states), sem(q, a, max_states));
  Lts rhs = reach(product, product.initial());
  return compare_lts("sem-star", {print_expr(p, a), print_expr(q, a)}, lhs,
                     rhs);
}

LawReport check_assoc(const Expr& p, const Expr& q, const Expr& r,
                      Composition op, const Alphabet& a,
                      std::size_t max_states) {
  auto combine = [op](Expr x, Expr y) {
    return op == Composition::kStar ? Expr::star(std::move(x), std::move(y))
                                    : Expr::tensor(std::move(x), std::move(y));
  };
  const Expr left = combine(combine(p, q), r);
  const Expr right = combine(p, combine(q, r));
  sort_of(left);
  sort_of(right);
  const std::string law =
      op == Composition::kStar ? "assoc-star" : "assoc-tensor";
  std::vector<std::string> operands{print_expr(p, a), print_expr(q, a),
                                    print_expr(r, a)};

  // One-step bijection: (p';q');r' corresponds to p';(q';r').
  std::vector<Step> rebracketed;
  for (const Step& s : step(left)) {
    const Expr& inner = s.target.lhs();
    rebracketed.push_back(
        {s.label, combine(inner.lhs(), combine(inner.rhs(), s.target.rhs()))});
  }
  std::sort(rebracketed.begin(), rebracketed.end());
  const std::vector<Step> direct = step(right);
  if (rebracketed != direct) {
    LawReport rep;
    rep.law = law;
    rep.operands = std::move(operands);
    rep.detail = std::to_string(rebracketed.size()) + " vs " +
                 std::to_string(direct.size()) + " one-step transitions";
    std::vector<Step> only_left, only_right;
    std::set_difference(rebracketed.begin(), rebracketed.end(), direct.begin(),
                        direct.end(), std::back_inserter(only_left));
    std::set_difference(direct.begin(), direct.end(), rebracketed.begin(),
                        rebracketed.end(), std::back_inserter(only_right));
    const bool on_left = !only_left.empty();
    const Step& w = on_left ? only_left.front() : only_right.front();
    return failure(std::move(rep),
                   "one-step transition " + to_string(w.label, a) + " -> " +
                       print_expr(w.target, a) + " exists only for the " +
                       (on_left ? "left" : "right") + " bracketing");
  }

  LawReport rep = compare_lts(law, std::move(operands), sem(left, a, max_states),
                              sem(right, a, max_states));
  rep.detail = std::to_string(direct.size()) + " one-step transitions match; " +
               rep.detail;
  return rep;
}

std::vector<LawReport> check_wire_laws(const Alphabet& a) {
  struct Law {
    std::string name;
    std::string lhs;
    std::string rhs;
  };
  std::vector<Law> laws = {
      {"coassociativity", "dup ; (id || dup)", "dup ; (dup || id)"},
      {"counit", "dup ; (id || discard)", "id"},
      {"separability", "dup ; codup", "id"},
      {"frobenius-left", "(id || dup) ; (codup || id)", "codup ; dup"},
      {"frobenius-right", "codup ; dup", "(dup || id) ; (id || codup)"},
  };
  for (BuiltinWire w : all_builtin_wires()) {
    const std::string name(builtin_wire_name(w));
    const Sort s = builtin_relation(w).sort;
    if (s.left == 1) laws.push_back({"identity-left", "id ; " + name, name});
    if (s.right == 1) laws.push_back({"identity-right", name + " ; id", name});
  }
  std::vector<LawReport> out;
  for (const Law& law : laws) {
    Expr lhs = parse_expr(law.lhs, a);
    Expr rhs = parse_expr(law.rhs, a);
    out.push_back(compare_lts(law.name, {law.lhs, law.rhs}, sem(lhs, a),
                              sem(rhs, a)));
  }
  return out;
}

std::string to_text(const LawReport& r) {
  std::string out = r.holds ? "[holds] " : "[FAILS] ";
  out += r.law;
  for (std::size_t i = 0; i < r.operands.size(); ++i) {
    out += i ? " | " : ": ";
    out += r.operands[i];
  }
  if (!r.detail.empty()) out += " (" + r.detail + ")";
  if (!r.holds) out += "\n  witness: " + r.witness;
  return out;
}

std::string to_json(const std::vector<LawReport>& reports, const Alphabet& a) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  for (const LawReport& r : reports) {
    nlohmann::ordered_json j;
    j["law"] = r.law;
    j["operands"] = r.operands;
    j["verdict"] = r.holds ? "holds" : "fails";
    j["detail"] = r.detail;
    if (!r.holds) {
      j["witness"] = r.witness;
      if (!r.trace.empty()) {
        std::vector<std::string> trace;
        for (const Label& l : r.trace) trace.push_back(to_string(l, a));
        j["trace"] = trace;
        j["trace_side"] = r.trace_on_lhs ? "lhs" : "rhs";
      }
    }
    doc.push_back(std::move(j));
  }
  return doc.dump(2) + "\n";
}

// --- random corpora -------------------------------------------------------

TermGenerator::TermGenerator(const Alphabet& a, std::uint64_t seed)
    : alphabet_(a), rng_(seed) {}

std::size_t TermGenerator::below(std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_);
}

Sort TermGenerator::sort(std::size_t max_arity) {
  return Sort{below(max_arity + 1), below(max_arity + 1)};
}

Label TermGenerator::label(Sort sort) {
  Label l;
  for (std::size_t i = 0; i < sort.left; ++i) {
    l.left.push_back(static_cast<Action>(below(alphabet_.size())));
  }
  for (std::size_t i = 0; i < sort.right; ++i) {
    l.right.push_back(static_cast<Action>(below(alphabet_.size())));
  }
  return l;
}

Expr TermGenerator::term(Sort sort, int depth) {
  std::vector<Var> scope;
  return gen(sort, depth, scope);
}

Expr TermGenerator::random_wire(Sort sort) {
  std::vector<BuiltinWire> fitting;
  for (BuiltinWire w : all_builtin_wires()) {
    if (builtin_relation(w).sort == sort) fitting.push_back(w);
  }
  const std::size_t width = sort.left + sort.right;
  if (!fitting.empty() && below(2) == 0) {
    return mk_wire(builtin_relation(fitting[below(fitting.size())]), alphabet_);
  }
  WireRelation r{sort, {}};
  if (width > 0) {
    const std::size_t pairs = below(4);
    for (std::size_t k = 0; k < pairs; ++k) {
      r.pairs.emplace_back(1 + below(width), 1 + below(width));
    }
  }
  return mk_wire(r, alphabet_);
}

Expr TermGenerator::leaf_body(Sort sort, int depth, std::vector<Var>& scope) {
  std::vector<Var> fitting;
  for (const Var& v : scope) {
    if (v.sort == sort) fitting.push_back(v);
  }
  if (!fitting.empty() && below(2) == 0) {
    return Expr::var(fitting[below(fitting.size())]);
  }
  if (depth <= 0) return Expr::nil(sort);
  return gen(sort, depth, scope);
}

Expr TermGenerator::prefix_sum(Sort sort, int depth, std::vector<Var>& scope) {
  std::vector<Branch> branches;
  const std::size_t n = 1 + below(3);
  for (std::size_t i = 0; i < n; ++i) {
    branches.push_back({label(sort), leaf_body(sort, depth - 1, scope)});
  }
  return Expr::sum(std::move(branches), sort);
}

Expr TermGenerator::gen(Sort sort, int depth, std::vector<Var>& scope) {
  if (depth <= 0) {
    switch (below(5)) {
      case 0: return Expr::nil(sort);
      case 1: return random_wire(sort);
      default: return prefix_sum(sort, 0, scope);
    }
  }
  switch (below(10)) {
    case 0:
      return Expr::nil(sort);
    case 1:
      return random_wire(sort);
    case 2:
    case 3: {
      // Operands of a parallel operator never mention enclosing recursion
      // variables: recursing through a tensor or star grows the term
      // without bound and the reachable state space becomes infinite.
      std::vector<Var> closed;
      Sort a{below(sort.left + 1), below(sort.right + 1)};
      Sort b{sort.left - a.left, sort.right - a.right};
      Expr lhs = gen(a, depth - 1, closed);
      return Expr::tensor(std::move(lhs), gen(b, depth - 1, closed));
    }
    case 4:
    case 5: {
      std::vector<Var> closed;
      const std::size_t middle = below(3);
      Expr lhs = gen({sort.left, middle}, depth - 1, closed);
      return Expr::star(std::move(lhs), gen({middle, sort.right}, depth - 1, closed));
    }
    case 6:
    case 7: {
      std::vector<Var> vars{Var{"X" + std::to_string(fresh_++), sort}};
      if (below(2) == 0) vars.push_back(Var{"X" + std::to_string(fresh_++), this->sort(1)});
      const std::size_t mark = scope.size();
      scope.insert(scope.end(), vars.begin(), vars.end());
      std::vector<Binding> bindings;
      for (const Var& v : vars) {
        bindings.push_back({v, prefix_sum(v.sort, depth - 1, scope)});
      }
      scope.resize(mark);
      return Expr::fix(0, std::move(bindings));
    }
    default:
      return prefix_sum(sort, depth, scope);
  }
}

Lts random_lts(std::mt19937_64& rng, const RandomLtsOptions& options) {
  auto below = [&](std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
  };
  static const std::vector<std::string> kExtra = {"a", "b", "c", "d", "e"};
  std::vector<std::string> names{std::string(kTauName)};
  const std::size_t actions = 1 + below(options.max_actions);
  for (std::size_t i = 1; i < actions; ++i) names.push_back(kExtra.at(i - 1));
  Alphabet alphabet(names);

  const Sort sort{below(options.max_arity + 1), below(options.max_arity + 1)};
  const std::size_t n = 1 + below(options.max_states);
  std::set<Transition> transitions;
  for (std::size_t s = 0; s < n; ++s) {
    const std::size_t degree = below(options.max_out_degree + 1);
    for (std::size_t k = 0; k < degree; ++k) {
      Label l;
      for (std::size_t i = 0; i < sort.left; ++i) {
        l.left.push_back(static_cast<Action>(below(alphabet.size())));
      }
      for (std::size_t i = 0; i < sort.right; ++i) {
        l.right.push_back(static_cast<Action>(below(alphabet.size())));
      }
      transitions.insert({s, std::move(l), below(n)});
    }
  }
  std::vector<std::string> ids;
  for (std::size_t s = 0; s < n; ++s) ids.push_back("q" + std::to_string(s));
  return Lts(std::move(alphabet), sort, std::move(ids), below(n),
             {transitions.begin(), transitions.end()});
}

}  // namespace tcp
