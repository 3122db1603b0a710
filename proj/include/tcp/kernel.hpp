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

// Core TCP terms: alphabets, sorts, labels, expressions, substitution,
// canonical forms and wire constants.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tcp/error.hpp"

namespace tcp {

using Action = std::uint16_t;
using ActionVec = std::vector<Action>;

inline constexpr std::string_view kTauName = "tau";

// A finite action set containing the silent action "tau". Names are kept in
// lexicographic order, so Action indices follow name order.
class Alphabet {
 public:
  // Throws MissingTau if "tau" is absent, ParseError on duplicate names.
  explicit Alphabet(std::vector<std::string> names);

  std::size_t size() const { return names_.size(); }
  const std::string& name(Action a) const { return names_.at(a); }
  std::optional<Action> find(std::string_view name) const;
  Action tau() const { return tau_; }
  const std::vector<std::string>& names() const { return names_; }

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  std::vector<std::string> names_;
  Action tau_ = 0;
};

// m:P:n -- m left interfaces, n right interfaces.
struct Sort {
  std::size_t left = 0;
  std::size_t right = 0;

  friend auto operator<=>(const Sort&, const Sort&) = default;
};

std::string to_string(const Sort& s);

// An element of A^m x A^n.
struct Label {
  ActionVec left;
  ActionVec right;

  Sort sort() const { return {left.size(), right.size()}; }
  friend auto operator<=>(const Label&, const Label&) = default;
};

// "<l/tau,u>"
std::string to_string(const Label& l, const Alphabet& a);
std::size_t hash_value(const Label& l);

// Variables with the same name but different sorts are different variables.
struct Var {
  std::string name;
  Sort sort;

  friend auto operator<=>(const Var&, const Var&) = default;
};

enum class ExprKind : std::uint8_t { kVar, kSum, kTensor, kStar, kFix };

struct Branch;
struct Binding;

// Immutable, structurally shared TCP process expression. Construction never
// throws on sort errors: ill-formed nodes are recorded and reported (with a
// path) by sort_of().
class Expr {
 public:
  static Expr var(Var v);
  // An empty branch list is the nil process of the given sort.
  static Expr sum(std::vector<Branch> branches, Sort sort);
  static Expr nil(Sort sort);
  static Expr prefix(Label label, Expr body);
  static Expr tensor(Expr lhs, Expr rhs);
  static Expr star(Expr lhs, Expr rhs);
  // fix_selected (X_i = P_i)_i
  static Expr fix(std::size_t selected, std::vector<Binding> bindings);

  ExprKind kind() const;
  // Sort if this whole term is well-formed.
  const std::optional<Sort>& sort() const;
  bool well_formed() const { return sort().has_value(); }

  const Var& var() const;
  const std::vector<Branch>& branches() const;
  Sort declared_sort() const;  // kSum only
  const Expr& lhs() const;
  const Expr& rhs() const;
  std::size_t selected() const;
  const std::vector<Binding>& bindings() const;

  // Sorted, duplicate-free.
  const std::vector<Var>& free_vars() const;
  bool closed() const { return free_vars().empty(); }

  // Why this node itself (not a child) is ill-formed; empty otherwise.
  const std::string& local_error() const;

  std::size_t hash() const;
  bool same_node(const Expr& other) const { return node_ == other.node_; }

  friend bool operator==(const Expr& a, const Expr& b);
  friend std::strong_ordering operator<=>(const Expr& a, const Expr& b);

  struct Node;

 private:
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct Branch {
  Label label;
  Expr body;

  friend bool operator==(const Branch&, const Branch&) = default;
  friend std::strong_ordering operator<=>(const Branch&,
                                          const Branch&) = default;
};

struct Binding {
  Var var;
  Expr body;

  friend bool operator==(const Binding&, const Binding&) = default;
  friend std::strong_ordering operator<=>(const Binding&,
                                          const Binding&) = default;
};

// Unique sort of a well-formed term. Throws SortMismatch naming the path to
// the first offending subterm otherwise.
Sort sort_of(const Expr& e);

// Simultaneous capture-avoiding substitution of free occurrences.
Expr substitute(const Expr& e, const std::map<Var, Expr>& bindings);

// Body of the selected binding with every bound variable X_j replaced by
// fix_j of the same system.
Expr unfold(const Expr& fix);

// Renames Fix binders to a position-indexed scheme and orders/deduplicates
// Sum branches, so alpha-equivalent terms become identical.
Expr alpha_canonical(const Expr& e);

// Name the canonical form gives to binding `index` of a Fix with `count`
// bindings nested under `depth` enclosing Fix binders.
std::string canonical_binder_name(std::size_t depth, std::size_t index,
                                  std::size_t count);

// --- wires ---------------------------------------------------------------

// R on [m+n], 1-based indices: left interfaces 1..m, then right m+1..m+n.
struct WireRelation {
  Sort sort;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
};

// Throws SortMismatch if an index falls outside [m+n].
void validate(const WireRelation& r);

// Number of classes of the equivalence closure of R on [m+n].
std::size_t wire_class_count(const WireRelation& r);

// A_R in ascending label order; |A_R| = |A|^classes.
std::vector<Label> wire_label_set(const WireRelation& r, const Alphabet& a);

// fix V { V = sum over A_R of a.V }
Expr mk_wire(const WireRelation& r, const Alphabet& a);

enum class BuiltinWire { kId, kDup, kCodup, kEps, kEta, kDiscard };

const std::vector<BuiltinWire>& all_builtin_wires();
std::string_view builtin_wire_name(BuiltinWire w);
std::optional<BuiltinWire> builtin_wire_from_name(std::string_view name);
WireRelation builtin_relation(BuiltinWire w);

}  // namespace tcp

template <>
struct std::hash<tcp::Expr> {
  std::size_t operator()(const tcp::Expr& e) const { return e.hash(); }
};

template <>
struct std::hash<tcp::Label> {
  std::size_t operator()(const tcp::Label& l) const {
    return tcp::hash_value(l);
  }
};
