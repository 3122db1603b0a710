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

#include "tcp/kernel.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>

namespace tcp {

// --- alphabet, sorts, labels ------------------------------------------------

Alphabet::Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
  std::sort(names_.begin(), names_.end());
  auto dup = std::adjacent_find(names_.begin(), names_.end());
  if (dup != names_.end()) {
    throw Error(ErrorKind::kParseError, "duplicate action '" + *dup + "'");
  }
  auto tau = find(kTauName);
  if (!tau) {
    throw Error(ErrorKind::kMissingTau, "alphabet must contain 'tau'");
  }
  if (names_.size() > 0xffff) {
    throw Error(ErrorKind::kParseError, "alphabet too large");
  }
  tau_ = *tau;
}

std::optional<Action> Alphabet::find(std::string_view name) const {
  auto it = std::lower_bound(names_.begin(), names_.end(), name);
  if (it == names_.end() || *it != name) return std::nullopt;
  return static_cast<Action>(it - names_.begin());
}

std::string to_string(const Sort& s) {
  return std::to_string(s.left) + " -> " + std::to_string(s.right);
}

std::string to_string(const Label& l, const Alphabet& a) {
  std::string out = "<";
  for (std::size_t i = 0; i < l.left.size(); ++i) {
    if (i) out += ',';
    out += a.name(l.left[i]);
  }
  out += '/';
  for (std::size_t i = 0; i < l.right.size(); ++i) {
    if (i) out += ',';
    out += a.name(l.right[i]);
  }
  out += '>';
  return out;
}

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  // splitmix64 finalizer folded into a boost-style combine
  std::uint64_t z = v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return static_cast<std::size_t>(seed ^ (z ^ (z >> 31)));
}

std::size_t hash_actions(std::size_t seed, const ActionVec& v) {
  seed = mix(seed, v.size());
  for (Action a : v) seed = mix(seed, a);
  return seed;
}

}  // namespace

std::size_t hash_value(const Label& l) {
  return hash_actions(hash_actions(0x51ed, l.left), l.right);
}

// --- expression nodes -------------------------------------------------------

struct Expr::Node {
  ExprKind kind = ExprKind::kVar;
  std::optional<Sort> sort;
  std::string local_error;  // set when children are fine but this node is not
  std::size_t hash = 0;
  std::vector<Var> free_vars;

  Var var;
  std::vector<Branch> branches;
  Sort declared;
  std::optional<Expr> lhs;
  std::optional<Expr> rhs;
  std::size_t selected = 0;
  std::vector<Binding> bindings;
};

namespace {

using Node = Expr::Node;

std::vector<Var> merge_vars(const std::vector<Var>& a,
                            const std::vector<Var>& b) {
  std::vector<Var> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                 std::back_inserter(out));
  return out;
}

std::size_t hash_var(std::size_t seed, const Var& v) {
  seed = mix(seed, std::hash<std::string>{}(v.name));
  seed = mix(seed, v.sort.left);
  return mix(seed, v.sort.right);
}

}  // namespace

Expr Expr::var(Var v) {
  auto n = std::make_shared<Node>();
  n->kind = ExprKind::kVar;
  n->sort = v.sort;
  n->hash = hash_var(1, v);
  n->free_vars = {v};
  n->var = std::move(v);
  return Expr(std::move(n));
}

Expr Expr::sum(std::vector<Branch> branches, Sort sort) {
  auto n = std::make_shared<Node>();
  n->kind = ExprKind::kSum;
  n->declared = sort;
  std::size_t h = mix(mix(2, sort.left), sort.right);
  bool ok = true;
  for (std::size_t i = 0; i < branches.size(); ++i) {
    const Branch& b = branches[i];
    h = mix(hash_value(b.label), mix(h, b.body.hash()));
    n->free_vars = merge_vars(n->free_vars, b.body.free_vars());
    if (!b.body.well_formed()) {
      ok = false;
    } else if (ok && b.label.sort() != sort) {
      ok = false;
      n->local_error = "branch " + std::to_string(i) + " label has sort " +
                       to_string(b.label.sort()) + ", sum has sort " +
                       to_string(sort);
    } else if (ok && *b.body.sort() != sort) {
      ok = false;
      n->local_error = "branch " + std::to_string(i) + " body has sort " +
                       to_string(*b.body.sort()) + ", sum has sort " +
                       to_string(sort);
    }
  }
  n->hash = h;
  if (ok) n->sort = sort;
  n->branches = std::move(branches);
  return Expr(std::move(n));
}

Expr Expr::nil(Sort sort) { return sum({}, sort); }

Expr Expr::prefix(Label label, Expr body) {
  Sort s = label.sort();
  return sum({Branch{std::move(label), std::move(body)}}, s);
}

namespace {

Expr::Node make_binary(ExprKind kind, Expr lhs, Expr rhs) {
  Node n;
  n.kind = kind;
  n.hash = mix(mix(static_cast<std::size_t>(kind) + 3, lhs.hash()), rhs.hash());
  n.free_vars = merge_vars(lhs.free_vars(), rhs.free_vars());
  if (lhs.well_formed() && rhs.well_formed()) {
    Sort a = *lhs.sort();
    Sort b = *rhs.sort();
    if (kind == ExprKind::kTensor) {
      n.sort = Sort{a.left + b.left, a.right + b.right};
    } else if (a.right == b.left) {
      n.sort = Sort{a.left, b.right};
    } else {
      n.local_error = "communicating parallel of " + to_string(a) + " and " +
                      to_string(b) + ": middle interfaces disagree";
    }
  }
  n.lhs = std::move(lhs);
  n.rhs = std::move(rhs);
  return n;
}

}  // namespace

Expr Expr::tensor(Expr lhs, Expr rhs) {
  return Expr(std::make_shared<Node>(
      make_binary(ExprKind::kTensor, std::move(lhs), std::move(rhs))));
}

Expr Expr::star(Expr lhs, Expr rhs) {
  return Expr(std::make_shared<Node>(
      make_binary(ExprKind::kStar, std::move(lhs), std::move(rhs))));
}

Expr Expr::fix(std::size_t selected, std::vector<Binding> bindings) {
  auto n = std::make_shared<Node>();
  n->kind = ExprKind::kFix;
  n->selected = selected;
  std::size_t h = mix(6, selected);
  bool ok = true;
  std::vector<Var> bound;
  std::vector<Var> fv;
  for (std::size_t i = 0; i < bindings.size(); ++i) {
    const Binding& b = bindings[i];
    h = mix(hash_var(h, b.var), b.body.hash());
    bound.push_back(b.var);
    fv = merge_vars(fv, b.body.free_vars());
    if (!b.body.well_formed()) {
      ok = false;
    } else if (ok && *b.body.sort() != b.var.sort) {
      ok = false;
      n->local_error = "binding " + b.var.name + " declared " +
                       to_string(b.var.sort) + " but body has sort " +
                       to_string(*b.body.sort());
    }
  }
  std::sort(bound.begin(), bound.end());
  if (ok && std::adjacent_find(bound.begin(), bound.end()) != bound.end()) {
    ok = false;
    n->local_error = "fix binds the same variable twice";
  }
  if (ok && selected >= bindings.size()) {
    ok = false;
    n->local_error = "selected component " + std::to_string(selected) +
                     " out of range";
  }
  std::set_difference(fv.begin(), fv.end(), bound.begin(), bound.end(),
                      std::back_inserter(n->free_vars));
  n->hash = h;
  if (ok) n->sort = bindings[selected].var.sort;
  n->bindings = std::move(bindings);
  return Expr(std::move(n));
}

ExprKind Expr::kind() const { return node_->kind; }
const std::optional<Sort>& Expr::sort() const { return node_->sort; }

const Var& Expr::var() const {
  assert(kind() == ExprKind::kVar);
  return node_->var;
}
const std::vector<Branch>& Expr::branches() const {
  assert(kind() == ExprKind::kSum);
  return node_->branches;
}
Sort Expr::declared_sort() const {
  assert(kind() == ExprKind::kSum);
  return node_->declared;
}
const Expr& Expr::lhs() const { return *node_->lhs; }
const Expr& Expr::rhs() const { return *node_->rhs; }
std::size_t Expr::selected() const { return node_->selected; }
const std::vector<Binding>& Expr::bindings() const {
  assert(kind() == ExprKind::kFix);
  return node_->bindings;
}
const std::vector<Var>& Expr::free_vars() const { return node_->free_vars; }
std::size_t Expr::hash() const { return node_->hash; }
const std::string& Expr::local_error() const { return node_->local_error; }

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash()) return false;
  return (a <=> b) == 0;
}

std::strong_ordering operator<=>(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  const Node& x = *a.node_;
  const Node& y = *b.node_;
  if (auto c = x.kind <=> y.kind; c != 0) return c;
  switch (x.kind) {
    case ExprKind::kVar:
      return x.var <=> y.var;
    case ExprKind::kSum:
      if (auto c = x.declared <=> y.declared; c != 0) return c;
      return x.branches <=> y.branches;
    case ExprKind::kTensor:
    case ExprKind::kStar:
      if (auto c = *x.lhs <=> *y.lhs; c != 0) return c;
      return *x.rhs <=> *y.rhs;
    case ExprKind::kFix:
      if (auto c = x.selected <=> y.selected; c != 0) return c;
      return x.bindings <=> y.bindings;
  }
  return std::strong_ordering::equal;
}

// --- sort checking ----------------------------------------------------------

namespace {

// Returns (path, reason) of the first ill-formed node in pre-order.
std::pair<std::string, std::string> locate_error(const Expr& e,
                                                 const std::string& path) {
  switch (e.kind()) {
    case ExprKind::kVar:
      break;
    case ExprKind::kSum:
      for (std::size_t i = 0; i < e.branches().size(); ++i) {
        const Expr& body = e.branches()[i].body;
        if (!body.well_formed()) {
          return locate_error(body, path + "/sum.branch[" + std::to_string(i) + "]");
        }
      }
      break;
    case ExprKind::kTensor:
    case ExprKind::kStar: {
      std::string op = e.kind() == ExprKind::kTensor ? "/tensor" : "/star";
      if (!e.lhs().well_formed()) return locate_error(e.lhs(), path + op + ".lhs");
      if (!e.rhs().well_formed()) return locate_error(e.rhs(), path + op + ".rhs");
      break;
    }
    case ExprKind::kFix:
      for (const Binding& b : e.bindings()) {
        if (!b.body.well_formed()) {
          return locate_error(b.body, path + "/fix." + b.var.name);
        }
      }
      break;
  }
  return {path.empty() ? "/" : path, e.local_error()};
}

}  // namespace

Sort sort_of(const Expr& e) {
  if (e.sort()) return *e.sort();
  auto [path, reason] = locate_error(e, "");
  throw Error(ErrorKind::kSortMismatch, "at " + path + ": " + reason);
}

}  // namespace tcp
