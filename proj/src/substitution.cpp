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

#include <algorithm>
#include <set>
#include <unordered_map>

#include "tcp/kernel.hpp"

namespace tcp {
namespace {

bool touches(const Expr& e, const std::map<Var, Expr>& m) {
  for (const Var& v : e.free_vars()) {
    if (m.count(v)) return true;
  }
  return false;
}

Expr subst(const Expr& e, const std::map<Var, Expr>& m) {
  if (m.empty() || !touches(e, m)) return e;
  switch (e.kind()) {
    case ExprKind::kVar:
      return m.at(e.var());
    case ExprKind::kSum: {
      std::vector<Branch> branches;
      branches.reserve(e.branches().size());
      for (const Branch& b : e.branches()) {
        branches.push_back({b.label, subst(b.body, m)});
      }
      return Expr::sum(std::move(branches), e.declared_sort());
    }
    case ExprKind::kTensor:
      return Expr::tensor(subst(e.lhs(), m), subst(e.rhs(), m));
    case ExprKind::kStar:
      return Expr::star(subst(e.lhs(), m), subst(e.rhs(), m));
    case ExprKind::kFix:
      break;
  }

  // Fix: drop shadowed keys, then rename any binder a replacement would
  // capture.
  std::map<Var, Expr> inner;
  for (const auto& [v, r] : m) {
    bool shadowed = std::any_of(e.bindings().begin(), e.bindings().end(),
                                [&](const Binding& b) { return b.var == v; });
    if (!shadowed && std::binary_search(e.free_vars().begin(),
                                        e.free_vars().end(), v)) {
      inner.emplace(v, r);
    }
  }
  if (inner.empty()) return e;

  std::set<Var> captured_names;
  std::set<std::string> taken;
  for (const auto& [v, r] : inner) {
    for (const Var& fv : r.free_vars()) {
      captured_names.insert(fv);
      taken.insert(fv.name);
    }
  }
  for (const Var& fv : e.free_vars()) taken.insert(fv.name);
  for (const Binding& b : e.bindings()) taken.insert(b.var.name);

  std::vector<Binding> bindings = e.bindings();
  for (Binding& b : bindings) {
    if (!captured_names.count(b.var)) continue;
    std::string fresh;
    for (std::size_t k = 1;; ++k) {
      fresh = b.var.name + "_" + std::to_string(k);
      if (!taken.count(fresh)) break;
    }
    taken.insert(fresh);
    Var renamed{fresh, b.var.sort};
    inner.emplace(b.var, Expr::var(renamed));
    b.var = renamed;
  }
  for (Binding& b : bindings) b.body = subst(b.body, inner);
  return Expr::fix(e.selected(), std::move(bindings));
}

class Canonicalizer {
 public:
  explicit Canonicalizer(const Expr& root) {
    for (const Var& v : root.free_vars()) reserved_.insert(v.name);
  }

  Expr run(const Expr& e, std::size_t depth, const std::map<Var, Var>& env) {
    // Closed subterms canonicalize the same way wherever they sit at a given
    // depth; states share many of them.
    const bool memo = e.closed();
    Key key{e, depth};
    if (memo) {
      if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    }
    Expr out = build(e, depth, env);
    if (memo) memo_.emplace(key, out);
    return out;
  }

 private:
  struct Key {
    Expr e;
    std::size_t depth;
    bool operator==(const Key& o) const {
      return depth == o.depth && e.same_node(o.e);
    }
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      return k.e.hash() * 31 + k.depth;
    }
  };

  Expr build(const Expr& e, std::size_t depth,
             const std::map<Var, Var>& env) {
    switch (e.kind()) {
      case ExprKind::kVar: {
        auto it = env.find(e.var());
        return it == env.end() ? e : Expr::var(it->second);
      }
      case ExprKind::kSum: {
        std::vector<Branch> branches;
        branches.reserve(e.branches().size());
        for (const Branch& b : e.branches()) {
          branches.push_back({b.label, run(b.body, depth, env)});
        }
        std::sort(branches.begin(), branches.end());
        branches.erase(std::unique(branches.begin(), branches.end()),
                       branches.end());
        return Expr::sum(std::move(branches), e.declared_sort());
      }
      case ExprKind::kTensor:
        return Expr::tensor(run(e.lhs(), depth, env), run(e.rhs(), depth, env));
      case ExprKind::kStar:
        return Expr::star(run(e.lhs(), depth, env), run(e.rhs(), depth, env));
      case ExprKind::kFix:
        break;
    }
    std::map<Var, Var> inner = env;
    std::vector<Binding> bindings = e.bindings();
    for (std::size_t i = 0; i < bindings.size(); ++i) {
      std::string name = canonical_binder_name(depth, i, bindings.size());
      while (reserved_.count(name)) name += "_";
      Var renamed{name, bindings[i].var.sort};
      inner[bindings[i].var] = renamed;
      bindings[i].var = renamed;
    }
    for (Binding& b : bindings) b.body = run(b.body, depth + 1, inner);
    return Expr::fix(e.selected(), std::move(bindings));
  }

  std::set<std::string> reserved_;
  std::unordered_map<Key, Expr, KeyHash> memo_;
};

}  // namespace

Expr substitute(const Expr& e, const std::map<Var, Expr>& bindings) {
  for (const auto& [v, r] : bindings) {
    Sort s = sort_of(r);
    if (s != v.sort) {
      throw Error(ErrorKind::kSortMismatch,
                  "substituting a term of sort " + to_string(s) + " for " +
                      v.name + " : " + to_string(v.sort));
    }
  }
  return subst(e, bindings);
}

Expr unfold(const Expr& fix) {
  if (fix.kind() != ExprKind::kFix) {
    throw Error(ErrorKind::kSortMismatch, "unfold expects a fix expression");
  }
  sort_of(fix);
  std::map<Var, Expr> m;
  for (std::size_t j = 0; j < fix.bindings().size(); ++j) {
    m.emplace(fix.bindings()[j].var, Expr::fix(j, fix.bindings()));
  }
  return subst(fix.bindings()[fix.selected()].body, m);
}

std::string canonical_binder_name(std::size_t depth, std::size_t index,
                                  std::size_t count) {
  std::string name = "V";
  if (depth > 0) name += std::to_string(depth);
  if (count > 1) name += "_" + std::to_string(index);
  return name;
}

Expr alpha_canonical(const Expr& e) {
  Canonicalizer c(e);
  return c.run(e, 0, {});
}

}  // namespace tcp
