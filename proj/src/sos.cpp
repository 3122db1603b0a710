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

#include "tcp/sos.hpp"

#include <algorithm>
#include <map>

namespace tcp {
namespace {

void normalize(std::vector<Step>& steps) {
  std::sort(steps.begin(), steps.end());
  steps.erase(std::unique(steps.begin(), steps.end()), steps.end());
}

ActionVec concat(const ActionVec& a, const ActionVec& b) {
  ActionVec out;
  out.reserve(a.size() + b.size());
  out.insert(out.end(), a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

}  // namespace

const std::vector<Step>& Stepper::steps(const Expr& e) {
  static const std::vector<Step> kNone;
  if (auto it = memo_.find(e); it != memo_.end()) return it->second;
  // Unguarded cycle: every term on the current unfolding stack depends on
  // `e` through Par/ComPar/Rec premises, so none of them has a finite
  // derivation.
  if (in_progress_.count(e)) return kNone;
  std::vector<Step> result = derive(e);
  return memo_.emplace(e, std::move(result)).first->second;
}

std::vector<Step> Stepper::derive(const Expr& e) {
  std::vector<Step> out;
  switch (e.kind()) {
    case ExprKind::kVar:
      break;

    case ExprKind::kSum:
      for (const Branch& b : e.branches()) out.push_back({b.label, b.body});
      break;

    case ExprKind::kTensor: {
      const std::vector<Step>& left = steps(e.lhs());
      if (left.empty()) break;
      const std::vector<Step>& right = steps(e.rhs());
      out.reserve(left.size() * right.size());
      for (const Step& a : left) {
        for (const Step& b : right) {
          out.push_back({Label{concat(a.label.left, b.label.left),
                               concat(a.label.right, b.label.right)},
                         Expr::tensor(a.target, b.target)});
        }
      }
      break;
    }

    case ExprKind::kStar: {
      const std::vector<Step>& left = steps(e.lhs());
      if (left.empty()) break;
      const std::vector<Step>& right = steps(e.rhs());
      // join on the shared middle vector
      std::map<ActionVec, std::vector<const Step*>> by_left;
      for (const Step& b : right) by_left[b.label.left].push_back(&b);
      for (const Step& a : left) {
        auto it = by_left.find(a.label.right);
        if (it == by_left.end()) continue;
        for (const Step* b : it->second) {
          out.push_back({Label{a.label.left, b->label.right},
                         Expr::star(a.target, b->target)});
        }
      }
      break;
    }

    case ExprKind::kFix: {
      if (in_progress_.size() >= options_.max_unfold_depth) {
        throw Error(ErrorKind::kDepthExceeded,
                    "more than " + std::to_string(options_.max_unfold_depth) +
                        " nested recursion unfoldings");
      }
      in_progress_.insert(e);
      try {
        out = steps(alpha_canonical(unfold(e)));
      } catch (...) {
        in_progress_.erase(e);
        throw;
      }
      in_progress_.erase(e);
      return out;
    }
  }
  normalize(out);
  return out;
}

std::vector<Step> step(const Expr& e, const StepOptions& options) {
  sort_of(e);
  Stepper stepper(options);
  return stepper.steps(alpha_canonical(e));
}

namespace {

// Collects variables of `bound` occurring in `e` outside every action prefix.
void unguarded_occurrences(const Expr& e, const std::vector<Var>& bound,
                           std::vector<Var>& found) {
  switch (e.kind()) {
    case ExprKind::kVar:
      if (std::find(bound.begin(), bound.end(), e.var()) != bound.end()) {
        found.push_back(e.var());
      }
      break;
    case ExprKind::kSum:
      break;
    case ExprKind::kTensor:
    case ExprKind::kStar:
      unguarded_occurrences(e.lhs(), bound, found);
      unguarded_occurrences(e.rhs(), bound, found);
      break;
    case ExprKind::kFix: {
      std::vector<Var> visible;
      for (const Var& v : bound) {
        bool shadowed = std::any_of(
            e.bindings().begin(), e.bindings().end(),
            [&](const Binding& b) { return b.var == v; });
        if (!shadowed) visible.push_back(v);
      }
      for (const Binding& b : e.bindings()) {
        unguarded_occurrences(b.body, visible, found);
      }
      break;
    }
  }
}

void collect_guards(const Expr& e, const std::string& path,
                    std::vector<GuardReport>& out) {
  switch (e.kind()) {
    case ExprKind::kVar:
      break;
    case ExprKind::kSum:
      for (std::size_t i = 0; i < e.branches().size(); ++i) {
        collect_guards(e.branches()[i].body,
                       path + "/sum.branch[" + std::to_string(i) + "]", out);
      }
      break;
    case ExprKind::kTensor:
    case ExprKind::kStar: {
      std::string op = e.kind() == ExprKind::kTensor ? "/tensor" : "/star";
      collect_guards(e.lhs(), path + op + ".lhs", out);
      collect_guards(e.rhs(), path + op + ".rhs", out);
      break;
    }
    case ExprKind::kFix: {
      std::vector<Var> bound;
      for (const Binding& b : e.bindings()) bound.push_back(b.var);
      for (const Binding& b : e.bindings()) {
        std::vector<Var> found;
        unguarded_occurrences(b.body, bound, found);
        out.push_back({path + "/fix", b.var, found.empty()});
      }
      for (const Binding& b : e.bindings()) {
        collect_guards(b.body, path + "/fix." + b.var.name, out);
      }
      break;
    }
  }
}

}  // namespace

std::vector<GuardReport> step_closure_guard(const Expr& e) {
  std::vector<GuardReport> out;
  collect_guards(e, "", out);
  return out;
}

}  // namespace tcp
