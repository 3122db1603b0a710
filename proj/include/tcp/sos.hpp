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

// One-step transitions of TCP expressions under the Sum, Par, ComPar and
// Rec rules.

#include <cstddef>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "tcp/kernel.hpp"

namespace tcp {

struct Step {
  Label label;
  Expr target;  // alpha-canonical

  friend bool operator==(const Step&, const Step&) = default;
  friend std::strong_ordering operator<=>(const Step&, const Step&) = default;
};

struct StepOptions {
  // Maximum number of nested Rec unfoldings on one derivation path.
  std::size_t max_unfold_depth = 1000;
};

// Memoizing derivation engine. A recursion that unfolds back into a term it
// is still deriving contributes no transitions (least fixed point), so
// fix V { V = V } is stuck rather than divergent.
//
// Not thread-safe; use one Stepper per thread.
class Stepper {
 public:
  explicit Stepper(StepOptions options = {}) : options_(options) {}

  // `e` must already be alpha-canonical. Result is sorted and duplicate-free.
  // Free variables have no transitions.
  const std::vector<Step>& steps(const Expr& e);

  std::size_t memo_size() const { return memo_.size(); }

 private:
  std::vector<Step> derive(const Expr& e);

  StepOptions options_;
  std::unordered_map<Expr, std::vector<Step>> memo_;
  std::unordered_set<Expr> in_progress_;
};

// step(e) = Stepper().steps(alpha_canonical(e)).
std::vector<Step> step(const Expr& e, const StepOptions& options = {});

struct GuardReport {
  std::string path;  // location of the owning fix, e.g. "/star.lhs/fix"
  Var var;
  bool guarded = false;
};

// For every Fix binding in `e`: whether each occurrence of that fix's bound
// variables in the binding body sits under an action prefix. Advisory only.
std::vector<GuardReport> step_closure_guard(const Expr& e);

}  // namespace tcp
