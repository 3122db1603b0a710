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

#include "tcp/lts.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <unordered_map>

#include "tcp/syntax.hpp"

namespace tcp {

Lts::Lts(Alphabet alphabet, Sort sort, std::vector<std::string> state_ids,
         std::size_t initial, std::vector<Transition> transitions,
         std::vector<std::string> payload)
    : alphabet_(std::move(alphabet)),
      sort_(sort),
      state_ids_(std::move(state_ids)),
      initial_(initial),
      transitions_(std::move(transitions)),
      payload_(std::move(payload)) {
  const std::size_t n = state_ids_.size();
  if (n == 0) throw Error(ErrorKind::kSchemaError, "an LTS needs a state");
  if (initial_ >= n) {
    throw Error(ErrorKind::kSchemaError, "initial state out of range");
  }
  if (!payload_.empty() && payload_.size() != n) {
    throw Error(ErrorKind::kSchemaError, "payload size differs from states");
  }
  {
    std::vector<std::string> ids = state_ids_;
    std::sort(ids.begin(), ids.end());
    auto dup = std::adjacent_find(ids.begin(), ids.end());
    if (dup != ids.end()) {
      throw Error(ErrorKind::kSchemaError, "duplicate state id '" + *dup + "'");
    }
  }
  for (const Transition& t : transitions_) {
    if (t.from >= n || t.to >= n) {
      throw Error(ErrorKind::kSchemaError, "transition endpoint out of range");
    }
    if (t.label.sort() != sort_) {
      throw Error(ErrorKind::kSchemaError,
                  "label arity " + to_string(t.label.sort()) +
                      " differs from LTS sort " + to_string(sort_));
    }
    for (const ActionVec* v : {&t.label.left, &t.label.right}) {
      for (Action a : *v) {
        if (a >= alphabet_.size()) {
          throw Error(ErrorKind::kSchemaError, "action index out of range");
        }
      }
    }
  }
  std::sort(transitions_.begin(), transitions_.end());
  auto dup = std::adjacent_find(transitions_.begin(), transitions_.end());
  if (dup != transitions_.end()) {
    throw Error(ErrorKind::kNotLight,
                "repeated transition " + state_ids_[dup->from] + " -" +
                    to_string(dup->label, alphabet_) + "-> " +
                    state_ids_[dup->to]);
  }
  out_begin_.assign(n + 1, 0);
  for (const Transition& t : transitions_) ++out_begin_[t.from + 1];
  for (std::size_t s = 0; s < n; ++s) out_begin_[s + 1] += out_begin_[s];
}

std::optional<std::size_t> Lts::find_state(std::string_view id) const {
  for (std::size_t s = 0; s < state_ids_.size(); ++s) {
    if (state_ids_[s] == id) return s;
  }
  return std::nullopt;
}

std::span<const Transition> Lts::out(std::size_t s) const {
  return std::span<const Transition>(transitions_)
      .subspan(out_begin_.at(s), out_begin_.at(s + 1) - out_begin_.at(s));
}

StateBoundExceeded::StateBoundExceeded(std::size_t bound, Lts partial)
    : Error(ErrorKind::kStateBoundExceeded,
            "exploration exceeded " + std::to_string(bound) + " states (" +
                std::to_string(partial.num_states()) + " explored)"),
      bound_(bound),
      partial_(std::move(partial)) {}

Lts sem(const Expr& e, const Alphabet& a, std::size_t max_states,
        const StepOptions& options) {
  const Sort sort = sort_of(e);
  Stepper stepper(options);
  std::vector<Expr> states{alpha_canonical(e)};
  std::unordered_map<Expr, std::size_t> index{{states[0], 0}};
  std::vector<Transition> transitions;

  auto build = [&] {
    std::vector<std::string> ids;
    std::vector<std::string> payload;
    for (std::size_t s = 0; s < states.size(); ++s) {
      ids.push_back(std::to_string(s));
      payload.push_back(print_expr(states[s], a));
    }
    return Lts(a, sort, std::move(ids), 0, std::move(transitions),
               std::move(payload));
  };

  if (max_states == 0) throw StateBoundExceeded(max_states, build());
  for (std::size_t s = 0; s < states.size(); ++s) {
    // copy: `states` may reallocate below
    const std::vector<Step> steps = stepper.steps(states[s]);
    for (const Step& st : steps) {
      auto [it, fresh] = index.emplace(st.target, states.size());
      if (fresh) {
        if (states.size() >= max_states) {
          index.erase(it);
          throw StateBoundExceeded(max_states, build());
        }
        states.push_back(st.target);
      }
      transitions.push_back({s, st.label, it->second});
    }
  }
  return build();
}

Lts reach(const Lts& t, std::size_t s) {
  if (s >= t.num_states()) {
    throw Error(ErrorKind::kUnknownState, "state index " + std::to_string(s));
  }
  std::vector<bool> seen(t.num_states(), false);
  std::deque<std::size_t> queue{s};
  seen[s] = true;
  while (!queue.empty()) {
    std::size_t u = queue.front();
    queue.pop_front();
    for (const Transition& tr : t.out(u)) {
      if (!seen[tr.to]) {
        seen[tr.to] = true;
        queue.push_back(tr.to);
      }
    }
  }
  std::vector<std::size_t> renum(t.num_states(), 0);
  std::vector<std::string> ids;
  std::vector<std::string> payload;
  for (std::size_t u = 0; u < t.num_states(); ++u) {
    if (!seen[u]) continue;
    renum[u] = ids.size();
    ids.push_back(t.state_id(u));
    if (!t.payload().empty()) payload.push_back(t.payload()[u]);
  }
  std::vector<Transition> transitions;
  for (const Transition& tr : t.transitions()) {
    if (seen[tr.from]) transitions.push_back({renum[tr.from], tr.label, renum[tr.to]});
  }
  return Lts(t.alphabet(), t.sort(), std::move(ids), renum[s],
             std::move(transitions), std::move(payload));
}

namespace {

void require_same_alphabet(const Lts& s, const Lts& t) {
  if (!(s.alphabet() == t.alphabet())) {
    throw Error(ErrorKind::kAlphabetMismatch,
                "operands are labelled over different alphabets");
  }
}

std::vector<std::string> pair_ids(const Lts& s, const Lts& t) {
  std::vector<std::string> ids;
  ids.reserve(s.num_states() * t.num_states());
  for (const std::string& a : s.state_ids()) {
    for (const std::string& b : t.state_ids()) {
      ids.push_back("(" + a + "," + b + ")");
    }
  }
  return ids;
}

std::vector<std::string> pair_payload(const Lts& s, const Lts& t,
                                      const char* op) {
  std::vector<std::string> payload;
  if (s.payload().empty() || t.payload().empty()) return payload;
  for (const std::string& a : s.payload()) {
    for (const std::string& b : t.payload()) {
      payload.push_back("(" + a + ")" + op + "(" + b + ")");
    }
  }
  return payload;
}

ActionVec concat(const ActionVec& a, const ActionVec& b) {
  ActionVec out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

}  // namespace

Lts free_product(const Lts& s, const Lts& t) {
  require_same_alphabet(s, t);
  const std::size_t width = t.num_states();
  std::vector<Transition> transitions;
  transitions.reserve(s.transitions().size() * t.transitions().size());
  for (const Transition& e : s.transitions()) {
    for (const Transition& f : t.transitions()) {
      transitions.push_back({e.from * width + f.from,
                             Label{concat(e.label.left, f.label.left),
                                   concat(e.label.right, f.label.right)},
                             e.to * width + f.to});
    }
  }
  Sort sort{s.sort().left + t.sort().left, s.sort().right + t.sort().right};
  return Lts(s.alphabet(), sort, pair_ids(s, t),
             s.initial() * width + t.initial(), std::move(transitions),
             pair_payload(s, t, " || "));
}

Lts compose_light(const Lts& s, const Lts& t) {
  require_same_alphabet(s, t);
  if (s.sort().right != t.sort().left) {
    throw Error(ErrorKind::kSortMismatch,
                "composing " + to_string(s.sort()) + " with " +
                    to_string(t.sort()) + ": middle interfaces disagree");
  }
  const std::size_t width = t.num_states();
  std::map<ActionVec, std::vector<const Transition*>> by_left;
  for (const Transition& f : t.transitions()) by_left[f.label.left].push_back(&f);
  std::set<Transition> transitions;
  for (const Transition& e : s.transitions()) {
    auto it = by_left.find(e.label.right);
    if (it == by_left.end()) continue;
    for (const Transition* f : it->second) {
      transitions.insert({e.from * width + f->from,
                          Label{e.label.left, f->label.right},
                          e.to * width + f->to});
    }
  }
  return Lts(s.alphabet(), Sort{s.sort().left, t.sort().right},
             pair_ids(s, t), s.initial() * width + t.initial(),
             {transitions.begin(), transitions.end()},
             pair_payload(s, t, " ; "));
}

std::vector<std::size_t> deadlocks(const Lts& t) {
  std::vector<std::size_t> out;
  for (std::size_t s = 0; s < t.num_states(); ++s) {
    auto edges = t.out(s);
    if (std::all_of(edges.begin(), edges.end(),
                    [&](const Transition& tr) { return tr.to == s; })) {
      out.push_back(s);
    }
  }
  return out;
}

std::vector<std::size_t> terminal_states(const Lts& t) {
  std::vector<std::size_t> out;
  for (std::size_t s = 0; s < t.num_states(); ++s) {
    if (t.out(s).empty()) out.push_back(s);
  }
  return out;
}

std::optional<std::vector<Transition>> find_path(const Lts& t,
                                                 std::size_t from,
                                                 std::size_t to) {
  if (from >= t.num_states() || to >= t.num_states()) {
    throw Error(ErrorKind::kUnknownState, "state index out of range");
  }
  if (from == to) return std::vector<Transition>{};
  std::vector<const Transition*> via(t.num_states(), nullptr);
  std::vector<bool> seen(t.num_states(), false);
  std::deque<std::size_t> queue{from};
  seen[from] = true;
  while (!queue.empty()) {
    std::size_t u = queue.front();
    queue.pop_front();
    for (const Transition& tr : t.out(u)) {
      if (seen[tr.to]) continue;
      seen[tr.to] = true;
      via[tr.to] = &tr;
      if (tr.to == to) {
        std::vector<Transition> path;
        for (std::size_t v = to; v != from; v = via[v]->from) {
          path.push_back(*via[v]);
        }
        std::reverse(path.begin(), path.end());
        return path;
      }
      queue.push_back(tr.to);
    }
  }
  return std::nullopt;
}

}  // namespace tcp
