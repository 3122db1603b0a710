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

// Finite light labelled transition systems and the span operations on them.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tcp/kernel.hpp"
#include "tcp/sos.hpp"

namespace tcp {

struct Transition {
  std::size_t from = 0;
  Label label;
  std::size_t to = 0;

  friend auto operator<=>(const Transition&, const Transition&) = default;
};

inline constexpr std::size_t kDefaultMaxStates = 100000;

// States are dense indices 0..n-1 with a unique display id each. Transitions
// are kept sorted by (from, label, to) and form a set, so every Lts is light.
class Lts {
 public:
  // Throws SchemaError on malformed input and NotLight on a repeated
  // transition. `payload` is empty or has one entry per state.
  Lts(Alphabet alphabet, Sort sort, std::vector<std::string> state_ids,
      std::size_t initial, std::vector<Transition> transitions,
      std::vector<std::string> payload = {});

  const Alphabet& alphabet() const { return alphabet_; }
  Sort sort() const { return sort_; }
  std::size_t num_states() const { return state_ids_.size(); }
  const std::vector<std::string>& state_ids() const { return state_ids_; }
  const std::string& state_id(std::size_t s) const { return state_ids_.at(s); }
  std::optional<std::size_t> find_state(std::string_view id) const;
  std::size_t initial() const { return initial_; }
  const std::vector<Transition>& transitions() const { return transitions_; }
  std::span<const Transition> out(std::size_t s) const;
  const std::vector<std::string>& payload() const { return payload_; }

  friend bool operator==(const Lts&, const Lts&) = default;

 private:
  Alphabet alphabet_;
  Sort sort_;
  std::vector<std::string> state_ids_;
  std::size_t initial_ = 0;
  std::vector<Transition> transitions_;
  std::vector<std::size_t> out_begin_;
  std::vector<std::string> payload_;
};

// Raised when exploration would exceed the state bound; carries what was
// explored so far (every discovered state, transitions of expanded states).
class StateBoundExceeded : public Error {
 public:
  StateBoundExceeded(std::size_t bound, Lts partial);
  std::size_t bound() const { return bound_; }
  const Lts& partial() const { return partial_; }

 private:
  std::size_t bound_;
  Lts partial_;
};

// Reachable semantics: breadth-first closure of step from alpha_canonical(e).
// State ids are "0", "1", ... in discovery order; payload holds the printed
// canonical state expressions.
Lts sem(const Expr& e, const Alphabet& a,
        std::size_t max_states = kDefaultMaxStates,
        const StepOptions& options = {});

// Restriction to the states reachable from `s` (original order and ids kept);
// the initial state becomes `s`.
Lts reach(const Lts& t, std::size_t s);

// Pairs of states and pairs of transitions; labels concatenate per side.
// Pair ids are "(i,j)".
Lts free_product(const Lts& s, const Lts& t);

// Pairs of transitions whose middle vectors agree, with duplicate
// (source, label, target) results collapsed.
Lts compose_light(const Lts& s, const Lts& t);

// A state bijection theta with theta(s.initial) = t.initial that maps the
// transition set of s exactly onto that of t, if one exists.
std::optional<std::vector<std::size_t>> isomorphic(const Lts& s, const Lts& t);

// True if `theta` is such a bijection.
bool is_isomorphism(const Lts& s, const Lts& t,
                    const std::vector<std::size_t>& theta);

// States that cannot move to a different state: out-degree 0, or only
// idle self-loops.
std::vector<std::size_t> deadlocks(const Lts& t);

// States with no outgoing transition at all.
std::vector<std::size_t> terminal_states(const Lts& t);

// Shortest transition sequence from `from` to `to` (empty when equal).
std::optional<std::vector<Transition>> find_path(const Lts& t,
                                                 std::size_t from,
                                                 std::size_t to);

}  // namespace tcp
