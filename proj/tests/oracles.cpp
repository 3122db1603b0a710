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

#include "oracles.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <tuple>

namespace tcp::oracle {
namespace {

using Key = std::tuple<std::size_t, std::vector<int>, std::vector<int>,
                       std::size_t>;

std::vector<int> concat(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

// Philosopher: idle, holding left, holding both, released left.
// Fork: free, taken from the left, taken from the right.
// Local transitions are (from, left action, right action, to) with
// 0 = tau, 1 = lock, 2 = unlock.
struct Local {
  int from;
  int left;
  int right;
  int to;
};

const std::vector<Local> kPhilosopher = {
    {0, 0, 0, 0}, {0, 1, 0, 1}, {1, 0, 0, 1}, {1, 0, 1, 2},
    {2, 0, 0, 2}, {2, 2, 0, 3}, {3, 0, 0, 3}, {3, 0, 2, 0},
};
const std::vector<Local> kFork = {
    {0, 0, 0, 0}, {0, 1, 0, 1}, {0, 0, 1, 2}, {1, 0, 0, 1},
    {1, 2, 0, 0}, {2, 0, 0, 2}, {2, 0, 2, 0},
};

}  // namespace

RawLts flatten(const Lts& t) {
  RawLts r;
  r.states = t.num_states();
  r.initial = t.initial();
  r.m = t.sort().left;
  r.n = t.sort().right;
  for (const Transition& tr : t.transitions()) {
    r.edges.push_back({tr.from,
                       std::vector<int>(tr.label.left.begin(), tr.label.left.end()),
                       std::vector<int>(tr.label.right.begin(), tr.label.right.end()),
                       tr.to});
  }
  return r;
}

RawLts product(const RawLts& s, const RawLts& t) {
  RawLts r;
  r.states = s.states * t.states;
  r.initial = s.initial * t.states + t.initial;
  r.m = s.m + t.m;
  r.n = s.n + t.n;
  for (const Edge& a : s.edges) {
    for (const Edge& b : t.edges) {
      r.edges.push_back({a.from * t.states + b.from, concat(a.left, b.left),
                         concat(a.right, b.right), a.to * t.states + b.to});
    }
  }
  return r;
}

RawLts compose(const RawLts& s, const RawLts& t) {
  RawLts r;
  r.states = s.states * t.states;
  r.initial = s.initial * t.states + t.initial;
  r.m = s.m;
  r.n = t.n;
  std::set<Key> seen;
  for (const Edge& a : s.edges) {
    for (const Edge& b : t.edges) {
      if (a.right != b.left) continue;
      Key k{a.from * t.states + b.from, a.left, b.right, a.to * t.states + b.to};
      if (seen.insert(k).second) {
        r.edges.push_back({std::get<0>(k), a.left, b.right, std::get<3>(k)});
      }
    }
  }
  return r;
}

RawLts reachable(const RawLts& t) {
  std::vector<std::size_t> index(t.states, t.states);
  std::vector<std::size_t> order{t.initial};
  index[t.initial] = 0;
  for (std::size_t head = 0; head < order.size(); ++head) {
    for (const Edge& e : t.edges) {
      if (e.from == order[head] && index[e.to] == t.states) {
        index[e.to] = order.size();
        order.push_back(e.to);
      }
    }
  }
  RawLts r;
  r.states = order.size();
  r.initial = 0;
  r.m = t.m;
  r.n = t.n;
  std::set<Key> seen;
  for (const Edge& e : t.edges) {
    if (index[e.from] == t.states) continue;
    Key k{index[e.from], e.left, e.right, index[e.to]};
    if (seen.insert(k).second) {
      r.edges.push_back({index[e.from], e.left, e.right, index[e.to]});
    }
  }
  return r;
}

std::size_t count_edges(const RawLts& t) {
  std::set<Key> seen;
  for (const Edge& e : t.edges) seen.insert({e.from, e.left, e.right, e.to});
  return seen.size();
}

std::size_t wire_labels_by_enumeration(
    std::size_t m, std::size_t n,
    const std::vector<std::pair<std::size_t, std::size_t>>& pairs,
    std::size_t alphabet_size) {
  const std::size_t width = m + n;
  std::size_t total = 1;
  for (std::size_t i = 0; i < width; ++i) total *= alphabet_size;
  std::size_t count = 0;
  std::vector<std::size_t> digits(width);
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t c = code;
    for (std::size_t i = 0; i < width; ++i) {
      digits[i] = c % alphabet_size;
      c /= alphabet_size;
    }
    bool ok = true;
    for (auto [i, j] : pairs) {
      if (digits[i - 1] != digits[j - 1]) {
        ok = false;
        break;
      }
    }
    if (ok) ++count;
  }
  return count;
}

RingGraph philosopher_ring() {
  // A global move picks one local transition per component such that
  // adjacent interfaces agree: ph1 -> fk1 -> ph2 -> fk2 -> (back to) ph1.
  const std::array<const std::vector<Local>*, 4> parts = {
      &kPhilosopher, &kFork, &kPhilosopher, &kFork};
  RingGraph g;
  std::map<RingState, std::size_t> index;
  g.states.push_back({{0, 0, 0, 0}});
  index[g.states[0]] = 0;
  std::set<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t head = 0; head < g.states.size(); ++head) {
    const RingState cur = g.states[head];
    for (const Local& a : *parts[0]) {
      if (a.from != cur.local[0]) continue;
      for (const Local& b : *parts[1]) {
        if (b.from != cur.local[1] || b.left != a.right) continue;
        for (const Local& c : *parts[2]) {
          if (c.from != cur.local[2] || c.left != b.right) continue;
          for (const Local& d : *parts[3]) {
            if (d.from != cur.local[3] || d.left != c.right ||
                d.right != a.left) {
              continue;
            }
            RingState next{{a.to, b.to, c.to, d.to}};
            auto [it, fresh] = index.emplace(next, g.states.size());
            if (fresh) g.states.push_back(next);
            edges.insert({head, it->second});
          }
        }
      }
    }
  }
  g.edges.assign(edges.begin(), edges.end());
  return g;
}

std::string ring_term(const RingState& s) {
  static const char* kPh[] = {
      "P0 : 1 -> 1 = <tau/tau>.P0 + <l/tau>.P1;"
      " P1 : 1 -> 1 = <tau/tau>.P1 + <tau/l>.P2;"
      " P2 : 1 -> 1 = <tau/tau>.P2 + <u/tau>.P3;"
      " P3 : 1 -> 1 = <tau/tau>.P3 + <tau/u>.P0;"};
  static const char* kFk[] = {
      "F0 : 1 -> 1 = <tau/tau>.F0 + <l/tau>.F1 + <tau/l>.F2;"
      " F1 : 1 -> 1 = <tau/tau>.F1 + <u/tau>.F0;"
      " F2 : 1 -> 1 = <tau/tau>.F2 + <tau/u>.F0;"};
  auto ph = [&](int i) {
    return "fix P" + std::to_string(i) + " { " + kPh[0] + " }";
  };
  auto fk = [&](int i) {
    return "fix F" + std::to_string(i) + " { " + kFk[0] + " }";
  };
  return "eta ; (((" + ph(s.local[0]) + " ; " + fk(s.local[1]) + ") ; (" +
         ph(s.local[2]) + " ; " + fk(s.local[3]) + ")) || id) ; eps";
}

}  // namespace tcp::oracle
