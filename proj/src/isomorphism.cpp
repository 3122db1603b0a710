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
#include <cstdint>
#include <deque>
#include <map>
#include <tuple>

#include "tcp/lts.hpp"

namespace tcp {
namespace {

using LabelId = std::uint32_t;
using Edge = std::pair<LabelId, std::size_t>;  // (label, other endpoint)
using Triple = std::tuple<std::size_t, LabelId, std::size_t>;

struct Graph {
  std::vector<std::vector<Edge>> out;
  std::vector<std::vector<Edge>> in;
  std::vector<Triple> edges;  // sorted
};

Graph index_graph(const Lts& t, std::map<Label, LabelId>& labels) {
  Graph g;
  g.out.resize(t.num_states());
  g.in.resize(t.num_states());
  for (const Transition& tr : t.transitions()) {
    auto [it, fresh] = labels.emplace(tr.label, labels.size());
    g.out[tr.from].push_back({it->second, tr.to});
    g.in[tr.to].push_back({it->second, tr.from});
    g.edges.emplace_back(tr.from, it->second, tr.to);
  }
  std::sort(g.edges.begin(), g.edges.end());
  return g;
}

// Colour refinement run jointly over both graphs so colour ids are
// comparable. Returns colours of s-states followed by t-states.
std::vector<std::size_t> refine(const Graph& gs, std::size_t init_s,
                                const Graph& gt, std::size_t init_t) {
  const std::size_t ns = gs.out.size();
  const std::size_t n = ns + gt.out.size();
  auto graph_of = [&](std::size_t v) -> std::pair<const Graph*, std::size_t> {
    return v < ns ? std::pair{&gs, v} : std::pair{&gt, v - ns};
  };
  std::vector<std::size_t> colour(n);
  for (std::size_t v = 0; v < n; ++v) {
    colour[v] = (v == init_s || v == ns + init_t) ? 1 : 0;
  }
  std::size_t classes = 0;
  while (true) {
    std::map<std::vector<std::size_t>, std::size_t> ids;
    std::vector<std::size_t> next(n);
    for (std::size_t v = 0; v < n; ++v) {
      auto [g, u] = graph_of(v);
      const std::size_t offset = v < ns ? 0 : ns;
      std::vector<std::pair<LabelId, std::size_t>> outs, ins;
      for (auto [l, w] : g->out[u]) outs.emplace_back(l, colour[w + offset]);
      for (auto [l, w] : g->in[u]) ins.emplace_back(l, colour[w + offset]);
      std::sort(outs.begin(), outs.end());
      std::sort(ins.begin(), ins.end());
      std::vector<std::size_t> sig{colour[v], outs.size(), ins.size()};
      for (auto [l, c] : outs) {
        sig.push_back(l);
        sig.push_back(c);
      }
      for (auto [l, c] : ins) {
        sig.push_back(l);
        sig.push_back(c);
      }
      next[v] = ids.emplace(std::move(sig), ids.size()).first->second;
    }
    colour = std::move(next);
    if (ids.size() == classes) break;
    classes = ids.size();
  }
  return colour;
}

class Matcher {
 public:
  Matcher(const Graph& gs, const Graph& gt, std::vector<std::size_t> colour,
          std::vector<std::size_t> order)
      : gs_(gs),
        gt_(gt),
        colour_(std::move(colour)),
        order_(std::move(order)),
        ns_(gs.out.size()),
        theta_(ns_, kUnset),
        used_(gt.out.size(), false) {}

  bool run(std::size_t k = 0) {
    if (k == order_.size()) return true;
    const std::size_t u = order_[k];
    for (std::size_t v = 0; v < gt_.out.size(); ++v) {
      if (used_[v] || colour_[ns_ + v] != colour_[u]) continue;
      theta_[u] = v;
      used_[v] = true;
      if (consistent(u, v) && run(k + 1)) return true;
      theta_[u] = kUnset;
      used_[v] = false;
    }
    return false;
  }

  std::vector<std::size_t> theta() const { return theta_; }

 private:
  static constexpr std::size_t kUnset = static_cast<std::size_t>(-1);

  bool has_edge(std::size_t a, LabelId l, std::size_t b) const {
    return std::binary_search(gt_.edges.begin(), gt_.edges.end(),
                              Triple{a, l, b});
  }

  // Every edge between u and an assigned state maps to an edge of v, and v
  // has no additional edges to assigned images.
  bool consistent(std::size_t u, std::size_t v) const {
    std::size_t count_s = 0;
    for (auto [l, w] : gs_.out[u]) {
      if (theta_[w] == kUnset) continue;
      if (!has_edge(v, l, theta_[w])) return false;
      ++count_s;
    }
    for (auto [l, w] : gs_.in[u]) {
      if (theta_[w] == kUnset || w == u) continue;
      if (!has_edge(theta_[w], l, v)) return false;
      ++count_s;
    }
    std::size_t count_t = 0;
    for (auto [l, w] : gt_.out[v]) count_t += used_[w] ? 1 : 0;
    for (auto [l, w] : gt_.in[v]) count_t += (used_[w] && w != v) ? 1 : 0;
    return count_s == count_t;
  }

  const Graph& gs_;
  const Graph& gt_;
  std::vector<std::size_t> colour_;
  std::vector<std::size_t> order_;
  std::size_t ns_;
  std::vector<std::size_t> theta_;
  std::vector<bool> used_;
};

}  // namespace

std::optional<std::vector<std::size_t>> isomorphic(const Lts& s, const Lts& t) {
  if (!(s.alphabet() == t.alphabet()) || s.sort() != t.sort() ||
      s.num_states() != t.num_states() ||
      s.transitions().size() != t.transitions().size()) {
    return std::nullopt;
  }
  std::map<Label, LabelId> labels;
  Graph gs = index_graph(s, labels);
  Graph gt = index_graph(t, labels);
  std::vector<std::size_t> colour = refine(gs, s.initial(), gt, t.initial());

  const std::size_t ns = s.num_states();
  std::vector<std::size_t> hist_s, hist_t;
  hist_s.assign(colour.begin(), colour.begin() + ns);
  hist_t.assign(colour.begin() + ns, colour.end());
  std::sort(hist_s.begin(), hist_s.end());
  std::sort(hist_t.begin(), hist_t.end());
  if (hist_s != hist_t) return std::nullopt;

  // BFS order from the initial state keeps assigned neighbourhoods connected.
  std::vector<std::size_t> order;
  std::vector<bool> seen(ns, false);
  for (std::size_t root : {s.initial()}) {
    std::deque<std::size_t> queue{root};
    seen[root] = true;
    while (!queue.empty()) {
      std::size_t u = queue.front();
      queue.pop_front();
      order.push_back(u);
      for (auto [l, w] : gs.out[u]) {
        if (!seen[w]) {
          seen[w] = true;
          queue.push_back(w);
        }
      }
      for (auto [l, w] : gs.in[u]) {
        if (!seen[w]) {
          seen[w] = true;
          queue.push_back(w);
        }
      }
    }
  }
  for (std::size_t u = 0; u < ns; ++u) {
    if (!seen[u]) order.push_back(u);
  }

  Matcher m(gs, gt, std::move(colour), std::move(order));
  if (!m.run()) return std::nullopt;
  return m.theta();
}

bool is_isomorphism(const Lts& s, const Lts& t,
                    const std::vector<std::size_t>& theta) {
  if (!(s.alphabet() == t.alphabet()) || s.sort() != t.sort() ||
      s.num_states() != t.num_states() || theta.size() != s.num_states() ||
      s.transitions().size() != t.transitions().size()) {
    return false;
  }
  std::vector<bool> hit(t.num_states(), false);
  for (std::size_t v : theta) {
    if (v >= t.num_states() || hit[v]) return false;
    hit[v] = true;
  }
  if (theta[s.initial()] != t.initial()) return false;
  for (const Transition& tr : s.transitions()) {
    Transition image{theta[tr.from], tr.label, theta[tr.to]};
    if (!std::binary_search(t.transitions().begin(), t.transitions().end(),
                            image)) {
      return false;
    }
  }
  return true;
}

}  // namespace tcp
