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
#include <numeric>

#include "tcp/kernel.hpp"

namespace tcp {
namespace {

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t i) {
  while (parent[i] != i) {
    parent[i] = parent[parent[i]];
    i = parent[i];
  }
  return i;
}

// Class index (0-based, ordered by smallest member) for each of the m+n
// positions.
std::vector<std::size_t> classes_of(const WireRelation& r,
                                    std::size_t& count) {
  const std::size_t width = r.sort.left + r.sort.right;
  std::vector<std::size_t> parent(width);
  std::iota(parent.begin(), parent.end(), 0);
  for (auto [i, j] : r.pairs) {
    std::size_t a = find_root(parent, i - 1);
    std::size_t b = find_root(parent, j - 1);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<std::size_t> cls(width);
  std::vector<std::size_t> index_of_root(width, width);
  count = 0;
  for (std::size_t p = 0; p < width; ++p) {
    std::size_t root = find_root(parent, p);
    if (index_of_root[root] == width) index_of_root[root] = count++;
    cls[p] = index_of_root[root];
  }
  return cls;
}

}  // namespace

void validate(const WireRelation& r) {
  const std::size_t width = r.sort.left + r.sort.right;
  for (auto [i, j] : r.pairs) {
    if (i < 1 || j < 1 || i > width || j > width) {
      throw Error(ErrorKind::kSortMismatch,
                  "wire index pair (" + std::to_string(i) + "," +
                      std::to_string(j) + ") outside [1.." +
                      std::to_string(width) + "]");
    }
  }
}

std::size_t wire_class_count(const WireRelation& r) {
  validate(r);
  std::size_t count = 0;
  classes_of(r, count);
  return count;
}

std::vector<Label> wire_label_set(const WireRelation& r, const Alphabet& a) {
  validate(r);
  std::size_t k = 0;
  const std::vector<std::size_t> cls = classes_of(r, k);
  std::vector<Label> out;
  std::vector<Action> assignment(k, 0);
  while (true) {
    Label l;
    for (std::size_t p = 0; p < cls.size(); ++p) {
      (p < r.sort.left ? l.left : l.right).push_back(assignment[cls[p]]);
    }
    out.push_back(std::move(l));
    // odometer, last class fastest
    bool done = true;
    for (std::size_t pos = k; pos-- > 0;) {
      if (++assignment[pos] < a.size()) {
        done = false;
        break;
      }
      assignment[pos] = 0;
    }
    if (done) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

Expr mk_wire(const WireRelation& r, const Alphabet& a) {
  Var v{"V", r.sort};
  std::vector<Branch> branches;
  for (Label& l : wire_label_set(r, a)) {
    branches.push_back({std::move(l), Expr::var(v)});
  }
  return Expr::fix(0, {Binding{v, Expr::sum(std::move(branches), r.sort)}});
}

const std::vector<BuiltinWire>& all_builtin_wires() {
  static const std::vector<BuiltinWire> all = {
      BuiltinWire::kId,  BuiltinWire::kDup, BuiltinWire::kCodup,
      BuiltinWire::kEps, BuiltinWire::kEta, BuiltinWire::kDiscard};
  return all;
}

std::string_view builtin_wire_name(BuiltinWire w) {
  switch (w) {
    case BuiltinWire::kId: return "id";
    case BuiltinWire::kDup: return "dup";
    case BuiltinWire::kCodup: return "codup";
    case BuiltinWire::kEps: return "eps";
    case BuiltinWire::kEta: return "eta";
    case BuiltinWire::kDiscard: return "discard";
  }
  return "";
}

std::optional<BuiltinWire> builtin_wire_from_name(std::string_view name) {
  for (BuiltinWire w : all_builtin_wires()) {
    if (builtin_wire_name(w) == name) return w;
  }
  return std::nullopt;
}

WireRelation builtin_relation(BuiltinWire w) {
  switch (w) {
    case BuiltinWire::kId: return {{1, 1}, {{1, 2}}};
    case BuiltinWire::kDup: return {{1, 2}, {{1, 2}, {1, 3}}};
    case BuiltinWire::kCodup: return {{2, 1}, {{1, 3}, {2, 3}}};
    case BuiltinWire::kEps: return {{2, 0}, {{1, 2}}};
    case BuiltinWire::kEta: return {{0, 2}, {{1, 2}}};
    case BuiltinWire::kDiscard: return {{1, 0}, {}};
  }
  return {};
}

}  // namespace tcp
