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

#include "tcp/syntax.hpp"

namespace tcp {
namespace {

// Precedence levels, loosest first.
enum Level { kSeq = 0, kPar = 1, kChoice = 2, kAtom = 3 };

void print(const Expr& e, const Alphabet& a, Level ctx, std::string& out);

void print(const Expr& e, const Alphabet& a, Level ctx, std::string& out) {
  switch (e.kind()) {
    case ExprKind::kVar:
      out += e.var().name;
      return;
    case ExprKind::kSum: {
      if (e.branches().empty()) {
        out += "nil[" + std::to_string(e.declared_sort().left) + "," +
               std::to_string(e.declared_sort().right) + "]";
        return;
      }
      const bool parens = ctx > kChoice;
      if (parens) out += '(';
      for (std::size_t i = 0; i < e.branches().size(); ++i) {
        if (i) out += " + ";
        const Branch& b = e.branches()[i];
        out += to_string(b.label, a);
        out += '.';
        print(b.body, a, kAtom, out);
      }
      if (parens) out += ')';
      return;
    }
    case ExprKind::kTensor:
    case ExprKind::kStar: {
      const bool tensor = e.kind() == ExprKind::kTensor;
      const Level own = tensor ? kPar : kSeq;
      const bool parens = own < ctx;
      if (parens) out += '(';
      print(e.lhs(), a, own, out);
      out += tensor ? " || " : " ; ";
      // left-associative: a right operand at the same level needs parens
      print(e.rhs(), a, static_cast<Level>(own + 1), out);
      if (parens) out += ')';
      return;
    }
    case ExprKind::kFix: {
      out += "fix ";
      out += e.bindings()[e.selected()].var.name;
      out += " {";
      for (const Binding& b : e.bindings()) {
        out += ' ';
        out += b.var.name;
        out += " : ";
        out += to_string(b.var.sort);
        out += " = ";
        print(b.body, a, kSeq, out);
        out += ';';
      }
      out += " }";
      return;
    }
  }
}

}  // namespace

std::string print_expr(const Expr& e, const Alphabet& a) {
  std::string out;
  print(alpha_canonical(e), a, kSeq, out);
  return out;
}

std::string print_model(const ModelFile& m) {
  std::string out = "alphabet { ";
  for (std::size_t i = 0; i < m.alphabet.names().size(); ++i) {
    if (i) out += ", ";
    out += m.alphabet.names()[i];
  }
  out += " }\n";
  for (const Definition& d : m.definitions) {
    out += "proc " + d.name + " : " + to_string(d.sort) + " = " +
           print_expr(d.body, m.alphabet) + ";\n";
  }
  return out;
}

}  // namespace tcp
