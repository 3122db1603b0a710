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

// Textual model syntax, the expression printer, and LTS serialization.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tcp/kernel.hpp"
#include "tcp/lts.hpp"

namespace tcp {

struct Definition {
  std::string name;
  Sort sort;
  Expr body;
  SourcePos pos;
};

struct ModelFile {
  Alphabet alphabet;
  std::vector<Definition> definitions;

  const Definition* find(std::string_view name) const;
};

// Grammar:
//   file   := "alphabet" "{" ident ("," ident)* "}" def*
//   def    := "proc" IDENT ":" NAT "->" NAT "=" expr ";"
//   expr   := term (";" term)*          communicating parallel, left-assoc
//   term   := factor ("||" factor)*     non-communicating parallel
//   factor := prefix ("+" prefix)* | atom
//   prefix := "<" avec "/" avec ">" "." atom
//   atom   := IDENT | "nil" "[" NAT "," NAT "]" | "(" expr ")"
//           | "wire" "[" NAT "->" NAT "]" "{" (NAT "~" NAT ("," ...)*)? "}"
//           | "id" | "dup" | "codup" | "eps" | "eta" | "discard"
//           | "fix" IDENT "{" (IDENT ":" NAT "->" NAT "=" expr ";")+ "}"
// "#" starts a comment. References to earlier definitions are inlined.
//
// Every error carries a source position.
ModelFile parse_model(std::string_view text);

// Parses one expression; `defs` may be referenced by name.
Expr parse_expr(std::string_view text, const Alphabet& a,
                const std::vector<Definition>& defs = {});

// Prints alpha_canonical(e) on one line, so that parsing the result yields
// alpha_canonical(e) again.
std::string print_expr(const Expr& e, const Alphabet& a);

// "alphabet { ... }" followed by one "proc" line per definition.
std::string print_model(const ModelFile& m);

bool is_keyword(std::string_view word);

// { "left": m, "right": n, "alphabet": [...], "states": [...],
//   "initial": id, "transitions": [{"from", "label": {"left","right"}, "to"}],
//   "payload": {id: text} (optional) }
std::string lts_to_json(const Lts& t);
Lts json_to_lts(std::string_view text);

std::string lts_to_dot(const Lts& t);

}  // namespace tcp
