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

#include <cctype>
#include <map>
#include <set>

#include "tcp/syntax.hpp"

namespace tcp {
namespace {

enum class Tok {
  kIdent, kNat, kLBrace, kRBrace, kLParen, kRParen, kLBracket, kRBracket,
  kLAngle, kRAngle, kComma, kColon, kSemi, kEquals, kPlus, kDot, kSlash,
  kTilde, kArrow, kBar2, kEnd,
};

struct Token {
  Tok kind;
  std::string text;
  SourcePos pos;
};

const char* describe(Tok t) {
  switch (t) {
    case Tok::kIdent: return "identifier";
    case Tok::kNat: return "number";
    case Tok::kLBrace: return "'{'";
    case Tok::kRBrace: return "'}'";
    case Tok::kLParen: return "'('";
    case Tok::kRParen: return "')'";
    case Tok::kLBracket: return "'['";
    case Tok::kRBracket: return "']'";
    case Tok::kLAngle: return "'<'";
    case Tok::kRAngle: return "'>'";
    case Tok::kComma: return "','";
    case Tok::kColon: return "':'";
    case Tok::kSemi: return "';'";
    case Tok::kEquals: return "'='";
    case Tok::kPlus: return "'+'";
    case Tok::kDot: return "'.'";
    case Tok::kSlash: return "'/'";
    case Tok::kTilde: return "'~'";
    case Tok::kArrow: return "'->'";
    case Tok::kBar2: return "'||'";
    case Tok::kEnd: return "end of input";
  }
  return "token";
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  SourcePos pos{1, 1};
  std::size_t i = 0;
  auto advance = [&](std::size_t k) {
    for (std::size_t j = 0; j < k; ++j, ++i) {
      if (text[i] == '\n') {
        ++pos.line;
        pos.column = 1;
      } else {
        ++pos.column;
      }
    }
  };
  while (i < text.size()) {
    const char c = text[i];
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    const SourcePos start = pos;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) {
        ++j;
      }
      out.push_back({Tok::kIdent, std::string(text.substr(i, j - i)), start});
      advance(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      if (j - i > 6) throw Error(ErrorKind::kParseError, "number too large", start);
      out.push_back({Tok::kNat, std::string(text.substr(i, j - i)), start});
      advance(j - i);
      continue;
    }
    if (text.substr(i, 2) == "->") {
      out.push_back({Tok::kArrow, "->", start});
      advance(2);
      continue;
    }
    if (text.substr(i, 2) == "||") {
      out.push_back({Tok::kBar2, "||", start});
      advance(2);
      continue;
    }
    static const std::map<char, Tok> single = {
        {'{', Tok::kLBrace},   {'}', Tok::kRBrace}, {'(', Tok::kLParen},
        {')', Tok::kRParen},   {'[', Tok::kLBracket}, {']', Tok::kRBracket},
        {'<', Tok::kLAngle},   {'>', Tok::kRAngle}, {',', Tok::kComma},
        {':', Tok::kColon},    {';', Tok::kSemi},   {'=', Tok::kEquals},
        {'+', Tok::kPlus},     {'.', Tok::kDot},    {'/', Tok::kSlash},
        {'~', Tok::kTilde}};
    auto it = single.find(c);
    if (it == single.end()) {
      throw Error(ErrorKind::kParseError,
                  std::string("unexpected character '") + c + "'", start);
    }
    out.push_back({it->second, std::string(1, c), start});
    advance(1);
  }
  out.push_back({Tok::kEnd, "", pos});
  return out;
}

const std::set<std::string, std::less<>>& keywords() {
  static const std::set<std::string, std::less<>> k = {
      "alphabet", "proc", "nil", "wire", "fix", "id",
      "dup",      "codup", "eps", "eta", "discard"};
  return k;
}

class Parser {
 public:
  Parser(std::vector<Token> tokens, const Alphabet* alphabet)
      : tokens_(std::move(tokens)), alphabet_(alphabet) {}

  ModelFile model() {
    const SourcePos apos = peek().pos;
    expect_word("alphabet");
    expect(Tok::kLBrace);
    std::vector<std::string> names;
    names.push_back(expect(Tok::kIdent).text);
    while (accept(Tok::kComma)) names.push_back(expect(Tok::kIdent).text);
    expect(Tok::kRBrace);
    std::optional<Alphabet> alphabet;
    try {
      alphabet.emplace(std::move(names));
    } catch (const Error& e) {
      throw Error(e.kind(), e.message(), apos);
    }
    alphabet_ = &*alphabet;
    while (peek().kind != Tok::kEnd) definition();
    ModelFile m{std::move(*alphabet), std::move(defs_)};
    return m;
  }

  Expr single_expr(const std::vector<Definition>& defs) {
    defs_ = defs;
    Expr e = expr();
    expect(Tok::kEnd);
    return e;
  }

 private:
  const Token& peek(std::size_t k = 0) const {
    return tokens_[std::min(pos_ + k, tokens_.size() - 1)];
  }
  const Token& next() {
    const Token& t = tokens_[pos_];
    if (pos_ + 1 < tokens_.size()) ++pos_;
    return t;
  }
  bool accept(Tok kind) {
    if (peek().kind != kind) return false;
    next();
    return true;
  }
  [[noreturn]] void fail(const std::string& what, const Token& at) {
    std::string found = at.kind == Tok::kEnd ? "end of input" : "'" + at.text + "'";
    throw Error(ErrorKind::kParseError, "expected " + what + ", found " + found,
                at.pos);
  }
  const Token& expect(Tok kind) {
    if (peek().kind != kind) fail(describe(kind), peek());
    return next();
  }
  void expect_word(std::string_view word) {
    if (peek().kind != Tok::kIdent || peek().text != word) {
      fail("'" + std::string(word) + "'", peek());
    }
    next();
  }
  std::size_t nat() { return std::stoul(expect(Tok::kNat).text); }
  bool at_word(std::string_view word) const {
    return peek().kind == Tok::kIdent && peek().text == word;
  }
  const Token& binder_name() {
    const Token& t = expect(Tok::kIdent);
    if (keywords().count(t.text)) {
      throw Error(ErrorKind::kParseError, "'" + t.text + "' is a keyword", t.pos);
    }
    return t;
  }

  Expr checked(Expr e, SourcePos pos) {
    if (!e.well_formed()) {
      std::string reason = e.local_error();
      if (reason.empty()) {
        try {
          sort_of(e);
        } catch (const Error& err) {
          reason = err.message();
        }
      }
      throw Error(ErrorKind::kSortMismatch, reason, pos);
    }
    return e;
  }

  void definition() {
    const SourcePos pos = peek().pos;
    expect_word("proc");
    const Token& name = binder_name();
    if (std::any_of(defs_.begin(), defs_.end(),
                    [&](const Definition& d) { return d.name == name.text; })) {
      throw Error(ErrorKind::kParseError,
                  "duplicate definition '" + name.text + "'", name.pos);
    }
    std::string def_name = name.text;
    expect(Tok::kColon);
    Sort sort;
    sort.left = nat();
    expect(Tok::kArrow);
    sort.right = nat();
    expect(Tok::kEquals);
    Expr body = expr();
    expect(Tok::kSemi);
    if (sort_of(body) != sort) {
      throw Error(ErrorKind::kSortMismatch,
                  "definition '" + def_name + "' declared " + to_string(sort) +
                      " but its body has sort " + to_string(sort_of(body)),
                  pos);
    }
    defs_.push_back({def_name, sort, std::move(body), pos});
  }

  Expr expr() {
    Expr e = term();
    while (peek().kind == Tok::kSemi && starts_operand(1)) {
      const SourcePos pos = next().pos;
      e = checked(Expr::star(std::move(e), term()), pos);
    }
    return e;
  }

  // Distinguishes "a ; b" from the ";" that ends a definition or a fix
  // binding: an operand never starts with "proc" or "NAME :".
  bool starts_operand(std::size_t k) const {
    const Token& t = peek(k);
    switch (t.kind) {
      case Tok::kLAngle:
      case Tok::kLParen:
        return true;
      case Tok::kIdent:
        return t.text != "proc" && peek(k + 1).kind != Tok::kColon;
      default:
        return false;
    }
  }

  Expr term() {
    Expr e = factor();
    while (peek().kind == Tok::kBar2) {
      const SourcePos pos = next().pos;
      e = checked(Expr::tensor(std::move(e), factor()), pos);
    }
    return e;
  }

  Expr factor() {
    if (peek().kind != Tok::kLAngle) return atom();
    const SourcePos pos = peek().pos;
    std::vector<Branch> branches;
    branches.push_back(prefix());
    std::vector<SourcePos> plus;
    while (peek().kind == Tok::kPlus) {
      plus.push_back(next().pos);
      branches.push_back(prefix());
    }
    const Sort sort = branches.front().label.sort();
    for (std::size_t i = 1; i < branches.size(); ++i) {
      if (branches[i].label.sort() != sort) {
        throw Error(ErrorKind::kSortMismatch,
                    "summand has sort " + to_string(branches[i].label.sort()) +
                        ", first summand has " + to_string(sort),
                    plus[i - 1]);
      }
    }
    return checked(Expr::sum(std::move(branches), sort), pos);
  }

  Branch prefix() {
    expect(Tok::kLAngle);
    Label label;
    label.left = action_vector();
    expect(Tok::kSlash);
    label.right = action_vector();
    expect(Tok::kRAngle);
    expect(Tok::kDot);
    return {std::move(label), atom()};
  }

  ActionVec action_vector() {
    ActionVec v;
    if (peek().kind != Tok::kIdent) return v;
    do {
      const Token& t = expect(Tok::kIdent);
      auto a = alphabet_->find(t.text);
      if (!a) {
        throw Error(ErrorKind::kUnknownName, "unknown action '" + t.text + "'",
                    t.pos);
      }
      v.push_back(*a);
    } while (accept(Tok::kComma));
    return v;
  }

  Expr atom() {
    const Token& t = peek();
    if (accept(Tok::kLParen)) {
      Expr e = expr();
      expect(Tok::kRParen);
      return e;
    }
    if (t.kind != Tok::kIdent) fail("an expression", t);
    if (t.text == "nil") {
      next();
      expect(Tok::kLBracket);
      Sort s;
      s.left = nat();
      expect(Tok::kComma);
      s.right = nat();
      expect(Tok::kRBracket);
      return Expr::nil(s);
    }
    if (t.text == "wire") return wire();
    if (t.text == "fix") return fix();
    if (auto w = builtin_wire_from_name(t.text)) {
      next();
      return mk_wire(builtin_relation(*w), *alphabet_);
    }
    if (keywords().count(t.text)) fail("an expression", t);
    const Token& name = next();
    for (auto scope = scopes_.rbegin(); scope != scopes_.rend(); ++scope) {
      if (auto it = scope->find(name.text); it != scope->end()) {
        return Expr::var(it->second);
      }
    }
    for (const Definition& d : defs_) {
      if (d.name == name.text) return d.body;
    }
    throw Error(ErrorKind::kUnknownName, "unknown process '" + name.text + "'",
                name.pos);
  }

  Expr wire() {
    const SourcePos pos = next().pos;
    WireRelation r;
    expect(Tok::kLBracket);
    r.sort.left = nat();
    expect(Tok::kArrow);
    r.sort.right = nat();
    expect(Tok::kRBracket);
    expect(Tok::kLBrace);
    if (peek().kind == Tok::kNat) {
      do {
        std::size_t i = nat();
        expect(Tok::kTilde);
        std::size_t j = nat();
        r.pairs.emplace_back(i, j);
      } while (accept(Tok::kComma));
    }
    expect(Tok::kRBrace);
    try {
      validate(r);
    } catch (const Error& e) {
      throw Error(e.kind(), e.message(), pos);
    }
    return mk_wire(r, *alphabet_);
  }

  // Binding headers are collected before any body is parsed so bodies can
  // refer to later bindings.
  Expr fix() {
    const SourcePos pos = next().pos;
    const Token& selector = expect(Tok::kIdent);
    expect(Tok::kLBrace);
    const std::size_t body_start = pos_;

    std::map<std::string, Var> scope;
    std::vector<Var> order;
    while (peek().kind != Tok::kRBrace) {
      const Token& name = binder_name();
      expect(Tok::kColon);
      Sort s;
      s.left = nat();
      expect(Tok::kArrow);
      s.right = nat();
      expect(Tok::kEquals);
      if (scope.count(name.text)) {
        throw Error(ErrorKind::kParseError,
                    "'" + name.text + "' bound twice in one fix", name.pos);
      }
      scope.emplace(name.text, Var{name.text, s});
      order.push_back(Var{name.text, s});
      skip_to_binding_end();
    }
    if (order.empty()) fail("a binding", peek());

    pos_ = body_start;
    scopes_.push_back(scope);
    std::vector<Binding> bindings;
    for (const Var& v : order) {
      binder_name();
      expect(Tok::kColon);
      nat();
      expect(Tok::kArrow);
      nat();
      expect(Tok::kEquals);
      const SourcePos body_pos = peek().pos;
      Expr body = expr();
      expect(Tok::kSemi);
      if (sort_of(body) != v.sort) {
        throw Error(ErrorKind::kSortMismatch,
                    "binding '" + v.name + "' declared " + to_string(v.sort) +
                        " but its body has sort " + to_string(sort_of(body)),
                    body_pos);
      }
      bindings.push_back({v, std::move(body)});
    }
    scopes_.pop_back();
    expect(Tok::kRBrace);

    auto it = std::find_if(order.begin(), order.end(),
                           [&](const Var& v) { return v.name == selector.text; });
    if (it == order.end()) {
      throw Error(ErrorKind::kUnknownName,
                  "fix selects '" + selector.text + "', which it does not bind",
                  selector.pos);
    }
    return checked(Expr::fix(it - order.begin(), std::move(bindings)), pos);
  }

  void skip_to_binding_end() {
    int depth = 0;
    while (true) {
      const Token& t = peek();
      switch (t.kind) {
        case Tok::kEnd:
          fail("';'", t);
        case Tok::kLBrace:
        case Tok::kLParen:
        case Tok::kLBracket:
          ++depth;
          break;
        case Tok::kRBrace:
        case Tok::kRParen:
        case Tok::kRBracket:
          if (depth == 0) fail("';'", t);
          --depth;
          break;
        case Tok::kSemi:
          if (depth == 0 && !starts_operand(1)) {
            next();
            return;
          }
          break;
        default:
          break;
      }
      next();
    }
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  const Alphabet* alphabet_;
  std::vector<Definition> defs_;
  std::vector<std::map<std::string, Var>> scopes_;
};

}  // namespace

bool is_keyword(std::string_view word) { return keywords().count(word) > 0; }

ModelFile parse_model(std::string_view text) {
  Parser p(tokenize(text), nullptr);
  return p.model();
}

Expr parse_expr(std::string_view text, const Alphabet& a,
                const std::vector<Definition>& defs) {
  Parser p(tokenize(text), &a);
  return p.single_expr(defs);
}

const Definition* ModelFile::find(std::string_view name) const {
  for (const Definition& d : definitions) {
    if (d.name == name) return &d;
  }
  return nullptr;
}

}  // namespace tcp
