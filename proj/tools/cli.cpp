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

#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>

#include "tcp/lts.hpp"
#include "tcp/sos.hpp"
#include "tcp/syntax.hpp"
#include "tcp/verify.hpp"

namespace tcp::cli {
namespace {

struct Options {
  std::string file;
  std::string second;
  std::string def;
  std::string format = "json";
  std::string state;
  std::string out_path;
  std::size_t max_states = kDefaultMaxStates;
  std::uint64_t seed = 0;
  std::size_t samples = 200;
  bool builtin = false;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void emit(const Options& o, std::ostream& out, const std::string& text) {
  if (o.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(o.out_path, std::ios::binary);
  if (!f) throw UsageError("cannot write '" + o.out_path + "'");
  f << text;
}

const Definition& definition(const ModelFile& m, const Options& o) {
  if (o.def.empty()) {
    if (m.definitions.empty()) throw UsageError("model has no definitions");
    return m.definitions.back();
  }
  const Definition* d = m.find(o.def);
  if (!d) throw Error(ErrorKind::kUnknownName, "no definition '" + o.def + "'");
  return *d;
}

int cmd_parse(const Options& o, std::ostream& out) {
  ModelFile m = parse_model(read_file(o.file));
  std::string text;
  for (const Definition& d : m.definitions) {
    text += d.name + " : " + to_string(d.sort) + "\n";
  }
  emit(o, out, text);
  return kOk;
}

int cmd_steps(const Options& o, std::ostream& out) {
  ModelFile m = parse_model(read_file(o.file));
  const Definition& d = definition(m, o);
  std::string text;
  for (const Step& s : step(d.body)) {
    text += to_string(s.label, m.alphabet) + " -> " +
            print_expr(s.target, m.alphabet) + "\n";
  }
  emit(o, out, text);
  return kOk;
}

int cmd_sem(const Options& o, std::ostream& out) {
  ModelFile m = parse_model(read_file(o.file));
  const Definition& d = definition(m, o);
  Lts t = sem(d.body, m.alphabet, o.max_states);
  emit(o, out, o.format == "dot" ? lts_to_dot(t) : lts_to_json(t));
  return kOk;
}

int cmd_analyze(const Options& o, std::ostream& out) {
  ModelFile m = parse_model(read_file(o.file));
  const Definition& d = definition(m, o);
  Lts t = sem(d.body, m.alphabet, o.max_states);
  std::ostringstream text;
  text << "states: " << t.num_states() << "\n";
  text << "transitions: " << t.transitions().size() << "\n";
  const std::vector<std::size_t> dead = deadlocks(t);
  text << "deadlocks: " << dead.size() << "\n";
  for (std::size_t s : dead) {
    text << "  state " << t.state_id(s) << ": " << t.payload()[s] << "\n";
  }
  text << "return paths to initial state " << t.state_id(t.initial()) << ":\n";
  for (std::size_t s = 0; s < t.num_states(); ++s) {
    if (s == t.initial()) continue;
    auto path = find_path(t, s, t.initial());
    text << "  state " << t.state_id(s) << ": ";
    if (path) {
      text << path->size() << (path->size() == 1 ? " step" : " steps");
    } else {
      text << "none";
    }
    text << "\n";
  }
  emit(o, out, text.str());
  return dead.empty() ? kOk : kViolation;
}

int cmd_iso(const Options& o, std::ostream& out) {
  Lts a = json_to_lts(read_file(o.file));
  Lts b = json_to_lts(read_file(o.second));
  std::string text;
  int code = kOk;
  if (auto theta = isomorphic(a, b)) {
    text = "isomorphic\n";
    for (std::size_t s = 0; s < a.num_states(); ++s) {
      text += "  " + a.state_id(s) + " -> " + b.state_id((*theta)[s]) + "\n";
    }
  } else {
    LawReport r = compare_lts("iso", {o.file, o.second}, a, b);
    text = "not isomorphic\n  " + r.witness + "\n";
    code = kViolation;
  }
  emit(o, out, text);
  return code;
}

int cmd_synth(const Options& o, std::ostream& out) {
  Lts t = json_to_lts(read_file(o.file));
  std::size_t s = t.initial();
  if (!o.state.empty()) {
    auto found = t.find_state(o.state);
    if (!found) throw Error(ErrorKind::kUnknownState, "no state '" + o.state + "'");
    s = *found;
  }
  ModelFile m{t.alphabet(), {}};
  const std::string name = o.def.empty() ? "Synth" : o.def;
  m.definitions.push_back({name, t.sort(), synth_expr(t, s), {}});
  emit(o, out, print_model(m));
  return kOk;
}

std::vector<LawReport> builtin_checks(const Options& o) {
  std::vector<LawReport> reports;
  const ModelFile phil = parse_model(bundled_models()[0].second);
  const Alphabet& a = phil.alphabet;
  for (LawReport& r : check_wire_laws(a)) reports.push_back(std::move(r));

  const Expr& ph = phil.find("Ph")->body;
  const Expr& fk = phil.find("Fk")->body;
  reports.push_back(check_prop2_star(ph, fk, a, o.max_states));
  reports.push_back(check_prop2_tensor(ph, fk, a, o.max_states));
  reports.push_back(check_assoc(ph, fk, ph, Composition::kStar, a, o.max_states));
  reports.push_back(check_assoc(ph, fk, ph, Composition::kTensor, a, o.max_states));

  const Alphabet small({"tau", "a"});
  TermGenerator gen(small, o.seed);
  for (std::size_t i = 0; i < o.samples; ++i) {
    const Sort ps = gen.sort();
    const Sort qs{ps.right, gen.sort().right};
    Expr p = gen.term(ps, 3);
    Expr q = gen.term(qs, 3);
    reports.push_back(check_prop2_star(p, q, small, o.max_states));
    reports.push_back(check_prop2_tensor(p, q, small, o.max_states));
  }
  for (std::size_t i = 0; i < o.samples / 2; ++i) {
    const Sort s1 = gen.sort();
    const Sort s2{s1.right, gen.sort().right};
    const Sort s3{s2.right, gen.sort().right};
    Expr p = gen.term(s1, 2);
    Expr q = gen.term(s2, 2);
    Expr r = gen.term(s3, 2);
    reports.push_back(check_assoc(p, q, r, Composition::kStar, small, o.max_states));
    reports.push_back(check_assoc(p, q, r, Composition::kTensor, small, o.max_states));
  }
  std::mt19937_64 rng(o.seed);
  for (std::size_t i = 0; i < o.samples / 2; ++i) {
    Lts t = random_lts(rng);
    const std::size_t s = std::uniform_int_distribution<std::size_t>(
        0, t.num_states() - 1)(rng);
    reports.push_back(check_synth(t, s, o.max_states));
  }
  return reports;
}

std::vector<LawReport> file_checks(const ModelFile& m, const Options& o) {
  std::vector<LawReport> reports = check_wire_laws(m.alphabet);
  for (const Definition& p : m.definitions) {
    for (const Definition& q : m.definitions) {
      reports.push_back(check_prop2_tensor(p.body, q.body, m.alphabet, o.max_states));
      reports.back().operands = {p.name, q.name};
      if (p.sort.right == q.sort.left) {
        reports.push_back(check_prop2_star(p.body, q.body, m.alphabet, o.max_states));
        reports.back().operands = {p.name, q.name};
      }
    }
  }
  return reports;
}

int cmd_verify(const Options& o, std::ostream& out) {
  if (o.file.empty() && !o.builtin) {
    throw UsageError("verify needs a model file or --builtin");
  }
  std::vector<LawReport> reports;
  std::optional<Alphabet> alphabet;
  if (!o.file.empty()) {
    ModelFile m = parse_model(read_file(o.file));
    reports = file_checks(m, o);
    alphabet = m.alphabet;
  }
  if (o.builtin) {
    for (LawReport& r : builtin_checks(o)) reports.push_back(std::move(r));
    if (!alphabet) alphabet = Alphabet({"tau", "l", "u"});
  }
  const std::size_t failures = std::count_if(
      reports.begin(), reports.end(), [](const LawReport& r) { return !r.holds; });
  std::string text;
  if (o.format == "json") {
    text = to_json(reports, *alphabet);
  } else {
    for (const LawReport& r : reports) text += to_text(r) + "\n";
    text += std::to_string(reports.size()) + " checks, " +
            std::to_string(failures) + " failed\n";
  }
  emit(o, out, text);
  return failures == 0 ? kOk : kViolation;
}

int cmd_examples(const Options& o, std::ostream& out) {
  if (o.file.empty()) {
    std::string text;
    for (const auto& [name, body] : bundled_models()) text += std::string(name) + "\n";
    emit(o, out, text);
    return kOk;
  }
  for (const auto& [name, body] : bundled_models()) {
    if (name == o.file || name == o.file + ".tcp") {
      emit(o, out, std::string(body));
      return kOk;
    }
  }
  throw UsageError("no bundled example '" + o.file + "'");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  Options o;
  CLI::App app{"Engine for the TCP process algebra", "tcp"};
  app.require_subcommand(1);

  auto max_states = [&](CLI::App* sub) {
    sub->add_option("--max-states", o.max_states, "state bound for exploration")
        ->check(CLI::PositiveNumber);
  };
  auto out_path = [&](CLI::App* sub) {
    sub->add_option("--out", o.out_path, "write output to PATH");
  };

  auto* parse = app.add_subcommand("parse", "check a model and list its definitions");
  parse->add_option("file", o.file)->required();
  out_path(parse);

  auto* steps = app.add_subcommand("steps", "print the one-step transitions of a definition");
  steps->add_option("file", o.file)->required();
  steps->add_option("--def", o.def, "definition (default: last)");
  out_path(steps);

  auto* semc = app.add_subcommand("sem", "reachable transition system of a definition");
  semc->add_option("file", o.file)->required();
  semc->add_option("--def", o.def, "definition (default: last)");
  semc->add_option("--format", o.format)->check(CLI::IsMember({"json", "dot"}));
  max_states(semc);
  out_path(semc);

  auto* analyze = app.add_subcommand("analyze", "deadlocks and return paths");
  analyze->add_option("file", o.file)->required();
  analyze->add_option("--def", o.def, "definition (default: last)");
  max_states(analyze);
  out_path(analyze);

  auto* iso = app.add_subcommand("iso", "compare two LTS JSON files");
  iso->add_option("a", o.file)->required();
  iso->add_option("b", o.second)->required();
  out_path(iso);

  auto* synth = app.add_subcommand("synth", "build a term whose semantics is a given LTS");
  synth->add_option("file", o.file)->required();
  synth->add_option("--state", o.state, "start state id (default: initial)");
  synth->add_option("--def", o.def, "name of the generated definition");
  out_path(synth);

  auto* verify = app.add_subcommand("verify", "check compositionality and wire laws");
  verify->add_option("file", o.file);
  verify->add_flag("--builtin", o.builtin, "run the bundled and randomized corpus");
  verify->add_option("--seed", o.seed, "seed for randomized corpora");
  verify->add_option("--samples", o.samples, "random term pairs");
  verify->add_option("--format", o.format)->check(CLI::IsMember({"text", "json"}));
  max_states(verify);
  out_path(verify);

  auto* examples = app.add_subcommand("examples", "list or print bundled models");
  examples->add_option("name", o.file);
  out_path(examples);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  }
  if (verify->parsed() && verify->count("--format") == 0) o.format = "text";

  try {
    if (parse->parsed()) return cmd_parse(o, out);
    if (steps->parsed()) return cmd_steps(o, out);
    if (semc->parsed()) return cmd_sem(o, out);
    if (analyze->parsed()) return cmd_analyze(o, out);
    if (iso->parsed()) return cmd_iso(o, out);
    if (synth->parsed()) return cmd_synth(o, out);
    if (verify->parsed()) return cmd_verify(o, out);
    if (examples->parsed()) return cmd_examples(o, out);
  } catch (const StateBoundExceeded& e) {
    err << e.what() << "\n";
    return kResource;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return e.kind() == ErrorKind::kDepthExceeded ? kResource : kUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace tcp::cli
