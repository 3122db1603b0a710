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

#include <json.hpp>
#include <set>

#include "tcp/syntax.hpp"

namespace tcp {
namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void schema(const std::string& what) {
  throw Error(ErrorKind::kSchemaError, what);
}

const Json& field(const Json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) {
    schema(std::string("missing field '") + key + "'");
  }
  return obj.at(key);
}

std::size_t natural(const Json& j, const char* what) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0)) {
    schema(std::string(what) + " must be a natural number");
  }
  return j.get<std::size_t>();
}

std::string state_id(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_unsigned() || (j.is_number_integer() && j.get<long long>() >= 0)) {
    return std::to_string(j.get<std::size_t>());
  }
  schema("state ids must be strings or natural numbers");
}

ActionVec actions(const Json& j, const Alphabet& a, std::size_t arity,
                  const char* side) {
  if (!j.is_array()) schema(std::string("label.") + side + " must be an array");
  if (j.size() != arity) {
    schema(std::string("label.") + side + " has " + std::to_string(j.size()) +
           " actions, sort requires " + std::to_string(arity));
  }
  ActionVec out;
  for (const Json& x : j) {
    if (!x.is_string()) schema("actions must be strings");
    auto act = a.find(x.get<std::string>());
    if (!act) {
      throw Error(ErrorKind::kUnknownAction,
                  "action '" + x.get<std::string>() + "' not in alphabet");
    }
    out.push_back(*act);
  }
  return out;
}

Json names(const ActionVec& v, const Alphabet& a) {
  Json out = Json::array();
  for (Action x : v) out.push_back(a.name(x));
  return out;
}

std::string dot_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

std::string lts_to_json(const Lts& t) {
  Json doc;
  doc["left"] = t.sort().left;
  doc["right"] = t.sort().right;
  doc["alphabet"] = t.alphabet().names();
  doc["states"] = t.state_ids();
  doc["initial"] = t.state_id(t.initial());
  Json transitions = Json::array();
  for (const Transition& tr : t.transitions()) {
    Json label;
    label["left"] = names(tr.label.left, t.alphabet());
    label["right"] = names(tr.label.right, t.alphabet());
    Json j;
    j["from"] = t.state_id(tr.from);
    j["label"] = std::move(label);
    j["to"] = t.state_id(tr.to);
    transitions.push_back(std::move(j));
  }
  doc["transitions"] = std::move(transitions);
  if (!t.payload().empty()) {
    Json payload = Json::object();
    for (std::size_t s = 0; s < t.num_states(); ++s) {
      payload[t.state_id(s)] = t.payload()[s];
    }
    doc["payload"] = std::move(payload);
  }
  return doc.dump(2) + "\n";
}

Lts json_to_lts(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::kParseError, e.what());
  }
  if (!doc.is_object()) schema("top level must be an object");
  Sort sort{natural(field(doc, "left"), "left"),
            natural(field(doc, "right"), "right")};

  const Json& alpha = field(doc, "alphabet");
  if (!alpha.is_array()) schema("alphabet must be an array");
  std::vector<std::string> action_names;
  for (const Json& x : alpha) {
    if (!x.is_string()) schema("alphabet entries must be strings");
    action_names.push_back(x.get<std::string>());
  }
  Alphabet a(std::move(action_names));

  const Json& states = field(doc, "states");
  if (!states.is_array()) schema("states must be an array");
  std::vector<std::string> ids;
  std::map<std::string, std::size_t> index;
  for (const Json& x : states) {
    ids.push_back(state_id(x));
    if (!index.emplace(ids.back(), ids.size() - 1).second) {
      schema("duplicate state '" + ids.back() + "'");
    }
  }
  auto lookup = [&](const Json& j) {
    auto it = index.find(state_id(j));
    if (it == index.end()) schema("unknown state '" + state_id(j) + "'");
    return it->second;
  };
  const std::size_t initial = lookup(field(doc, "initial"));

  const Json& trans = field(doc, "transitions");
  if (!trans.is_array()) schema("transitions must be an array");
  std::vector<Transition> transitions;
  std::set<Transition> seen;
  for (const Json& j : trans) {
    const Json& label = field(j, "label");
    Transition tr{lookup(field(j, "from")),
                  Label{actions(field(label, "left"), a, sort.left, "left"),
                        actions(field(label, "right"), a, sort.right, "right")},
                  lookup(field(j, "to"))};
    if (!seen.insert(tr).second) {
      schema("duplicate transition from '" + ids[tr.from] + "' to '" +
             ids[tr.to] + "'");
    }
    transitions.push_back(std::move(tr));
  }

  std::vector<std::string> payload;
  if (doc.contains("payload")) {
    const Json& p = doc.at("payload");
    if (!p.is_object()) schema("payload must be an object");
    for (const std::string& id : ids) {
      if (!p.contains(id) || !p.at(id).is_string()) {
        schema("payload lacks a string for state '" + id + "'");
      }
      payload.push_back(p.at(id).get<std::string>());
    }
    if (p.size() != ids.size()) schema("payload names unknown states");
  }
  return Lts(std::move(a), sort, std::move(ids), initial,
             std::move(transitions), std::move(payload));
}

std::string lts_to_dot(const Lts& t) {
  std::string out = "digraph lts {\n  rankdir=LR;\n  node [shape=circle];\n";
  for (std::size_t s = 0; s < t.num_states(); ++s) {
    out += "  \"" + dot_escape(t.state_id(s)) + "\"";
    std::string attrs;
    if (s == t.initial()) attrs += "shape=doublecircle";
    if (!t.payload().empty()) {
      if (!attrs.empty()) attrs += ", ";
      attrs += "tooltip=\"" + dot_escape(t.payload()[s]) + "\"";
    }
    if (!attrs.empty()) out += " [" + attrs + "]";
    out += ";\n";
  }
  for (const Transition& tr : t.transitions()) {
    out += "  \"" + dot_escape(t.state_id(tr.from)) + "\" -> \"" +
           dot_escape(t.state_id(tr.to)) + "\" [label=\"" +
           dot_escape(to_string(tr.label, t.alphabet())) + "\"];\n";
  }
  out += "}\n";
  return out;
}

}  // namespace tcp
