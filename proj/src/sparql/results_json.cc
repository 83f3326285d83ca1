// Copyright 2026 The WikiKB Authors.
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

#include "wikikb/sparql/results_json.h"

#include <map>

#include <json.hpp>

#include "wikikb/error.h"
#include "wikikb/rdf/vocab.h"

namespace wikikb::sparql {

using json = nlohmann::json;
using rdf::Term;

namespace {

json EncodeTerm(const Term &t) {
  json j;
  switch (t.kind()) {
    case rdf::TermKind::kIri:
      j["type"] = "uri";
      break;
    case rdf::TermKind::kBlank:
      j["type"] = "bnode";
      break;
    case rdf::TermKind::kLiteral:
      j["type"] = "literal";
      if (!t.lang().empty()) {
        j["xml:lang"] = t.lang();
      } else if (t.datatype() != vocab::kXsdString) {
        j["datatype"] = t.datatype();
      }
      break;
  }
  j["value"] = t.value();
  return j;
}

[[noreturn]] void Malformed(const std::string &why) {
  throw MalformedResponseError("malformed SPARQL results: " + why);
}

std::string StringField(const json &obj, const char *key) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_string()) Malformed(std::string("missing string field ") + key);
  return it->get<std::string>();
}

Term DecodeTerm(const json &j) {
  if (!j.is_object()) Malformed("binding is not an object");
  std::string type = StringField(j, "type");
  std::string value = StringField(j, "value");
  try {
    if (type == "uri") return Term::Iri(value);
    if (type == "bnode") return Term::Blank(value);
    if (type == "literal" || type == "typed-literal") {
      if (j.contains("xml:lang")) return Term::LangString(value, StringField(j, "xml:lang"));
      if (j.contains("datatype")) return Term::Typed(value, StringField(j, "datatype"));
      return Term::Literal(value);
    }
  } catch (const InvalidArgumentError &e) {
    Malformed(e.what());
  }
  Malformed("unknown term type " + type);
}

}  // namespace

std::string EncodeResultsJson(const SolutionSet &solutions) {
  json vars = json::array();
  for (const Variable &v : solutions.variables) vars.push_back(v.name);
  json bindings = json::array();
  for (const auto &row : solutions.rows) {
    json b = json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (row[i]) b[solutions.variables[i].name] = EncodeTerm(*row[i]);
    }
    bindings.push_back(std::move(b));
  }
  json doc = {{"head", {{"vars", vars}}}, {"results", {{"bindings", bindings}}}};
  return doc.dump();
}

SolutionSet DecodeResultsJson(std::string_view body) {
  json doc = json::parse(body, nullptr, false);
  if (doc.is_discarded()) Malformed("not valid JSON");
  if (!doc.is_object()) Malformed("top level is not an object");
  auto head = doc.find("head");
  if (head == doc.end() || !head->is_object()) Malformed("missing head");
  auto vars = head->find("vars");
  if (vars == head->end() || !vars->is_array()) Malformed("missing head.vars");
  auto results = doc.find("results");
  if (results == doc.end() || !results->is_object()) Malformed("missing results");
  auto bindings = results->find("bindings");
  if (bindings == results->end() || !bindings->is_array()) Malformed("missing results.bindings");

  SolutionSet out;
  std::map<std::string, std::size_t> column;
  for (const json &v : *vars) {
    if (!v.is_string()) Malformed("variable name is not a string");
    if (column.emplace(v.get<std::string>(), out.variables.size()).second) {
      out.variables.push_back(Variable{v.get<std::string>()});
    }
  }
  for (const json &b : *bindings) {
    if (!b.is_object()) Malformed("solution is not an object");
    std::vector<std::optional<Term>> row(out.variables.size());
    for (const auto &[name, value] : b.items()) {
      auto it = column.find(name);
      if (it == column.end()) Malformed("binding for undeclared variable " + name);
      row[it->second] = DecodeTerm(value);
    }
    out.rows.push_back(std::move(row));
  }
  return out;
}

}  // namespace wikikb::sparql
