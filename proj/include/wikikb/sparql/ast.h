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

#ifndef WIKIKB_SPARQL_AST_H_
#define WIKIKB_SPARQL_AST_H_

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "wikikb/rdf/term.h"

namespace wikikb::sparql {

// Query variable. Blank nodes in patterns become variables named "_:label",
// which are never projected.
struct Variable {
  std::string name;

  bool is_blank() const { return name.rfind("_:", 0) == 0; }

  friend auto operator<=>(const Variable &, const Variable &) = default;
  friend bool operator==(const Variable &, const Variable &) = default;
};

using Node = std::variant<Variable, rdf::Term>;

// Forward-IRI property paths: sequence (/) and alternative (|).
struct PropertyPath {
  enum class Kind { kLink, kSequence, kAlternative };

  Kind kind = Kind::kLink;
  rdf::Term iri;                    // kLink
  std::vector<PropertyPath> parts;  // kSequence, kAlternative
};

struct TriplePattern {
  Node subject;
  Node predicate;                    // meaningful when `path` is empty
  std::optional<PropertyPath> path;  // set for sequence/alternative paths
  Node object;
};

// Comparison filter expression (used by the date-ordering rules).
struct Expression {
  enum class Kind { kLeaf, kAnd, kOr, kNot, kEq, kNe, kLt, kLe, kGt, kGe };

  Kind kind = Kind::kLeaf;
  Node leaf;
  std::vector<Expression> operands;
};

struct ValuesBlock {
  std::vector<Variable> variables;
  // nullopt entries are UNDEF.
  std::vector<std::vector<std::optional<rdf::Term>>> rows;
};

struct GraphPattern {
  enum class Kind {
    kBasic,            // triples
    kGroup,            // children, filters apply to the whole group
    kOptional,         // children[0]
    kUnion,            // children[0], children[1]
    kFilterNotExists,  // children[0]
    kFilter,           // expression
    kGraph,            // graph, children[0]
    kValues,           // values
  };

  Kind kind = Kind::kGroup;
  std::vector<TriplePattern> triples;
  std::vector<GraphPattern> children;
  Node graph;
  Expression expression;
  ValuesBlock values;
};

enum class QueryForm { kSelect, kConstruct, kDescribe, kInsertWhere };

struct Query {
  QueryForm form = QueryForm::kSelect;
  // Prefixes declared in the query text itself.
  std::map<std::string, std::string> prefixes;

  bool select_all = false;          // SELECT * / DESCRIBE *
  std::vector<Variable> projection;  // select
  std::vector<TriplePattern> templ;  // construct, insert
  std::vector<Node> describe_targets;

  std::optional<GraphPattern> where;  // absent only for DESCRIBE <iri>
  std::optional<ValuesBlock> values;  // trailing VALUES clause
};

// Variables a pattern can bind, in order of first appearance. Variables that
// occur only inside FILTER are excluded.
std::vector<Variable> InScopeVariables(const GraphPattern &pattern);

// Every variable occurring anywhere in the pattern, filters included.
std::vector<Variable> AllVariables(const GraphPattern &pattern);

}  // namespace wikikb::sparql

#endif  // WIKIKB_SPARQL_AST_H_
