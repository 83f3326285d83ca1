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

#include "wikikb/sparql/ast.h"

#include <algorithm>

namespace wikikb::sparql {

namespace {

void AddVar(const Node &node, std::vector<Variable> *out) {
  if (const auto *v = std::get_if<Variable>(&node)) {
    if (std::find(out->begin(), out->end(), *v) == out->end()) out->push_back(*v);
  }
}

void AddExpressionVars(const Expression &e, std::vector<Variable> *out) {
  if (e.kind == Expression::Kind::kLeaf) {
    AddVar(e.leaf, out);
    return;
  }
  for (const Expression &op : e.operands) AddExpressionVars(op, out);
}

void Collect(const GraphPattern &p, bool include_filters, std::vector<Variable> *out) {
  switch (p.kind) {
    case GraphPattern::Kind::kBasic:
      for (const TriplePattern &t : p.triples) {
        AddVar(t.subject, out);
        if (!t.path) AddVar(t.predicate, out);
        AddVar(t.object, out);
      }
      break;
    case GraphPattern::Kind::kFilterNotExists:
      if (include_filters) Collect(p.children[0], true, out);
      break;
    case GraphPattern::Kind::kFilter:
      if (include_filters) AddExpressionVars(p.expression, out);
      break;
    case GraphPattern::Kind::kGraph:
      AddVar(p.graph, out);
      Collect(p.children[0], include_filters, out);
      break;
    case GraphPattern::Kind::kValues:
      for (const Variable &v : p.values.variables) AddVar(v, out);
      break;
    case GraphPattern::Kind::kGroup:
    case GraphPattern::Kind::kOptional:
    case GraphPattern::Kind::kUnion:
      for (const GraphPattern &c : p.children) Collect(c, include_filters, out);
      break;
  }
}

}  // namespace

std::vector<Variable> InScopeVariables(const GraphPattern &pattern) {
  std::vector<Variable> out;
  Collect(pattern, false, &out);
  return out;
}

std::vector<Variable> AllVariables(const GraphPattern &pattern) {
  std::vector<Variable> out;
  Collect(pattern, true, &out);
  return out;
}

}  // namespace wikikb::sparql
