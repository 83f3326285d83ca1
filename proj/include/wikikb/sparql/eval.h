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

#ifndef WIKIKB_SPARQL_EVAL_H_
#define WIKIKB_SPARQL_EVAL_H_

#include <optional>
#include <string>
#include <vector>

#include "wikikb/rdf/store.h"
#include "wikikb/sparql/ast.h"

namespace wikikb::sparql {

// Multiset of (possibly partial) solutions. Row i, column j binds
// variables[j]; nullopt means unbound.
struct SolutionSet {
  std::vector<Variable> variables;
  std::vector<std::vector<std::optional<rdf::Term>>> rows;
};

// data + inferred + usco + huto.
const std::vector<rdf::Term> &StandardDefaultGraphs();

// The default graph is the set union (duplicates merged) of
// `default_graphs`; an empty list means StandardDefaultGraphs(). GRAPH ?g
// ranges over every registered graph.
//
// Bag semantics: UNION concatenates; a sequence path behaves as a join over a
// fresh intermediate variable; an alternative path as a union.
SolutionSet EvaluateSelect(const rdf::GraphStore &store, const Query &query,
                           const std::vector<rdf::Term> &default_graphs = {});

// Template instances of every solution; instances with an unbound variable or
// an ill-formed shape are dropped. Sorted, duplicate free.
std::vector<rdf::Triple> EvaluateConstruct(const rdf::GraphStore &store, const Query &query,
                                           const std::vector<rdf::Term> &default_graphs = {});

// Concise bounded description of each describe target: the outgoing triples
// of the node, recursing through blank-node objects. Sorted, duplicate free.
std::vector<rdf::Triple> EvaluateDescribe(const rdf::GraphStore &store, const Query &query,
                                          const std::vector<rdf::Term> &default_graphs = {});

// Outgoing closure used by DESCRIBE for a single node.
std::vector<rdf::Triple> ConciseBoundedDescription(
    const rdf::GraphStore &store, const rdf::Term &node,
    const std::vector<rdf::Term> &default_graphs = {});

// INSERT ... WHERE: instantiates the template like CONSTRUCT and inserts the
// triples into `target`. Returns the number of new quads. Throws
// UnregisteredGraphError.
std::size_t ExecuteInsertWhere(rdf::GraphStore &store, const Query &query,
                               const rdf::Term &target,
                               const std::vector<rdf::Term> &default_graphs = {});

// Read-only half of ExecuteInsertWhere: the triples the update would write.
std::vector<rdf::Triple> InsertCandidates(const rdf::GraphStore &store, const Query &query,
                                          const std::vector<rdf::Term> &default_graphs = {});

}  // namespace wikikb::sparql

#endif  // WIKIKB_SPARQL_EVAL_H_
