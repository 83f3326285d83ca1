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

#ifndef WIKIKB_RULES_RULES_H_
#define WIKIKB_RULES_RULES_H_

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "wikikb/rdf/store.h"
#include "wikikb/sparql/ast.h"
#include "wikikb/sparql/parser.h"

namespace wikikb::rules {

// An INSERT { head } WHERE { body } query. A NOT EXISTS guard, when present,
// is part of the body.
struct Rule {
  std::string name;
  sparql::Query query;

  const std::vector<sparql::TriplePattern> &head() const { return query.templ; }
  const sparql::GraphPattern &body() const { return *query.where; }
};

struct RuleSet {
  std::vector<Rule> rules;
  rdf::Term target_graph;
};

struct FixpointReport {
  std::size_t rounds = 0;
  std::map<std::string, std::size_t> added_per_rule;
  std::size_t total_added = 0;
};

// Builds a rule from its parts; throws ParseError / InvalidArgumentError.
Rule MakeRule(const std::string &name, std::string_view insert_where_text,
              const sparql::ParseOptions &options = sparql::ParseOptions::Standard());

// Catalog syntax: optional PREFIX lines, then blocks of
//   RULE <name>
//   INSERT { ... }
//   WHERE { ... }
// Parse errors report positions in the catalog text.
RuleSet ParseCatalog(std::string_view text, const rdf::Term &target_graph,
                     const sparql::ParseOptions &options = sparql::ParseOptions::Standard());

RuleSet RdfsLiteRuleset();
RuleSet NormalizationRuleset();
RuleSet TemporalRuleset();

// "rdfs-lite", "normalization", "temporal" and "all" (the three combined).
std::vector<std::string> BuiltinRulesetNames();
// Throws NotFoundError for an unknown name.
RuleSet BuiltinRuleset(const std::string &name);

// Single application; returns the number of new quads in `target_graph`.
std::size_t ApplyRuleOnce(rdf::GraphStore &store, const Rule &rule,
                          const rdf::Term &target_graph);

// Rounds until one adds nothing. Each round evaluates every rule body against
// the same snapshot in parallel, then inserts the results in rule order.
FixpointReport RunFixpoint(rdf::GraphStore &store, const RuleSet &ruleset);

// Reference implementation: rules applied one after another, each seeing the
// previous rule's output.
FixpointReport RunFixpointSerial(rdf::GraphStore &store, const RuleSet &ruleset);

}  // namespace wikikb::rules

#endif  // WIKIKB_RULES_RULES_H_
