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

#include "wikikb/rules/rules.h"

#include <exception>
#include <set>

#include "wikikb/embedded.h"
#include "wikikb/error.h"
#include "wikikb/rdf/vocab.h"
#include "wikikb/sparql/eval.h"
#include "wikikb/text.h"

namespace wikikb::rules {

using rdf::GraphStore;
using rdf::Term;

namespace {

void CheckInsertWhere(const std::string &name, const sparql::Query &q) {
  if (q.form != sparql::QueryForm::kInsertWhere) {
    throw InvalidArgumentError("rule " + name + " is not an INSERT ... WHERE");
  }
}

void CheckUnique(const RuleSet &set) {
  std::set<std::string> names;
  for (const Rule &r : set.rules) {
    if (!names.insert(r.name).second) throw InvalidArgumentError("duplicate rule name " + r.name);
  }
}

// The target must be visible to rule bodies even when it is not one of the
// standard warehouses.
std::vector<Term> BodyGraphs(const Term &target) {
  std::vector<Term> graphs = sparql::StandardDefaultGraphs();
  bool present = false;
  for (const Term &g : graphs) present = present || g == target;
  if (!present) graphs.push_back(target);
  return graphs;
}

void CheckTarget(const GraphStore &store, const Term &target) {
  if (!store.IsRegistered(target)) throw UnregisteredGraphError(target.value());
}

}  // namespace

Rule MakeRule(const std::string &name, std::string_view insert_where_text,
              const sparql::ParseOptions &options) {
  Rule r{name, sparql::ParseQuery(insert_where_text, options)};
  CheckInsertWhere(name, r.query);
  return r;
}

RuleSet ParseCatalog(std::string_view text, const Term &target_graph,
                     const sparql::ParseOptions &options) {
  struct Block {
    std::string name;
    std::size_t header_begin, body_begin, end;
  };
  std::vector<Block> blocks;
  std::size_t prologue_end = text.size();
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    std::size_t lead = line.find_first_not_of(" \t");
    std::string_view keyword = lead == std::string_view::npos ? std::string_view() : line.substr(lead, 5);
    if (keyword == "RULE" || keyword == "RULE " || keyword == "RULE\t" || keyword == "RULE\r") {
      std::string_view rest = line.substr(lead + 4);
      std::size_t b = rest.find_first_not_of(" \t");
      std::size_t e = rest.find_last_not_of(" \t\r");
      if (b == std::string_view::npos) {
        SourcePos p = PositionAt(text, pos + lead);
        throw ParseError("RULE without a name", p.line, p.column, pos + lead);
      }
      if (blocks.empty()) prologue_end = pos;
      if (!blocks.empty()) blocks.back().end = pos;
      blocks.push_back({std::string(rest.substr(b, e - b + 1)), pos, eol, text.size()});
    }
    pos = eol + 1;
  }

  RuleSet set;
  set.target_graph = target_graph;
  for (const Block &block : blocks) {
    // Everything outside the prologue and this block is blanked so that
    // reported positions are positions in the catalog.
    std::string masked(text);
    for (std::size_t i = prologue_end; i < masked.size(); ++i) {
      if ((i < block.body_begin || i >= block.end) && masked[i] != '\n') masked[i] = ' ';
    }
    Rule r{block.name, sparql::ParseQuery(masked, options)};
    CheckInsertWhere(r.name, r.query);
    set.rules.push_back(std::move(r));
  }
  CheckUnique(set);
  return set;
}

RuleSet RdfsLiteRuleset() {
  return ParseCatalog(embedded::k_rdfs_lite_rules, GraphStore::InferredGraph());
}

RuleSet NormalizationRuleset() {
  return ParseCatalog(embedded::k_normalization_rules, GraphStore::InferredGraph());
}

RuleSet TemporalRuleset() {
  return ParseCatalog(embedded::k_temporal_rules, GraphStore::InferredGraph());
}

std::vector<std::string> BuiltinRulesetNames() {
  return {"rdfs-lite", "normalization", "temporal", "all"};
}

RuleSet BuiltinRuleset(const std::string &name) {
  if (name == "rdfs-lite") return RdfsLiteRuleset();
  if (name == "normalization") return NormalizationRuleset();
  if (name == "temporal") return TemporalRuleset();
  if (name == "all") {
    RuleSet all = RdfsLiteRuleset();
    for (RuleSet part : {NormalizationRuleset(), TemporalRuleset()}) {
      for (Rule &r : part.rules) all.rules.push_back(std::move(r));
    }
    CheckUnique(all);
    return all;
  }
  throw NotFoundError("unknown rule set: " + name);
}

std::size_t ApplyRuleOnce(GraphStore &store, const Rule &rule, const Term &target_graph) {
  CheckTarget(store, target_graph);
  return sparql::ExecuteInsertWhere(store, rule.query, target_graph, BodyGraphs(target_graph));
}

FixpointReport RunFixpoint(GraphStore &store, const RuleSet &ruleset) {
  CheckTarget(store, ruleset.target_graph);
  const std::vector<Term> graphs = BodyGraphs(ruleset.target_graph);
  const std::size_t n = ruleset.rules.size();
  FixpointReport report;
  for (const Rule &r : ruleset.rules) report.added_per_rule[r.name] = 0;
  std::vector<std::vector<rdf::Triple>> derived(n);
  for (;;) {
    ++report.rounds;
    std::exception_ptr failure;
    const GraphStore &snapshot = store;
#pragma omp parallel for schedule(dynamic)
    for (std::size_t i = 0; i < n; ++i) {
      try {
        derived[i] = sparql::InsertCandidates(snapshot, ruleset.rules[i].query, graphs);
      } catch (...) {
#pragma omp critical(wikikb_fixpoint_failure)
        if (!failure) failure = std::current_exception();
      }
    }
    if (failure) std::rethrow_exception(failure);
    std::size_t added = 0;
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t count = 0;
      for (const rdf::Triple &t : derived[i]) {
        if (store.Insert(t, ruleset.target_graph)) ++count;
      }
      report.added_per_rule[ruleset.rules[i].name] += count;
      added += count;
    }
    report.total_added += added;
    if (added == 0) break;
  }
  return report;
}

FixpointReport RunFixpointSerial(GraphStore &store, const RuleSet &ruleset) {
  CheckTarget(store, ruleset.target_graph);
  FixpointReport report;
  for (const Rule &r : ruleset.rules) report.added_per_rule[r.name] = 0;
  for (;;) {
    ++report.rounds;
    std::size_t added = 0;
    for (const Rule &r : ruleset.rules) {
      std::size_t count = ApplyRuleOnce(store, r, ruleset.target_graph);
      report.added_per_rule[r.name] += count;
      added += count;
    }
    report.total_added += added;
    if (added == 0) break;
  }
  return report;
}

}  // namespace wikikb::rules
