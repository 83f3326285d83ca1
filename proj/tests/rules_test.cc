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

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "support.h"
#include "wikikb/error.h"
#include "wikikb/rdf/rdf_io.h"
#include "wikikb/rdf/vocab.h"
#include "wikikb/rules/rules.h"
#include "wikikb/sparql/parser.h"

namespace wikikb::rules {
namespace {

using rdf::GraphStore;
using rdf::Term;
using testing::BuildBeforeChain;
using testing::Chain;
using testing::Data;
using testing::Huto;

const Term kData = GraphStore::DataGraph();
const Term kInferred = GraphStore::InferredGraph();

const char *kTrans =
    "INSERT { ?x huto:before ?z } WHERE { ?x huto:before ?y . ?y huto:before ?z "
    "FILTER NOT EXISTS { ?x huto:before ?z } }";

RuleSet Single(const std::string &name, const std::string &text) {
  return {{MakeRule(name, text)}, kInferred};
}

std::vector<std::string> Dump(const GraphStore &s) {
  std::vector<std::string> out;
  for (const Term &g : s.graphs()) out.push_back(rdf::SerializeNTriples(s, g));
  return out;
}

TEST(ApplyRuleOnce, UnsatisfiableBodyAddsNothing) {
  GraphStore s;
  BuildBeforeChain(s, 3);
  Rule r = MakeRule("never", "INSERT { ?x <urn:p> ?y } WHERE { ?x <urn:nothing> ?y }");
  EXPECT_EQ(ApplyRuleOnce(s, r, kInferred), 0u);
  EXPECT_EQ(s.size(kInferred), 0u);
}

TEST(ApplyRuleOnce, TransitivityStep) {
  GraphStore s;
  s.Insert({Data("A"), Huto("before"), Data("B"), kData});
  s.Insert({Data("B"), Huto("before"), Data("C"), kData});
  Rule r = MakeRule("trans", kTrans);
  EXPECT_EQ(ApplyRuleOnce(s, r, kInferred), 1u);
  EXPECT_TRUE(s.Contains({Data("A"), Huto("before"), Data("C"), kInferred}));
  EXPECT_EQ(ApplyRuleOnce(s, r, kInferred), 0u);
  EXPECT_THROW(ApplyRuleOnce(s, r, Term::Iri("urn:unregistered")), UnregisteredGraphError);
}

TEST(RunFixpoint, EmptyRuleset) {
  GraphStore s;
  BuildBeforeChain(s, 4);
  auto before = Dump(s);
  FixpointReport rep = RunFixpoint(s, RuleSet{{}, kInferred});
  EXPECT_EQ(rep.rounds, 1u);
  EXPECT_EQ(rep.total_added, 0u);
  EXPECT_EQ(Dump(s), before);
}

TEST(RunFixpoint, FiveChainClosure) {
  GraphStore s;
  for (int i = 0; i + 1 < 5; ++i) {
    s.Insert({Data("n" + std::to_string(i)), Huto("before"), Data("n" + std::to_string(i + 1)), kData});
  }
  FixpointReport rep = RunFixpoint(s, Single("trans", kTrans));
  // C(5,2) pairs, four of them asserted.
  EXPECT_EQ(rep.total_added, 6u);
  EXPECT_EQ(rep.added_per_rule.at("trans"), 6u);
  auto asserted = testing::Pairs(s, Huto("before"), kData);
  auto all = asserted;
  for (const auto &p : testing::Pairs(s, Huto("before"), kInferred)) all.insert(p);
  EXPECT_EQ(all, testing::TransitiveClosure(asserted));
}

TEST(RunFixpoint, TemporalTriangleConvergesQuickly) {
  GraphStore s;
  Chain c = BuildBeforeChain(s, 3);
  FixpointReport rep = RunFixpoint(s, TemporalRuleset());
  EXPECT_GE(rep.rounds, 2u);
  for (const auto &level : {c.expressions, c.annotations, c.resources}) {
    EXPECT_TRUE(s.Contains({level[0], Huto("before"), level[2], kInferred}));
    EXPECT_TRUE(s.Contains({level[2], Huto("after"), level[0], kInferred}));
    EXPECT_TRUE(s.Contains({level[1], Huto("after"), level[0], kInferred}));
  }
  EXPECT_EQ(RunFixpoint(s, TemporalRuleset()).total_added, 0u);
}

TEST(RunFixpoint, RdfsLite) {
  GraphStore s;
  rdf::LoadRdf(s,
               "@prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .\n"
               "<urn:A> rdfs:subClassOf <urn:B> . <urn:B> rdfs:subClassOf <urn:C> .\n"
               "<urn:C> rdfs:subClassOf <urn:D> .\n"
               "<urn:x> a <urn:A> .\n"
               "<urn:p> rdfs:subPropertyOf <urn:q> . <urn:q> rdfs:subPropertyOf <urn:r> .\n"
               "<urn:x> <urn:p> <urn:y> .\n",
               rdf::RdfFormat::kTurtle, kData);
  RunFixpoint(s, RdfsLiteRuleset());
  const Term type = Term::Iri(vocab::kRdfType);
  const Term sc = Term::Iri(vocab::kRdfsSubClassOf);
  for (const char *cls : {"urn:B", "urn:C", "urn:D"}) {
    EXPECT_TRUE(s.Contains({Term::Iri("urn:x"), type, Term::Iri(cls), kInferred})) << cls;
  }
  EXPECT_TRUE(s.Contains({Term::Iri("urn:A"), sc, Term::Iri("urn:D"), kInferred}));
  EXPECT_TRUE(s.Contains({Term::Iri("urn:x"), Term::Iri("urn:r"), Term::Iri("urn:y"), kInferred}));
  // 3 subclass pairs, 3 types, 1 subproperty pair, 2 property uses.
  EXPECT_EQ(s.size(kInferred), 9u);
}

TEST(RunFixpoint, NormalizationOnVocabulary) {
  GraphStore s = testing::VocabStore();
  s.Insert({Data("Tamkharit"), Term::Iri(vocab::kRdfType), Huto("January"), kData});
  RunFixpoint(s, NormalizationRuleset());
  EXPECT_TRUE(s.Contains({Data("Tamkharit"), Huto("number"), Term::Integer(1), kInferred}));
  EXPECT_TRUE(s.Contains({Data("Tamkharit"), Huto("numberOfDay"), Term::Integer(31), kInferred}));
}

TEST(RunFixpoint, OnlyInferredWarehouseIsWritten) {
  GraphStore s = testing::VocabStore();
  BuildBeforeChain(s, 6);
  s.Insert({Data("Feb"), Term::Iri(vocab::kRdfType), Huto("February"), kData});
  std::vector<std::size_t> sizes;
  for (const Term &g : {kData, GraphStore::UscoGraph(), GraphStore::HutoGraph()}) sizes.push_back(s.size(g));
  FixpointReport rep = RunFixpoint(s, BuiltinRuleset("all"));
  EXPECT_GT(rep.total_added, 0u);
  std::vector<std::size_t> after;
  for (const Term &g : {kData, GraphStore::UscoGraph(), GraphStore::HutoGraph()}) after.push_back(s.size(g));
  EXPECT_EQ(sizes, after);
  EXPECT_EQ(s.size(kInferred), rep.total_added);
}

TEST(RunFixpoint, CustomTargetGraph) {
  GraphStore s;
  Term g = Term::Iri("urn:scratch");
  s.Insert({Data("A"), Huto("before"), Data("B"), kData});
  s.Insert({Data("B"), Huto("before"), Data("C"), kData});
  s.Insert({Data("C"), Huto("before"), Data("D"), kData});
  RuleSet set{{MakeRule("trans", kTrans)}, g};
  EXPECT_THROW(RunFixpoint(s, set), UnregisteredGraphError);
  s.RegisterGraph(g);
  // Needs the target's own output (A<C then A<D) to close.
  EXPECT_EQ(RunFixpoint(s, set).total_added, 3u);
  EXPECT_EQ(s.size(kInferred), 0u);
}

// Random stores mixing every rule family.
GraphStore RandomStore(std::mt19937 &rng) {
  GraphStore s = testing::VocabStore();
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  BuildBeforeChain(s, pick(2, 7), "c");
  const Term type = Term::Iri(vocab::kRdfType);
  const Term sc = Term::Iri(vocab::kRdfsSubClassOf);
  for (int i = 0; i < pick(0, 8); ++i) {
    s.Insert({Data("K" + std::to_string(pick(0, 4))), sc, Data("K" + std::to_string(pick(0, 4))), kData});
    s.Insert({Data("i" + std::to_string(pick(0, 4))), type, Data("K" + std::to_string(pick(0, 4))), kData});
  }
  const char *months[] = {"January", "February", "March", "December"};
  for (int i = 0; i < pick(0, 3); ++i) {
    s.Insert({Data("m" + std::to_string(i)), type, Huto(months[pick(0, 3)]), kData});
  }
  for (int i = 0; i < pick(0, 4); ++i) {
    Term d = Data("d" + std::to_string(i));
    s.Insert({Data("annotationc0"), Huto("hasTemporalExp"), d, kData});
    s.Insert({d, Huto("year"), Term::Integer(pick(2013, 2015)), kData});
    s.Insert({d, Huto("month"), Term::Integer(pick(1, 12)), kData});
    s.Insert({d, Huto("day"), Term::Integer(pick(1, 28)), kData});
  }
  return s;
}

TEST(RunFixpoint, SerialAndParallelAgree) {
  std::mt19937 rng(2024);
  RuleSet all = BuiltinRuleset("all");
  for (int i = 0; i < 12; ++i) {
    GraphStore a = RandomStore(rng);
    GraphStore b = a;
    FixpointReport pa = RunFixpoint(a, all);
    FixpointReport sb = RunFixpointSerial(b, all);
    ASSERT_EQ(Dump(a), Dump(b)) << "store " << i;
    EXPECT_EQ(pa.total_added, sb.total_added);
    EXPECT_GE(pa.rounds, sb.rounds);
  }
}

TEST(RunFixpoint, RuleOrderDoesNotMatter) {
  std::mt19937 rng(77);
  RuleSet all = BuiltinRuleset("all");
  for (int i = 0; i < 6; ++i) {
    GraphStore a = RandomStore(rng);
    GraphStore b = a;
    RuleSet shuffled = all;
    std::shuffle(shuffled.rules.begin(), shuffled.rules.end(), rng);
    RunFixpoint(a, all);
    RunFixpoint(b, shuffled);
    ASSERT_EQ(Dump(a), Dump(b));
  }
}

TEST(RunFixpoint, Idempotent) {
  std::mt19937 rng(3);
  GraphStore s = RandomStore(rng);
  RunFixpoint(s, BuiltinRuleset("all"));
  auto once = Dump(s);
  FixpointReport again = RunFixpoint(s, BuiltinRuleset("all"));
  EXPECT_EQ(again.total_added, 0u);
  EXPECT_EQ(again.rounds, 1u);
  EXPECT_EQ(Dump(s), once);
}

TEST(Catalog, ParsesBlocksAndPrefixes) {
  RuleSet set = ParseCatalog(
      "PREFIX ex: <http://ex.org/>\n\n"
      "RULE one\nINSERT { ?x ex:q ?y }\nWHERE { ?x ex:p ?y }\n\n"
      "RULE two\nINSERT { ?y ex:r ?x }\nWHERE { ?x ex:q ?y }\n",
      kInferred);
  ASSERT_EQ(set.rules.size(), 2u);
  EXPECT_EQ(set.rules[0].name, "one");
  EXPECT_EQ(set.rules[1].name, "two");
  EXPECT_EQ(set.rules[1].head().size(), 1u);
  EXPECT_EQ(std::get<rdf::Term>(set.rules[0].head()[0].predicate).value(), "http://ex.org/q");
}

TEST(Catalog, ErrorPositionsPointIntoTheCatalog) {
  std::string text = "RULE fine\nINSERT { ?x <urn:a> ?y }\nWHERE { ?x <urn:b> ?y }\n"
                     "RULE bad\nINSERT { ?x <urn:a> ?y }\nWHERE { ?x nope:q ?y }\n";
  try {
    ParseCatalog(text, kInferred);
    FAIL();
  } catch (const ParseError &e) {
    EXPECT_EQ(e.line(), 6u);
    EXPECT_EQ(e.column(), 12u);
    EXPECT_EQ(text.substr(e.offset(), 6), "nope:q");
  }
  try {
    ParseCatalog("RULE\nINSERT { ?x <urn:a> ?y } WHERE { ?x <urn:b> ?y }\n", kInferred);
    FAIL();
  } catch (const ParseError &e) {
    EXPECT_EQ(e.line(), 1u);
  }
}

TEST(Catalog, RejectsDuplicatesAndOtherForms) {
  EXPECT_THROW(ParseCatalog("RULE a\nINSERT { ?x <urn:a> ?y } WHERE { ?x <urn:b> ?y }\n"
                            "RULE a\nINSERT { ?x <urn:a> ?y } WHERE { ?x <urn:b> ?y }\n",
                            kInferred),
               InvalidArgumentError);
  EXPECT_THROW(MakeRule("sel", "SELECT * { ?s ?p ?o }"), InvalidArgumentError);
}

TEST(Builtins, NamesResolve) {
  for (const std::string &name : BuiltinRulesetNames()) {
    RuleSet set = BuiltinRuleset(name);
    EXPECT_FALSE(set.rules.empty()) << name;
    EXPECT_EQ(set.target_graph, kInferred);
  }
  EXPECT_EQ(BuiltinRuleset("all").rules.size(),
            RdfsLiteRuleset().rules.size() + NormalizationRuleset().rules.size() +
                TemporalRuleset().rules.size());
  EXPECT_THROW(BuiltinRuleset("owl-full"), NotFoundError);
}

}  // namespace
}  // namespace wikikb::rules
