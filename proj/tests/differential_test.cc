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

#include <random>

#include "brute_force.h"
#include "random_case.h"
#include "wikikb/rdf/rdf_io.h"
#include "wikikb/sparql/eval.h"
#include "wikikb/sparql/parser.h"

namespace wikikb {
namespace {

std::string Dump(const oracle::RandomCase &c) {
  std::string out = c.query + "\n--\n";
  for (const rdf::Quad &q : c.quads) {
    out += q.subject.ToNTriples() + ' ' + q.predicate.ToNTriples() + ' ' + q.object.ToNTriples() +
           ' ' + q.graph.ToNTriples() + '\n';
  }
  return out;
}

class Differential : public ::testing::TestWithParam<unsigned> {};

// Evaluator and brute-force enumeration return the same multiset of rows.
TEST_P(Differential, EvaluatorMatchesOracle) {
  std::mt19937 rng(GetParam());
  int parse_failures = 0;
  for (int i = 0; i < 100; ++i) {
    oracle::RandomCase c = oracle::GenerateCase(rng);
    rdf::GraphStore store = oracle::BuildStore(c.quads);
    sparql::Query q;
    try {
      q = sparql::ParseQuery(c.query);
    } catch (const ParseError &e) {
      ++parse_failures;
      ADD_FAILURE() << e.what() << "\n" << c.query;
      continue;
    }
    auto got = oracle::Canonical(oracle::ToBindings(sparql::EvaluateSelect(store, q)));
    auto want = oracle::Canonical(oracle::Select(oracle::GraphsOf(store), q));
    ASSERT_EQ(got, want) << Dump(c) << "\nevaluator:\n"
                         << oracle::Describe(got) << "oracle:\n"
                         << oracle::Describe(want);
  }
  EXPECT_EQ(parse_failures, 0);
}

INSTANTIATE_TEST_SUITE_P(Seeds, Differential, ::testing::Values(1u, 7u, 42u, 1234u, 99991u));

TEST(DifferentialGenerator, StaysWithinBounds) {
  std::mt19937 rng(5);
  for (int i = 0; i < 200; ++i) {
    oracle::RandomCase c = oracle::GenerateCase(rng);
    EXPECT_LE(c.quads.size(), 30u);
    EXPECT_NO_THROW(oracle::BuildStore(c.quads));
  }
}

}  // namespace
}  // namespace wikikb
