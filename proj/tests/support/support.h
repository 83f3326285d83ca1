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

#ifndef WIKIKB_TESTS_SUPPORT_SUPPORT_H_
#define WIKIKB_TESTS_SUPPORT_SUPPORT_H_

#include <chrono>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "wikikb/huto/temporal.h"
#include "wikikb/rdf/store.h"
#include "wikikb/service/repository.h"

namespace wikikb::testing {

std::string FixturePath(const std::string &relative);
std::string ReadFixture(const std::string &relative);
std::string SourcePath(const std::string &relative);

// Fresh store with the bundled huto and usco vocabularies loaded from vocab/.
rdf::GraphStore VocabStore();

rdf::Term Huto(const std::string &local);
rdf::Term Data(const std::string &local);  // page namespace under the default base

// N-Triples lines with every blank node replaced by a structural signature of
// its outgoing description, so graphs equal up to blank relabeling compare
// equal (the descriptions used in tests are trees).
std::multiset<std::string> CanonicalLines(const std::vector<rdf::Triple> &triples);
std::vector<rdf::Triple> ParseNTriples(const std::string &text);

// k annotations a0..a(k-1); annotation i carries expression e_i and is
// attached by URI to resource r_i; e_i before e_(i+1) is asserted.
struct Chain {
  std::vector<rdf::Term> expressions, annotations, resources;
};
Chain BuildBeforeChain(rdf::GraphStore &store, int k, const std::string &tag = "");

// Pairs (x, y) with x p y in the given graph.
std::set<std::pair<rdf::Term, rdf::Term>> Pairs(const rdf::GraphStore &store, const rdf::Term &p,
                                               const rdf::Term &graph);
// Brute-force transitive closure over a finite edge set.
std::set<std::pair<rdf::Term, rdf::Term>> TransitiveClosure(
    const std::set<std::pair<rdf::Term, rdf::Term>> &edges);

// Calendar arithmetic through the C library (timegm/gmtime_r) for
// cross-checking the engine's date code.
huto::CalendarDate LibcShift(const huto::CalendarDate &d, int days);
huto::CalendarDate LibcLocalDate(std::chrono::system_clock::time_point t, int offset_minutes);

// Deterministic clock: starts at `start`, advances `step` per call.
std::function<service::Clock::time_point()> SteppingClock(service::Clock::time_point start,
                                                          std::chrono::milliseconds step);

// A scripted sequence of saves over a handful of pages: adds, edits,
// annotation removals and category changes.
struct ScriptedSave {
  wiki::PageRef page;
  std::string text;
};
std::vector<ScriptedSave> SaveScript(int count, unsigned seed);

// Requests aimed at the read-only endpoint: malformed text and update forms.
std::vector<std::string> EndpointFuzzBatch(int count, unsigned seed);

// Per-graph quad counts.
std::vector<std::size_t> GraphSizes(const rdf::GraphStore &store);

// Unique scratch directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir &) = delete;
  TempDir &operator=(const TempDir &) = delete;
  const std::string &path() const { return path_; }
  std::string operator/(const std::string &name) const { return path_ + "/" + name; }

 private:
  std::string path_;
};

}  // namespace wikikb::testing

#endif  // WIKIKB_TESTS_SUPPORT_SUPPORT_H_
