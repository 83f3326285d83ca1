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

#ifndef WIKIKB_SERVICE_REPOSITORY_H_
#define WIKIKB_SERVICE_REPOSITORY_H_

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <shared_mutex>
#include <string>
#include <vector>

#include "wikikb/federation/federation.h"
#include "wikikb/rdf/rdf_io.h"
#include "wikikb/rdf/store.h"
#include "wikikb/rules/rules.h"
#include "wikikb/service/journal.h"
#include "wikikb/wiki/annotation.h"

namespace wikikb::service {

// Exclusive advisory lock on <data_dir>/LOCK, held for the object's lifetime.
// Throws StorageError when another process holds it.
class DataDirLock {
 public:
  explicit DataDirLock(const std::string &data_dir);
  ~DataDirLock();
  DataDirLock(const DataDirLock &) = delete;
  DataDirLock &operator=(const DataDirLock &) = delete;

 private:
  int fd_ = -1;
};

struct RevisionInfo {
  std::uint64_t id = 0;
  wiki::PageRef page;
  Clock::time_point timestamp;
  std::string author;
};

struct SaveResult {
  std::uint64_t revision_id = 0;
  std::size_t quads_added = 0;
  std::size_t quads_removed = 0;
  rules::FixpointReport fixpoint;
  std::vector<wiki::Diagnostic> diagnostics;
};

struct FactValue {
  rdf::Term value;
  std::string label;
  bool inferred = false;
};

struct FactboxRow {
  rdf::Term property;
  std::string label;
  std::vector<FactValue> values;
};

struct PageView {
  wiki::PageRef page;
  std::string display_text;
  std::vector<FactboxRow> factbox;
  RevisionInfo revision;
};

struct FacetValue {
  rdf::Term value;
  std::string label;
  std::size_t count = 0;
};

struct Facet {
  rdf::Term property;
  std::string label;
  std::vector<FacetValue> values;  // sorted by term
};

struct QueryResponse {
  std::string content_type;
  std::string body;
};

struct RepositoryOptions {
  std::string base_iri = "http://example.org/wiki/";
  // Empty: in-memory only, nothing persisted.
  std::string data_dir;
  std::function<Clock::time_point()> clock = [] { return Clock::now(); };
};

// Pages, their revisions and the quad store behind them. Writers are
// serialized; readers run concurrently and never observe a half-applied
// save.
class WikiRepository {
 public:
  // Loads the bundled vocabularies, replays the journal in `data_dir` and
  // materializes inferences. Throws StorageError.
  explicit WikiRepository(RepositoryOptions options = {});
  ~WikiRepository();

  // Throws PropertyKindConflict (nothing changes) or StorageError.
  SaveResult SavePage(const wiki::PageRef &page, const std::string &wikitext,
                      const std::string &author);
  // Throws NotFoundError.
  PageView GetPage(const wiki::PageRef &page) const;
  std::vector<RevisionInfo> History(const wiki::PageRef &page) const;
  std::string CurrentText(const wiki::PageRef &page) const;
  std::vector<wiki::PageRef> Pages() const;

  // Read-only endpoint: SELECT -> SPARQL JSON results, CONSTRUCT/DESCRIBE ->
  // N-Triples. Throws ParseError, ForbiddenError for updates.
  QueryResponse Query(const std::string &query_text) const;

  // Offline update: INSERT ... WHERE into the data warehouse, persisted.
  // Returns the number of new quads.
  std::size_t ExecuteUpdate(const std::string &query_text);

  // Instances of `cls` (inferred types included), one facet per property.
  std::vector<Facet> Facets(const rdf::Term &cls) const;

  // Throws UnregisteredGraphError.
  std::string Export(const rdf::Term &graph) const;

  struct LoadReport {
    std::size_t statements = 0;  // distinct statements in the document
    std::size_t added = 0;       // of which were new to the store
  };
  // Parses fully, then journals and inserts.
  LoadReport LoadRdf(const std::string &content, rdf::RdfFormat format, const rdf::Term &graph,
                      const std::string &author = "");

  federation::ImportReport Import(const sparql::SolutionSet &solutions,
                                  const std::string &alignment_text,
                                  const std::string &template_text, const std::string &source,
                                  const std::string &author = "");

  // Consistent copy of the store.
  rdf::GraphStore Snapshot() const;
  // Quads attributed to the page's current revision.
  std::set<rdf::Quad> PageQuads(const wiki::PageRef &page) const;
  // Re-parses every page's current text and compiles it against the current
  // declarations: what the data warehouse should hold for pages.
  std::set<rdf::Quad> RecompilePages() const;

  const wiki::IriScheme &scheme() const { return scheme_; }

 private:
  struct PageState {
    std::vector<RevisionInfo> revisions;  // oldest first
    std::string wikitext;
  };

  void Apply(const JournalRecord &record, bool rematerialize);
  SaveResult ApplyPage(const JournalRecord &record, bool rematerialize);
  LoadReport ApplyLoad(const JournalRecord &record);
  federation::ImportReport ApplyImport(const JournalRecord &record);
  void Persist(const JournalRecord &record);
  // Replaces the owner's attributed quads with `quads`; returns
  // (added, removed) counted over the owner's set.
  std::pair<std::size_t, std::size_t> Attribute(const std::string &owner,
                                                const std::set<rdf::Quad> &quads);
  rules::FixpointReport Rematerialize();

  RepositoryOptions options_;
  wiki::IriScheme scheme_;
  rules::RuleSet rules_;
  std::unique_ptr<DataDirLock> lock_;
  std::unique_ptr<Journal> journal_;

  mutable std::shared_mutex mutex_;
  rdf::GraphStore store_;
  std::map<wiki::PageRef, PageState> pages_;
  std::map<std::string, std::set<rdf::Quad>> owned_;
  std::map<rdf::Quad, std::size_t> owners_;
  std::map<std::string, Clock::time_point> owner_time_;
  std::uint64_t last_id_ = 0;
};

}  // namespace wikikb::service

#endif  // WIKIKB_SERVICE_REPOSITORY_H_
