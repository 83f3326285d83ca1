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

#include "wikikb/service/repository.h"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cstring>
#include <filesystem>
#include <mutex>

#include "wikikb/embedded.h"
#include "wikikb/error.h"
#include "wikikb/huto/temporal.h"
#include "wikikb/rdf/vocab.h"
#include "wikikb/sparql/eval.h"
#include "wikikb/sparql/parser.h"
#include "wikikb/sparql/results_json.h"
#include "wikikb/text.h"

namespace wikikb::service {

using rdf::GraphStore;
using rdf::Quad;
using rdf::Term;
using wiki::PageRef;

DataDirLock::DataDirLock(const std::string &data_dir) {
  std::string path = data_dir + "/LOCK";
  fd_ = ::open(path.c_str(), O_RDWR | O_CREAT | O_CLOEXEC, 0644);
  if (fd_ < 0) throw StorageError("cannot open " + path + ": " + std::strerror(errno));
  if (::flock(fd_, LOCK_EX | LOCK_NB) != 0) {
    int err = errno;
    ::close(fd_);
    fd_ = -1;
    if (err == EWOULDBLOCK) throw StorageError("data directory is in use by another process: " + data_dir);
    throw StorageError("cannot lock " + path + ": " + std::strerror(err));
  }
}

DataDirLock::~DataDirLock() {
  if (fd_ >= 0) ::close(fd_);
}

namespace {

std::string PageOwner(const PageRef &page) { return "page:" + page.Key(); }

// Imported terms may only be aligned onto the shared ontologies or the wiki.
std::vector<std::string> LocalNamespaces(const wiki::IriScheme &scheme) {
  return {std::string(vocab::kUsco), std::string(vocab::kHuto), scheme.base()};
}

std::string LocalName(const std::string &iri, const std::string &prefix) {
  return PercentDecode(std::string_view(iri).substr(prefix.size()));
}

// Titles are stored with underscores; labels are for people.
std::string Spaced(std::string s) {
  std::replace(s.begin(), s.end(), '_', ' ');
  return s;
}

std::string Label(const Term &t, const wiki::IriScheme &scheme) {
  if (!t.is_iri()) return t.value();
  const std::string &v = t.value();
  if (auto page = scheme.PageOf(t)) return Spaced(page->title);
  for (const std::string &prefix : {scheme.PropertyPrefix(), scheme.CategoryPrefix()}) {
    if (v.rfind(prefix, 0) == 0) return Spaced(LocalName(v, prefix));
  }
  if (v == vocab::kRdfType) return "Category";
  return v;
}

rules::FixpointReport &Accumulate(rules::FixpointReport &into, const rules::FixpointReport &r) {
  into.rounds += r.rounds;
  into.total_added += r.total_added;
  for (const auto &[name, n] : r.added_per_rule) into.added_per_rule[name] += n;
  return into;
}

sparql::ParseOptions Options(const wiki::IriScheme &scheme) {
  return sparql::ParseOptions::Standard(scheme.base());
}

}  // namespace

WikiRepository::WikiRepository(RepositoryOptions options)
    : options_(std::move(options)),
      scheme_(options_.base_iri),
      rules_(rules::BuiltinRuleset("all")) {
  rdf::LoadRdf(store_, embedded::k_huto_nt, rdf::RdfFormat::kNTriples, GraphStore::HutoGraph());
  rdf::LoadRdf(store_, embedded::k_usco_nt, rdf::RdfFormat::kNTriples, GraphStore::UscoGraph());
  if (!options_.data_dir.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(options_.data_dir, ec);
    if (ec) throw StorageError("cannot create " + options_.data_dir + ": " + ec.message());
    lock_ = std::make_unique<DataDirLock>(options_.data_dir);
    journal_ = std::make_unique<Journal>(options_.data_dir + "/journal.log");
    for (const JournalRecord &r : journal_->replayed()) Apply(r, false);
  }
  Rematerialize();
}

WikiRepository::~WikiRepository() = default;

void WikiRepository::Persist(const JournalRecord &record) {
  if (journal_) journal_->Append(record);
}

void WikiRepository::Apply(const JournalRecord &record, bool rematerialize) {
  switch (record.kind) {
    case JournalRecord::Kind::kPage:
      ApplyPage(record, rematerialize);
      break;
    case JournalRecord::Kind::kLoad:
      ApplyLoad(record);
      break;
    case JournalRecord::Kind::kImport:
      ApplyImport(record);
      break;
  }
  last_id_ = std::max(last_id_, record.id);
}

std::pair<std::size_t, std::size_t> WikiRepository::Attribute(const std::string &owner,
                                                              const std::set<Quad> &quads) {
  std::set<Quad> &old = owned_[owner];
  std::size_t added = 0, removed = 0;
  for (const Quad &q : old) {
    if (quads.count(q) != 0) continue;
    ++removed;
    auto it = owners_.find(q);
    if (--it->second == 0) {
      owners_.erase(it);
      store_.Remove(q);
    }
  }
  for (const Quad &q : quads) {
    if (old.count(q) != 0) continue;
    ++added;
    if (owners_[q]++ == 0) {
      if (!store_.IsRegistered(q.graph)) store_.RegisterGraph(q.graph);
      store_.Insert(q);
    }
  }
  old = quads;
  return {added, removed};
}

SaveResult WikiRepository::ApplyPage(const JournalRecord &record, bool rematerialize) {
  auto ns = wiki::ParseNamespace(record.ns);
  if (!ns) throw InvalidArgumentError("unknown namespace " + record.ns);
  PageRef page = PageRef::Make(*ns, record.title);
  const std::string owner = PageOwner(page);

  // The page's own previous output must not count as a prior declaration.
  std::set<Quad> ignored;
  if (auto it = owned_.find(owner); it != owned_.end()) {
    for (const Quad &q : it->second) {
      if (owners_.at(q) == 1) ignored.insert(q);
    }
  }
  wiki::ParseOutcome parsed = wiki::ParseAnnotations(page, record.wikitext);
  wiki::StoreDeclarations declarations(store_, &ignored);
  wiki::Compilation compiled = wiki::CompileTags(page, parsed.tags, declarations, scheme_);

  SaveResult result;
  result.revision_id = record.id;
  result.diagnostics = parsed.diagnostics;
  result.diagnostics.insert(result.diagnostics.end(), compiled.diagnostics.begin(),
                            compiled.diagnostics.end());
  auto [added, removed] =
      Attribute(owner, std::set<Quad>(compiled.quads.begin(), compiled.quads.end()));
  result.quads_added = added;
  result.quads_removed = removed;
  owner_time_[owner] = record.timestamp;
  PageState &state = pages_[page];
  state.revisions.push_back({record.id, page, record.timestamp, record.author});
  state.wikitext = record.wikitext;
  if (rematerialize) result.fixpoint = Rematerialize();
  return result;
}

WikiRepository::LoadReport WikiRepository::ApplyLoad(const JournalRecord &record) {
  Term graph = Term::Iri(record.graph);
  std::vector<rdf::Triple> triples =
      rdf::ParseRdf(record.content, rdf::ParseFormatName(record.format),
                    [&](std::string_view) { return store_.FreshBlank(); });
  std::set<Quad> quads;
  std::size_t fresh = 0;
  for (const rdf::Triple &t : triples) {
    Quad q{t.subject, t.predicate, t.object, graph};
    if (quads.insert(q).second && !store_.Contains(q)) ++fresh;
  }
  const std::string owner = "load#" + std::to_string(record.id);
  Attribute(owner, quads);
  owner_time_[owner] = record.timestamp;
  return {quads.size(), fresh};
}

federation::ImportReport WikiRepository::ApplyImport(const JournalRecord &record) {
  sparql::SolutionSet solutions = sparql::DecodeResultsJson(record.results_json);
  federation::AlignmentMap alignment = federation::ParseAlignment(record.alignment, LocalNamespaces(scheme_));
  std::vector<sparql::TriplePattern> templ = sparql::ParseTemplate(record.templ, Options(scheme_));
  std::vector<Quad> produced;
  federation::ImportReport report = federation::AlignAndIngest(
      store_, solutions, alignment, templ,
      federation::ImportProvenance{record.source, record.timestamp}, &produced);
  const std::string owner = "import#" + std::to_string(record.id);
  Attribute(owner, std::set<Quad>(produced.begin(), produced.end()));
  owner_time_[owner] = record.timestamp;
  return report;
}

rules::FixpointReport WikiRepository::Rematerialize() {
  store_.ClearGraph(GraphStore::InferredGraph());
  rules::FixpointReport report = rules::RunFixpoint(store_, rules_);

  const Term type = Term::Iri(vocab::kRdfType);
  auto discourse_of = [&](const Term &node) -> std::optional<huto::DiscourseTime> {
    std::optional<Clock::time_point> latest;
    for (const Term &cls : huto::DeicticClasses()) {
      for (const Term &g : GraphStore::Warehouses()) {
        Quad q{node, type, cls, g};
        if (owners_.count(q) == 0) continue;
        for (const auto &[owner, quads] : owned_) {
          if (quads.count(q) == 0) continue;
          Clock::time_point t = owner_time_.at(owner);
          if (!latest || *latest < t) latest = t;
        }
      }
    }
    if (!latest) return std::nullopt;
    return huto::DiscourseTime::At(*latest);
  };
  // Resolved dates can seed further ordering facts; a handful of passes
  // settles it.
  for (int pass = 0; pass < 8; ++pass) {
    if (huto::ResolveDeictic(store_, discourse_of) == 0) break;
    Accumulate(report, rules::RunFixpoint(store_, rules_));
  }
  return report;
}

SaveResult WikiRepository::SavePage(const PageRef &page, const std::string &wikitext,
                                    const std::string &author) {
  std::unique_lock lock(mutex_);
  JournalRecord record;
  record.kind = JournalRecord::Kind::kPage;
  record.id = last_id_ + 1;
  record.timestamp = std::chrono::floor<std::chrono::milliseconds>(options_.clock());
  record.author = author;
  record.ns = std::string(wiki::NamespaceName(page.ns));
  record.title = page.title;
  record.wikitext = wikitext;

  // Dry run: a kind conflict must leave everything untouched.
  {
    std::set<Quad> ignored;
    if (auto it = owned_.find(PageOwner(page)); it != owned_.end()) {
      for (const Quad &q : it->second) {
        if (owners_.at(q) == 1) ignored.insert(q);
      }
    }
    wiki::ParseOutcome parsed = wiki::ParseAnnotations(page, wikitext);
    wiki::StoreDeclarations declarations(store_, &ignored);
    wiki::CompileTags(page, parsed.tags, declarations, scheme_);
  }
  Persist(record);
  last_id_ = record.id;
  return ApplyPage(record, true);
}

PageView WikiRepository::GetPage(const PageRef &page) const {
  std::shared_lock lock(mutex_);
  auto it = pages_.find(page);
  if (it == pages_.end()) throw NotFoundError("no such page: " + page.Key());
  PageView view;
  view.page = page;
  view.display_text = wiki::ParseAnnotations(page, it->second.wikitext).display_text;
  view.revision = it->second.revisions.back();

  const Term self = scheme_.PageIri(page);
  const Term type = Term::Iri(vocab::kRdfType);
  const Term individual = Term::Iri(vocab::kOwlNamedIndividual);
  std::map<Term, FactboxRow> rows;
  auto add = [&](const Term &p, const Term &o, bool inferred) {
    FactboxRow &row = rows[p];
    row.property = p;
    row.label = Label(p, scheme_);
    for (const FactValue &v : row.values) {
      if (v.value == o) return;
    }
    row.values.push_back({o, Label(o, scheme_), inferred});
  };
  if (auto owned = owned_.find(PageOwner(page)); owned != owned_.end()) {
    for (const Quad &q : owned->second) {
      if (q.subject != self || (q.predicate == type && q.object == individual)) continue;
      add(q.predicate, q.object, false);
    }
  }
  for (const Quad &q : store_.Match(self, type, std::nullopt, GraphStore::InferredGraph())) {
    add(q.predicate, q.object, true);
  }
  for (auto &[p, row] : rows) view.factbox.push_back(std::move(row));
  return view;
}

std::vector<RevisionInfo> WikiRepository::History(const PageRef &page) const {
  std::shared_lock lock(mutex_);
  auto it = pages_.find(page);
  if (it == pages_.end()) throw NotFoundError("no such page: " + page.Key());
  return std::vector<RevisionInfo>(it->second.revisions.rbegin(), it->second.revisions.rend());
}

std::string WikiRepository::CurrentText(const PageRef &page) const {
  std::shared_lock lock(mutex_);
  auto it = pages_.find(page);
  if (it == pages_.end()) throw NotFoundError("no such page: " + page.Key());
  return it->second.wikitext;
}

std::vector<PageRef> WikiRepository::Pages() const {
  std::shared_lock lock(mutex_);
  std::vector<PageRef> out;
  for (const auto &[page, state] : pages_) out.push_back(page);
  return out;
}

QueryResponse WikiRepository::Query(const std::string &query_text) const {
  sparql::Query q = sparql::ParseQuery(query_text, Options(scheme_));
  std::shared_lock lock(mutex_);
  switch (q.form) {
    case sparql::QueryForm::kSelect:
      return {"application/sparql-results+json",
              sparql::EncodeResultsJson(sparql::EvaluateSelect(store_, q))};
    case sparql::QueryForm::kConstruct:
      return {"application/n-triples", rdf::SerializeNTriples(sparql::EvaluateConstruct(store_, q))};
    case sparql::QueryForm::kDescribe:
      return {"application/n-triples", rdf::SerializeNTriples(sparql::EvaluateDescribe(store_, q))};
    case sparql::QueryForm::kInsertWhere:
      break;
  }
  throw ForbiddenError("updates are not accepted by the query endpoint");
}

std::size_t WikiRepository::ExecuteUpdate(const std::string &query_text) {
  sparql::Query q = sparql::ParseQuery(query_text, Options(scheme_));
  if (q.form != sparql::QueryForm::kInsertWhere) {
    throw InvalidArgumentError("not an INSERT ... WHERE update");
  }
  std::unique_lock lock(mutex_);
  JournalRecord record;
  record.kind = JournalRecord::Kind::kLoad;
  record.id = last_id_ + 1;
  record.timestamp = std::chrono::floor<std::chrono::milliseconds>(options_.clock());
  record.author = "update";
  record.graph = std::string(vocab::kDataGraph);
  record.format = "ntriples";
  record.content = rdf::SerializeNTriples(sparql::InsertCandidates(store_, q));
  Persist(record);
  last_id_ = record.id;
  std::size_t added = ApplyLoad(record).added;
  Rematerialize();
  return added;
}

std::vector<Facet> WikiRepository::Facets(const Term &cls) const {
  std::shared_lock lock(mutex_);
  const Term type = Term::Iri(vocab::kRdfType);
  const std::vector<Term> graphs = {GraphStore::DataGraph(), GraphStore::InferredGraph()};
  std::set<Term> instances;
  for (const Term &g : graphs) {
    for (const Quad &q : store_.Match(std::nullopt, type, cls, g)) instances.insert(q.subject);
  }
  std::map<Term, std::map<Term, std::size_t>> counts;
  for (const Term &instance : instances) {
    std::set<std::pair<Term, Term>> seen;
    for (const Term &g : graphs) {
      for (const Quad &q : store_.Match(instance, std::nullopt, std::nullopt, g)) {
        if (q.predicate == type) continue;
        if (seen.emplace(q.predicate, q.object).second) ++counts[q.predicate][q.object];
      }
    }
  }
  std::vector<Facet> out;
  for (const auto &[p, values] : counts) {
    Facet f{p, Label(p, scheme_), {}};
    for (const auto &[v, n] : values) f.values.push_back({v, Label(v, scheme_), n});
    out.push_back(std::move(f));
  }
  return out;
}

std::string WikiRepository::Export(const Term &graph) const {
  std::shared_lock lock(mutex_);
  if (!store_.IsRegistered(graph)) throw UnregisteredGraphError(graph.value());
  return rdf::SerializeNTriples(store_, graph);
}

WikiRepository::LoadReport WikiRepository::LoadRdf(const std::string &content, rdf::RdfFormat format,
                                    const Term &graph, const std::string &author) {
  if (!graph.is_iri()) throw InvalidArgumentError("graph name must be an IRI");
  // Validation parse; the real one happens in ApplyLoad so that blank node
  // allocation matches replay.
  rdf::ParseRdf(content, format, [](std::string_view label) { return Term::Blank(label); });
  std::unique_lock lock(mutex_);
  JournalRecord record;
  record.kind = JournalRecord::Kind::kLoad;
  record.id = last_id_ + 1;
  record.timestamp = std::chrono::floor<std::chrono::milliseconds>(options_.clock());
  record.author = author;
  record.graph = graph.value();
  record.format = format == rdf::RdfFormat::kTurtle ? "turtle" : "ntriples";
  record.content = content;
  Persist(record);
  last_id_ = record.id;
  LoadReport report = ApplyLoad(record);
  Rematerialize();
  return report;
}

federation::ImportReport WikiRepository::Import(const sparql::SolutionSet &solutions,
                                                const std::string &alignment_text,
                                                const std::string &template_text,
                                                const std::string &source,
                                                const std::string &author) {
  federation::ParseAlignment(alignment_text, LocalNamespaces(scheme_));
  sparql::ParseTemplate(template_text, Options(scheme_));
  std::unique_lock lock(mutex_);
  JournalRecord record;
  record.kind = JournalRecord::Kind::kImport;
  record.id = last_id_ + 1;
  record.timestamp = std::chrono::floor<std::chrono::milliseconds>(options_.clock());
  record.author = author;
  record.source = source;
  record.results_json = sparql::EncodeResultsJson(solutions);
  record.alignment = alignment_text;
  record.templ = template_text;
  Persist(record);
  last_id_ = record.id;
  federation::ImportReport report = ApplyImport(record);
  Rematerialize();
  return report;
}

GraphStore WikiRepository::Snapshot() const {
  std::shared_lock lock(mutex_);
  return store_;
}

std::set<Quad> WikiRepository::PageQuads(const PageRef &page) const {
  std::shared_lock lock(mutex_);
  auto it = owned_.find(PageOwner(page));
  return it == owned_.end() ? std::set<Quad>{} : it->second;
}

std::set<Quad> WikiRepository::RecompilePages() const {
  std::shared_lock lock(mutex_);
  std::set<Quad> out;
  for (const auto &[page, state] : pages_) {
    wiki::ParseOutcome parsed = wiki::ParseAnnotations(page, state.wikitext);
    wiki::Compilation c = wiki::CompileTags(page, parsed.tags, store_, scheme_);
    out.insert(c.quads.begin(), c.quads.end());
  }
  return out;
}

}  // namespace wikikb::service
