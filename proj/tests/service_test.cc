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

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "support.h"
#include "wikikb/error.h"
#include "wikikb/rdf/rdf_io.h"
#include "wikikb/rdf/vocab.h"
#include "wikikb/service/config.h"
#include "wikikb/service/journal.h"
#include "wikikb/service/repository.h"

namespace wikikb::service {
namespace {

using rdf::GraphStore;
using rdf::Term;
using wiki::Namespace;
using wiki::PageRef;

const PageRef kDakar = PageRef::Make(Namespace::kMain, "Dakar");
const PageRef kCity = PageRef::Make(Namespace::kCategory, "City");

RepositoryOptions Options(const std::string &dir = "") {
  RepositoryOptions o;
  o.data_dir = dir;
  o.clock = testing::SteppingClock(ParseTimestamp("2014-01-14T09:30:00Z"), std::chrono::seconds(1));
  return o;
}

std::set<rdf::Quad> DataQuads(const WikiRepository &repo) {
  GraphStore s = repo.Snapshot();
  auto q = s.Match(std::nullopt, std::nullopt, std::nullopt, GraphStore::DataGraph());
  return {q.begin(), q.end()};
}

std::vector<std::string> Warehouses(const WikiRepository &repo) {
  std::vector<std::string> out;
  for (const Term &g : GraphStore::Warehouses()) out.push_back(repo.Export(g));
  return out;
}

TEST(Timestamp, RoundTrip) {
  auto t = ParseTimestamp("2014-01-14T09:30:00.250Z");
  EXPECT_EQ(FormatTimestamp(t), "2014-01-14T09:30:00.250Z");
  EXPECT_THROW(ParseTimestamp("yesterday"), InvalidArgumentError);
}

TEST(Repository, SaveCompilesIntoDataWarehouse) {
  WikiRepository repo(Options());
  SaveResult r = repo.SavePage(kDakar, testing::ReadFixture("pages/Dakar.wiki"), "alice");
  EXPECT_EQ(r.revision_id, 1u);
  EXPECT_GT(r.quads_added, 0u);
  EXPECT_EQ(r.quads_removed, 0u);
  EXPECT_TRUE(r.diagnostics.empty());
  const Term dakar = testing::Data("Dakar");
  GraphStore s = repo.Snapshot();
  EXPECT_TRUE(s.Contains({dakar, Term::Iri("http://example.org/wiki/prop/Capital"), testing::Data("Senegal"),
                          GraphStore::DataGraph()}));
  EXPECT_TRUE(s.Contains({dakar, Term::Iri("http://example.org/wiki/prop/Population"), Term::Integer(1056009),
                          GraphStore::DataGraph()}));
  EXPECT_EQ(repo.PageQuads(kDakar), DataQuads(repo));
}

TEST(Repository, IdenticalResaveChangesNothing) {
  WikiRepository repo(Options());
  std::string text = testing::ReadFixture("pages/Dakar.wiki");
  repo.SavePage(kDakar, text, "alice");
  auto before = Warehouses(repo);
  SaveResult again = repo.SavePage(kDakar, text, "bob");
  EXPECT_EQ(again.quads_added, 0u);
  EXPECT_EQ(again.quads_removed, 0u);
  EXPECT_EQ(Warehouses(repo), before);
  EXPECT_EQ(repo.History(kDakar).size(), 2u);
}

TEST(Repository, EditDiffsQuads) {
  WikiRepository repo(Options());
  repo.SavePage(kDakar, "[[Capital::Senegal]] [[Population::1]]", "a");
  SaveResult r = repo.SavePage(kDakar, "[[Capital::Senegal]] [[Population::2]]", "a");
  EXPECT_EQ(r.quads_added, 1u);
  EXPECT_EQ(r.quads_removed, 1u);
  GraphStore s = repo.Snapshot();
  const Term pop = Term::Iri("http://example.org/wiki/prop/Population");
  EXPECT_FALSE(s.Contains({testing::Data("Dakar"), pop, Term::Integer(1), GraphStore::DataGraph()}));
  EXPECT_TRUE(s.Contains({testing::Data("Dakar"), pop, Term::Integer(2), GraphStore::DataGraph()}));
}

// A declaration shared by two pages survives removal from one of them.
TEST(Repository, SharedQuadsAreReferenceCounted) {
  WikiRepository repo(Options());
  repo.SavePage(kDakar, "[[Category:City]]", "a");
  repo.SavePage(PageRef::Make(Namespace::kMain, "Thies"), "[[Category:City]]", "a");
  repo.SavePage(kDakar, "no more", "a");
  GraphStore s = repo.Snapshot();
  const Term city = Term::Iri("http://example.org/wiki/category/City");
  EXPECT_TRUE(s.Contains({city, Term::Iri(vocab::kRdfType), Term::Iri(vocab::kRdfsClass), GraphStore::DataGraph()}));
  EXPECT_FALSE(s.Contains({testing::Data("Dakar"), Term::Iri(vocab::kRdfType), city, GraphStore::DataGraph()}));
}

TEST(Repository, KindConflictRejectsSave) {
  WikiRepository repo(Options());
  repo.SavePage(kDakar, "[[Capital::Senegal]]", "a");
  auto before = Warehouses(repo);
  EXPECT_THROW(repo.SavePage(PageRef::Make(Namespace::kMain, "Thies"), "[[Capital::42]]", "a"),
               PropertyKindConflict);
  EXPECT_EQ(Warehouses(repo), before);
  EXPECT_THROW(repo.History(PageRef::Make(Namespace::kMain, "Thies")), NotFoundError);
  // A page may change its own property's kind.
  EXPECT_NO_THROW(repo.SavePage(kDakar, "[[Capital::42]]", "a"));
}

TEST(Repository, FactboxShowsInferredTypes) {
  WikiRepository repo(Options());
  repo.SavePage(kCity, testing::ReadFixture("pages/Category/City.wiki"), "a");
  repo.SavePage(kDakar, testing::ReadFixture("pages/Dakar.wiki"), "a");
  PageView v = repo.GetPage(kDakar);
  EXPECT_EQ(v.revision.id, 2u);
  EXPECT_EQ(v.display_text.find("[["), std::string::npos);
  bool capital = false, locality_inferred = false, city_asserted = false;
  for (const FactboxRow &row : v.factbox) {
    for (const FactValue &val : row.values) {
      if (row.label == "Capital" && val.label == "Senegal" && !val.inferred) capital = true;
      if (row.property.value() == vocab::kRdfType &&
          val.value.value() == "http://example.org/wiki/category/Locality" && val.inferred) {
        locality_inferred = true;
      }
      if (row.property.value() == vocab::kRdfType &&
          val.value.value() == "http://example.org/wiki/category/City" && !val.inferred) {
        city_asserted = true;
      }
    }
  }
  EXPECT_TRUE(capital);
  EXPECT_TRUE(locality_inferred);
  EXPECT_TRUE(city_asserted);
  EXPECT_THROW(repo.GetPage(PageRef::Make(Namespace::kMain, "Nowhere")), NotFoundError);
}

TEST(Repository, Facets) {
  WikiRepository repo(Options());
  repo.SavePage(PageRef::Make(Namespace::kMain, "A"), "[[IsPartOf::Region A]] [[Category:City]]", "a");
  repo.SavePage(PageRef::Make(Namespace::kMain, "B"), "[[IsPartOf::Region A]] [[Category:City]]", "a");
  repo.SavePage(PageRef::Make(Namespace::kMain, "C"), "[[IsPartOf::Region B]] [[Category:City]]", "a");
  repo.SavePage(PageRef::Make(Namespace::kMain, "D"), "[[IsPartOf::Region B]]", "a");
  auto facets = repo.Facets(repo.scheme().CategoryIri("City"));
  ASSERT_EQ(facets.size(), 1u);
  EXPECT_EQ(facets[0].label, "IsPartOf");
  ASSERT_EQ(facets[0].values.size(), 2u);
  EXPECT_EQ(facets[0].values[0].label, "Region A");
  EXPECT_EQ(facets[0].values[0].count, 2u);
  EXPECT_EQ(facets[0].values[1].count, 1u);
  EXPECT_TRUE(repo.Facets(Term::Iri("urn:nothing")).empty());
}

TEST(Repository, HistoryNewestFirst) {
  WikiRepository repo(Options());
  repo.SavePage(kDakar, "one", "alice");
  repo.SavePage(kCity, "other page", "carol");
  repo.SavePage(kDakar, "two", "bob");
  auto h = repo.History(kDakar);
  ASSERT_EQ(h.size(), 2u);
  EXPECT_EQ(h[0].author, "bob");
  EXPECT_EQ(h[0].id, 3u);
  EXPECT_EQ(h[1].author, "alice");
  EXPECT_LT(h[1].timestamp, h[0].timestamp);
  EXPECT_EQ(repo.CurrentText(kDakar), "two");
  EXPECT_EQ(repo.Pages().size(), 2u);
}

TEST(Repository, EndpointIsReadOnly) {
  WikiRepository repo(Options());
  repo.SavePage(kDakar, testing::ReadFixture("pages/Dakar.wiki"), "a");
  auto before = Warehouses(repo);
  for (const char *q : {"INSERT { ?s ?p ?o } WHERE { ?s ?p ?o }",
                               "INSERT { <urn:x> <urn:p> <urn:y> } WHERE { }"}) {
    EXPECT_THROW(repo.Query(q), ForbiddenError);
  }
  EXPECT_THROW(repo.Query("DELETE WHERE { ?s ?p ?o }"), ParseError);
  EXPECT_EQ(Warehouses(repo), before);

  QueryResponse select = repo.Query("SELECT ?c WHERE { data:Dakar prop:Capital ?c }");
  EXPECT_EQ(select.content_type, "application/sparql-results+json");
  auto doc = nlohmann::json::parse(select.body);
  ASSERT_EQ(doc["results"]["bindings"].size(), 1u);
  EXPECT_EQ(doc["results"]["bindings"][0]["c"]["value"], "http://example.org/wiki/page/Senegal");
  QueryResponse describe = repo.Query("DESCRIBE data:Dakar");
  EXPECT_EQ(describe.content_type, "application/n-triples");
  EXPECT_NE(describe.body.find("<http://example.org/wiki/prop/Capital>"), std::string::npos);
}

TEST(Repository, OfflineUpdateWritesData) {
  WikiRepository repo(Options());
  repo.SavePage(kDakar, "[[Capital::Senegal]]", "a");
  std::size_t n = repo.ExecuteUpdate("INSERT { ?c a usco:Country } WHERE { ?x prop:Capital ?c }");
  EXPECT_EQ(n, 1u);
  EXPECT_EQ(repo.ExecuteUpdate("INSERT { ?c a usco:Country } WHERE { ?x prop:Capital ?c }"), 0u);
  EXPECT_THROW(repo.ExecuteUpdate("SELECT * { ?s ?p ?o }"), InvalidArgumentError);
}

TEST(Repository, LoadAndImport) {
  WikiRepository repo(Options());
  auto report = repo.LoadRdf("<urn:a> <urn:p> <urn:b> .\n<urn:a> <urn:p> <urn:b> .\n", rdf::RdfFormat::kNTriples,
                             GraphStore::DataGraph());
  EXPECT_EQ(report.statements, 1u);
  EXPECT_EQ(report.added, 1u);
  EXPECT_THROW(repo.LoadRdf("<urn:a> <urn:p> .", rdf::RdfFormat::kNTriples, GraphStore::DataGraph()), ParseError);

  sparql::SolutionSet rows;
  rows.variables = {{"l"}, {"o"}};
  rows.rows.push_back({Term::Iri("http://dbpedia.org/resource/Dakar_Region"),
                       Term::Iri("http://dbpedia.org/resource/Pikine_Department")});
  auto imported = repo.Import(rows, testing::ReadFixture("federation/alignment.tsv"),
                              testing::ReadFixture("federation/template.txt"), "https://dbpedia.org/sparql");
  EXPECT_EQ(imported.ingested_quads, 2u);
  GraphStore s = repo.Snapshot();
  EXPECT_TRUE(s.Contains({Term::Iri("http://dbpedia.org/resource/Pikine_Department"), Term::Iri(vocab::kRdfType),
                          Term::Iri("http://ns.inria.fr/usco/Locality"), GraphStore::DataGraph()}));
}

TEST(Persistence, ReplayRestoresWarehouses) {
  testing::TempDir dir;
  std::vector<std::string> before;
  {
    WikiRepository repo(Options(dir.path()));
    repo.SavePage(kCity, testing::ReadFixture("pages/Category/City.wiki"), "a");
    repo.SavePage(kDakar, testing::ReadFixture("pages/Dakar.wiki"), "a");
    repo.LoadRdf("<urn:a> <urn:p> _:b .", rdf::RdfFormat::kNTriples, GraphStore::DataGraph());
    repo.ExecuteUpdate("INSERT { ?c a usco:Country } WHERE { ?x prop:Capital ?c }");
    before = Warehouses(repo);
  }
  WikiRepository reopened(Options(dir.path()));
  EXPECT_EQ(Warehouses(reopened), before);
  EXPECT_EQ(reopened.History(kDakar).size(), 1u);
  // Ids continue after replay.
  EXPECT_EQ(reopened.SavePage(kDakar, "x", "a").revision_id, 5u);
}

TEST(Persistence, TornTailIsDropped) {
  testing::TempDir dir;
  {
    WikiRepository repo(Options(dir.path()));
    repo.SavePage(kDakar, "[[Capital::Senegal]]", "a");
    repo.SavePage(kCity, "[[Category::Locality]]", "a");
  }
  const std::string log = dir / "journal.log";
  const auto good = std::filesystem::file_size(log);
  {
    std::ofstream out(log, std::ios::binary | std::ios::app);
    out.write("\x40\x00\x00\x00\x12\x34", 6);  // frame header cut short
  }
  {
    Journal j(log);
    EXPECT_EQ(j.replayed().size(), 2u);
    EXPECT_EQ(j.dropped_bytes(), 6u);
  }
  EXPECT_EQ(std::filesystem::file_size(log), good);
  WikiRepository repo(Options(dir.path()));
  EXPECT_EQ(repo.Pages().size(), 2u);
}

TEST(Persistence, CorruptChecksumDropsRecord) {
  testing::TempDir dir;
  const std::string log = dir / "journal.log";
  JournalRecord r;
  r.id = 1;
  r.timestamp = ParseTimestamp("2014-01-14T09:30:00Z");
  r.ns = "Main";
  r.title = "Dakar";
  r.wikitext = "text";
  {
    Journal j(log);
    j.Append(r);
    r.id = 2;
    j.Append(r);
  }
  auto size = std::filesystem::file_size(log);
  {
    std::fstream f(log, std::ios::binary | std::ios::in | std::ios::out);
    f.seekp(static_cast<std::streamoff>(size) - 2);
    f.put('#');
  }
  Journal j(log);
  ASSERT_EQ(j.replayed().size(), 1u);
  EXPECT_EQ(j.replayed()[0].id, 1u);
  EXPECT_EQ(j.replayed()[0].wikitext, "text");
  EXPECT_GT(j.dropped_bytes(), 0u);
}

TEST(Journal, RecordJsonRoundTrip) {
  JournalRecord r;
  r.kind = JournalRecord::Kind::kImport;
  r.id = 7;
  r.timestamp = ParseTimestamp("2014-01-14T09:30:00.125Z");
  r.author = "cli";
  r.source = "https://dbpedia.org/sparql";
  r.results_json = "{\"head\":{}}";
  r.alignment = "a\tb\n";
  r.templ = "?o a <urn:C>";
  JournalRecord back = JournalRecord::FromJson(r.ToJson());
  EXPECT_EQ(back.ToJson(), r.ToJson());
  EXPECT_EQ(back.timestamp, r.timestamp);
  EXPECT_THROW(JournalRecord::FromJson("{}"), InvalidArgumentError);
  EXPECT_THROW(JournalRecord::FromJson("not json"), InvalidArgumentError);
}

TEST(Persistence, DataDirectoryIsLocked) {
  testing::TempDir dir;
  WikiRepository first(Options(dir.path()));
  EXPECT_THROW(WikiRepository second(Options(dir.path())), StorageError);
}

// Scripted saves: the data warehouse always equals what a fresh compile of
// the current page texts yields, and a restart reproduces every warehouse.
TEST(Persistence, ScriptedSavesMatchRecompileAndReplay) {
  testing::TempDir dir;
  std::vector<std::string> before;
  {
    WikiRepository repo(Options(dir.path()));
    for (const auto &step : testing::SaveScript(50, 17)) {
      repo.SavePage(step.page, step.text, "script");
      ASSERT_EQ(DataQuads(repo), repo.RecompilePages()) << step.page.Key() << "\n" << step.text;
    }
    before = Warehouses(repo);
  }
  WikiRepository reopened(Options(dir.path()));
  EXPECT_EQ(Warehouses(reopened), before);
}

TEST(Config, FileAndEnvironment) {
  testing::TempDir dir;
  {
    std::ofstream f(dir / "wikikb.ini");
    f << "# service settings\nlisten = 0.0.0.0:9090\nbase_iri = http://wiki.example/\n"
         "data_dir = /var/lib/wikikb\nfederation_allowlist = https://dbpedia.org/sparql, http://localhost:8890/\n";
  }
  ServiceConfig c = ServiceConfig::FromFile(dir / "wikikb.ini");
  EXPECT_EQ(c.listen_host, "0.0.0.0");
  EXPECT_EQ(c.listen_port, 9090);
  EXPECT_EQ(c.base_iri, "http://wiki.example/");
  EXPECT_EQ(c.data_dir, "/var/lib/wikikb");
  EXPECT_TRUE(c.FederationAllowed("https://dbpedia.org/sparql"));
  EXPECT_TRUE(c.FederationAllowed("http://localhost:8890/sparql"));
  EXPECT_FALSE(c.FederationAllowed("https://evil.example/sparql"));

  std::map<std::string, std::string> env{{"WIKIKB_LISTEN", "127.0.0.1:7000"}, {"WIKIKB_DATA_DIR", "/tmp/x"}};
  c.ApplyEnvironment(&env);
  EXPECT_EQ(c.listen_port, 7000);
  EXPECT_EQ(c.data_dir, "/tmp/x");
  EXPECT_EQ(c.base_iri, "http://wiki.example/");

  {
    std::ofstream f(dir / "bad.ini");
    f << "listen = nowhere:port\n";
  }
  EXPECT_THROW(ServiceConfig::FromFile(dir / "bad.ini"), InvalidArgumentError);
  EXPECT_THROW(ServiceConfig::FromFile(dir / "absent.ini"), InvalidArgumentError);
  EXPECT_FALSE(ServiceConfig{}.FederationAllowed("https://dbpedia.org/sparql"));
}

}  // namespace
}  // namespace wikikb::service
