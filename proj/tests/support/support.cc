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

#include "support.h"

#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>

#include "wikikb/error.h"
#include "wikikb/rdf/rdf_io.h"
#include "wikikb/rdf/vocab.h"

namespace wikikb::testing {

namespace fs = std::filesystem;
using rdf::Term;
using rdf::Triple;

std::string FixturePath(const std::string &relative) {
  return std::string(WIKIKB_SOURCE_DIR) + "/tests/fixtures/" + relative;
}

std::string SourcePath(const std::string &relative) {
  return std::string(WIKIKB_SOURCE_DIR) + "/" + relative;
}

namespace {
std::string Slurp(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw StorageError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}
}  // namespace

std::string ReadFixture(const std::string &relative) { return Slurp(FixturePath(relative)); }

rdf::GraphStore VocabStore() {
  rdf::GraphStore store;
  rdf::LoadRdf(store, Slurp(SourcePath("vocab/huto.nt")), rdf::RdfFormat::kNTriples,
               rdf::GraphStore::HutoGraph());
  rdf::LoadRdf(store, Slurp(SourcePath("vocab/usco.nt")), rdf::RdfFormat::kNTriples,
               rdf::GraphStore::UscoGraph());
  return store;
}

Term Huto(const std::string &local) { return Term::Iri(std::string(vocab::kHuto) + local); }
Term Data(const std::string &local) { return Term::Iri("http://example.org/wiki/page/" + local); }

std::multiset<std::string> CanonicalLines(const std::vector<Triple> &triples) {
  std::multimap<Term, const Triple *> out;
  for (const Triple &t : triples) out.emplace(t.subject, &t);
  std::map<Term, std::string> memo;
  std::set<Term> open;
  std::function<std::string(const Term &, int)> sig = [&](const Term &t, int depth) -> std::string {
    if (!t.is_blank()) return t.ToNTriples();
    if (auto it = memo.find(t); it != memo.end()) return it->second;
    if (depth > 32 || !open.insert(t).second) return "[cycle]";
    std::multiset<std::string> parts;
    auto range = out.equal_range(t);
    for (auto it = range.first; it != range.second; ++it) {
      parts.insert(it->second->predicate.ToNTriples() + ' ' + sig(it->second->object, depth + 1));
    }
    std::string s = "[";
    for (const std::string &p : parts) s += p + ';';
    s += ']';
    open.erase(t);
    memo[t] = s;
    return s;
  };
  std::multiset<std::string> lines;
  for (const Triple &t : triples) {
    lines.insert(sig(t.subject, 0) + ' ' + t.predicate.ToNTriples() + ' ' + sig(t.object, 0));
  }
  return lines;
}

std::vector<Triple> ParseNTriples(const std::string &text) {
  return rdf::ParseRdf(text, rdf::RdfFormat::kNTriples,
                       [](std::string_view label) { return Term::Blank(label); });
}

Chain BuildBeforeChain(rdf::GraphStore &store, int k, const std::string &tag) {
  Chain c;
  const Term &data = rdf::GraphStore::DataGraph();
  const Term type = Term::Iri(vocab::kRdfType);
  for (int i = 0; i < k; ++i) {
    std::string n = tag + std::to_string(i);
    c.expressions.push_back(Data("expr" + n));
    c.annotations.push_back(Data("annotation" + n));
    c.resources.push_back(Data("event" + n));
    store.Insert({c.annotations[i], type, Huto("TemporalAnnotation"), data});
    store.Insert({c.annotations[i], Huto("hasTemporalExp"), c.expressions[i], data});
    store.Insert({c.annotations[i], Huto("uri"), c.resources[i], data});
  }
  for (int i = 0; i + 1 < k; ++i) {
    store.Insert({c.expressions[i], Huto("before"), c.expressions[i + 1], data});
  }
  return c;
}

std::set<std::pair<Term, Term>> Pairs(const rdf::GraphStore &store, const Term &p,
                                      const Term &graph) {
  std::set<std::pair<Term, Term>> out;
  for (const rdf::Quad &q : store.Match(std::nullopt, p, std::nullopt, graph)) {
    out.emplace(q.subject, q.object);
  }
  return out;
}

std::set<std::pair<Term, Term>> TransitiveClosure(const std::set<std::pair<Term, Term>> &edges) {
  std::set<std::pair<Term, Term>> closure = edges;
  for (bool grew = true; grew;) {
    grew = false;
    for (const auto &[a, b] : std::set<std::pair<Term, Term>>(closure)) {
      for (const auto &[c, d] : edges) {
        if (b == c && closure.emplace(a, d).second) grew = true;
      }
    }
  }
  return closure;
}

huto::CalendarDate LibcShift(const huto::CalendarDate &d, int days) {
  std::tm tm{};
  tm.tm_year = d.year - 1900;
  tm.tm_mon = static_cast<int>(d.month) - 1;
  tm.tm_mday = static_cast<int>(d.day) + days;
  tm.tm_hour = 12;
  std::time_t t = timegm(&tm);
  std::tm out{};
  gmtime_r(&t, &out);
  return {out.tm_year + 1900, static_cast<unsigned>(out.tm_mon + 1),
          static_cast<unsigned>(out.tm_mday)};
}

huto::CalendarDate LibcLocalDate(std::chrono::system_clock::time_point t, int offset_minutes) {
  std::time_t secs = std::chrono::system_clock::to_time_t(t) + offset_minutes * 60;
  std::tm out{};
  gmtime_r(&secs, &out);
  return {out.tm_year + 1900, static_cast<unsigned>(out.tm_mon + 1),
          static_cast<unsigned>(out.tm_mday)};
}

std::function<service::Clock::time_point()> SteppingClock(service::Clock::time_point start,
                                                          std::chrono::milliseconds step) {
  auto now = std::make_shared<service::Clock::time_point>(start);
  return [now, step] {
    service::Clock::time_point t = *now;
    *now += step;
    return t;
  };
}

std::vector<ScriptedSave> SaveScript(int count, unsigned seed) {
  std::mt19937 rng(seed);
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  const std::vector<std::string> towns{"Dakar", "Thies", "Saint-Louis", "Kaolack", "Ziguinchor"};
  const std::vector<std::string> regions{"Dakar Region", "Thies Region", "Saint-Louis Region"};
  std::vector<ScriptedSave> out;
  for (int i = 0; i < count; ++i) {
    int r = pick(1, 10);
    if (r <= 7) {
      std::string text = "Notes on " + towns[pick(0, 4)] + ", revision " + std::to_string(i) + ".\n";
      if (pick(0, 1)) text += "It is part of [[IsPartOf::" + regions[pick(0, 2)] + "]].\n";
      if (pick(0, 1)) text += "[[Population::" + std::to_string(pick(1000, 2000000)) + "]]\n";
      if (pick(0, 2) == 0) text += "[[Capital::Senegal|capital]]\n";
      if (pick(0, 1)) text += "[[Category:City]]\n";
      if (pick(0, 3) == 0) text += "[[Category:Port]]\n";
      if (pick(0, 3) == 0) text += "[[Founded::1857-01-01]]\n";
      out.push_back({wiki::PageRef::Make(wiki::Namespace::kMain, towns[pick(0, 4)]), text});
    } else if (r <= 9) {
      const char *parents[] = {"Locality", "Settlement", ""};
      std::string parent = parents[pick(0, 2)];
      std::string text = parent.empty() ? "Plain category.\n" : "[[Category::" + parent + "]]\n";
      out.push_back({wiki::PageRef::Make(wiki::Namespace::kCategory, pick(0, 1) ? "City" : "Port"), text});
    } else {
      out.push_back({wiki::PageRef::Make(wiki::Namespace::kMain, towns[pick(0, 4)]),
                     "All annotations removed.\n"});
    }
  }
  return out;
}

std::vector<std::string> EndpointFuzzBatch(int count, unsigned seed) {
  std::mt19937 rng(seed);
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  const std::vector<std::string> updates{
      "INSERT { ?s ?p ?o } WHERE { ?s ?p ?o }",
      "INSERT { <urn:x> <urn:p> <urn:y> } WHERE { }",
      "PREFIX huto: <http://ns.inria.fr/huto/>\nINSERT { ?y huto:after ?x } WHERE { ?x huto:before ?y }",
      "# update in disguise\ninsert { ?x a <urn:C> } where { ?x ?p ?o }",
      "INSERT { data:Gamou a huto:Date } WHERE { ?s ?p ?o . FILTER NOT EXISTS { ?s a huto:Date } }",
  };
  const std::vector<std::string> invalid{
      "DELETE WHERE { ?s ?p ?o }",
      "INSERT DATA { <urn:x> <urn:p> <urn:y> }",
      "DROP ALL",
      "CLEAR GRAPH <urn:warehouse:data>",
      "LOAD <http://example.org/evil.ttl>",
      "SELECT * WHERE { ?s nope:p ?o }",
      "SELECT ?x WHERE { ?x a <u> ",
      "",
      "}}}{{{",
      "SELECT * WHERE { ?s ?p \"unterminated }",
      "DESCRIBE",
      "CONSTRUCT { ?s ?p } WHERE { ?s ?p ?o }",
  };
  const std::string valid =
      "PREFIX huto: <http://ns.inria.fr/huto/>\n"
      "SELECT ?x ?y WHERE { ?x huto:before ?y . OPTIONAL { ?y huto:uri ?r } }";
  std::vector<std::string> out;
  for (int i = 0; i < count; ++i) {
    switch (pick(0, 3)) {
      case 0: out.push_back(updates[pick(0, static_cast<int>(updates.size()) - 1)]); break;
      case 1: out.push_back(invalid[pick(0, static_cast<int>(invalid.size()) - 1)]); break;
      case 2: out.push_back(valid.substr(0, pick(0, static_cast<int>(valid.rfind('}')) - 1))); break;
      default: {
        std::string junk(pick(1, 40), ' ');
        for (char &c : junk) c = static_cast<char>(pick(1, 255));
        out.push_back((pick(0, 1) ? "INSERT " : "") + junk);
        break;
      }
    }
  }
  return out;
}

std::vector<std::size_t> GraphSizes(const rdf::GraphStore &store) {
  std::vector<std::size_t> out;
  for (const Term &g : store.graphs()) out.push_back(store.size(g));
  return out;
}

TempDir::TempDir() {
  std::string templ = (fs::temp_directory_path() / "wikikb-test-XXXXXX").string();
  if (mkdtemp(templ.data()) == nullptr) throw StorageError("mkdtemp failed");
  path_ = templ;
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

}  // namespace wikikb::testing
