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

#include "wikikb/federation/federation.h"

#include <zlib.h>

#include <cctype>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <set>
#include <sstream>

#include <httplib.h>

#include "wikikb/error.h"
#include "wikikb/rdf/vocab.h"
#include "wikikb/sparql/parser.h"
#include "wikikb/sparql/results_json.h"
#include "wikikb/text.h"

namespace wikikb::federation {

using rdf::Term;

namespace {

struct UrlParts {
  std::string scheme_host_port;
  std::string path;
};

UrlParts SplitUrl(const std::string &url) {
  std::size_t scheme_end = url.find("://");
  std::size_t path_begin = url.find('/', scheme_end == std::string::npos ? 0 : scheme_end + 3);
  if (path_begin == std::string::npos) return {url, "/"};
  return {url.substr(0, path_begin), url.substr(path_begin)};
}

}  // namespace

void EndpointConfig::Validate() const {
  std::string lower;
  for (char c : url.substr(0, 8)) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  std::size_t host = 0;
  if (lower.rfind("http://", 0) == 0) {
    host = 7;
  } else if (lower.rfind("https://", 0) == 0) {
    host = 8;
  } else {
    throw InvalidArgumentError("endpoint URL must be http or https: " + url);
  }
  if (host >= url.size() || url[host] == '/') {
    throw InvalidArgumentError("endpoint URL has no host: " + url);
  }
  if (timeout.count() <= 0) throw InvalidArgumentError("endpoint timeout must be positive");
}

std::string HttpTransport::Execute(const EndpointConfig &endpoint, const std::string &query) {
  endpoint.Validate();
  UrlParts parts = SplitUrl(endpoint.url);
  httplib::Client client(parts.scheme_host_port);
  auto secs = std::chrono::duration_cast<std::chrono::seconds>(endpoint.timeout);
  auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(endpoint.timeout - secs);
  client.set_connection_timeout(secs.count(), usecs.count());
  client.set_read_timeout(secs.count(), usecs.count());
  client.set_follow_location(true);
  httplib::Headers headers = {{"Accept", "application/sparql-results+json"}};
  std::string path = parts.path;
  path += path.find('?') == std::string::npos ? '?' : '&';
  path += "query=" + PercentEncode(query);
  auto result = client.Get(path, headers);
  if (!result) {
    httplib::Error err = result.error();
    if (err == httplib::Error::ConnectionTimeout || err == httplib::Error::Read) {
      throw TimeoutError("endpoint timed out: " + endpoint.url);
    }
    throw NetworkError("endpoint request failed (" + httplib::to_string(err) + "): " + endpoint.url);
  }
  if (result->status != 200) {
    throw NetworkError("endpoint answered HTTP " + std::to_string(result->status) + ": " +
                       endpoint.url);
  }
  return result->body;
}

FixtureTransport FixtureTransport::FromFile(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw StorageError("cannot read fixture " + path);
  std::ostringstream body;
  body << in.rdbuf();
  return FixtureTransport(body.str());
}

std::string FixtureTransport::Execute(const EndpointConfig &, const std::string &) { return body_; }

sparql::SolutionSet FetchSelect(SparqlTransport &transport, const EndpointConfig &endpoint,
                                const std::string &query_text) {
  sparql::Query q = sparql::ParseQuery(query_text);
  if (q.form != sparql::QueryForm::kSelect) {
    throw InvalidArgumentError("federated queries must be SELECT queries");
  }
  return sparql::DecodeResultsJson(transport.Execute(endpoint, query_text));
}

AlignmentMap::AlignmentMap(std::vector<std::string> local_namespaces)
    : local_namespaces_(std::move(local_namespaces)) {
  local_namespaces_.emplace_back(vocab::kUsco);
}

void AlignmentMap::AddClass(const std::string &external, const std::string &local) {
  Add(classes_, external, local);
}

void AlignmentMap::AddProperty(const std::string &external, const std::string &local) {
  Add(properties_, external, local);
}

void AlignmentMap::Add(std::map<std::string, std::string> &table, const std::string &external,
                       const std::string &local) {
  if (!rdf::IsAbsoluteIri(external) || !rdf::IsAbsoluteIri(local)) {
    throw InvalidArgumentError("alignment entries must be absolute IRIs");
  }
  bool in_namespace = false;
  for (const std::string &ns : local_namespaces_) {
    in_namespace = in_namespace || local.rfind(ns, 0) == 0;
  }
  if (!in_namespace) throw InvalidArgumentError("alignment target outside local namespaces: " + local);
  std::set<std::string> seen{external};
  for (const std::string *at = &local; at != nullptr; at = Next(*at)) {
    if (!seen.insert(*at).second) {
      throw InvalidArgumentError("alignment cycle through " + external);
    }
  }
  table[external] = local;
}

const std::string *AlignmentMap::Next(const std::string &iri) const {
  if (auto it = classes_.find(iri); it != classes_.end()) return &it->second;
  if (auto it = properties_.find(iri); it != properties_.end()) return &it->second;
  return nullptr;
}

Term AlignmentMap::Rewrite(const Term &term) const {
  if (!term.is_iri()) return term;
  const std::string *at = &term.value();
  while (const std::string *next = Next(*at)) at = next;
  return at == &term.value() ? term : Term::Iri(*at);
}

AlignmentMap ParseAlignment(std::string_view text, std::vector<std::string> local_namespaces) {
  AlignmentMap map(std::move(local_namespaces));
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    if (std::size_t hash = line.find('#'); hash != std::string_view::npos) {
      // '#' inside an IRI fragment is kept: a comment starts at line start or
      // after whitespace.
      while (hash != std::string_view::npos && hash > 0 && line[hash - 1] != ' ' &&
             line[hash - 1] != '\t') {
        hash = line.find('#', hash + 1);
      }
      if (hash != std::string_view::npos) line = line.substr(0, hash);
    }
    std::string content(Trim(line));
    if (!content.empty()) {
      SourcePos p = PositionAt(text, pos);
      std::size_t tab = content.find('\t');
      if (tab == std::string::npos) {
        throw ParseError("expected external<TAB>local", p.line, p.column, pos);
      }
      std::string external(Trim(content.substr(0, tab)));
      std::string local(Trim(content.substr(tab + 1)));
      if (external.size() > 1 && external.front() == '<' && external.back() == '>') {
        external = external.substr(1, external.size() - 2);
      }
      if (local.size() > 1 && local.front() == '<' && local.back() == '>') {
        local = local.substr(1, local.size() - 2);
      }
      std::size_t cut = local.find_last_of("/#:");
      char first = cut + 1 < local.size() ? local[cut + 1] : '\0';
      try {
        if (std::isupper(static_cast<unsigned char>(first))) {
          map.AddClass(external, local);
        } else {
          map.AddProperty(external, local);
        }
      } catch (const InvalidArgumentError &e) {
        throw ParseError(e.what(), p.line, p.column, pos);
      }
    }
    pos = eol + 1;
  }
  return map;
}

ImportReport AlignAndIngest(rdf::GraphStore &store, const sparql::SolutionSet &solutions,
                            const AlignmentMap &alignment,
                            const std::vector<sparql::TriplePattern> &templ,
                            const std::optional<ImportProvenance> &provenance,
                            std::vector<rdf::Quad> *produced) {
  std::map<std::string, std::size_t> column;
  for (std::size_t i = 0; i < solutions.variables.size(); ++i) {
    column[solutions.variables[i].name] = i;
  }
  const Term data = rdf::GraphStore::DataGraph();
  std::map<std::string, Term> blanks;
  ImportReport report;
  report.fetched_rows = solutions.rows.size();

  for (std::size_t r = 0; r < solutions.rows.size(); ++r) {
    const auto &row = solutions.rows[r];
    std::string reason;
    auto ground = [&](const sparql::Node &n) -> std::optional<Term> {
      Term t;
      if (const auto *fixed = std::get_if<Term>(&n)) {
        t = *fixed;
      } else {
        const std::string &name = std::get<sparql::Variable>(n).name;
        auto it = column.find(name);
        if (it == column.end() || !row[it->second]) {
          if (reason.empty()) reason = "row " + std::to_string(r) + ": ?" + name + " unbound";
          return std::nullopt;
        }
        t = *row[it->second];
      }
      if (t.is_blank()) {
        auto [it, fresh] = blanks.try_emplace(t.value());
        if (fresh) it->second = store.FreshBlank();
        return it->second;
      }
      return alignment.Rewrite(t);
    };
    std::vector<rdf::Triple> triples;
    for (const sparql::TriplePattern &t : templ) {
      auto s = ground(t.subject), p = ground(t.predicate), o = ground(t.object);
      if (!s || !p || !o) continue;
      if (s->is_literal() || !p->is_iri()) {
        if (reason.empty()) reason = "row " + std::to_string(r) + ": ill-formed triple";
        continue;
      }
      triples.push_back({*s, *p, *o});
    }
    if (!reason.empty()) {
      ++report.skipped_rows;
      report.skip_reasons.push_back(std::move(reason));
      continue;
    }
    ++report.ingested_rows;
    for (const rdf::Triple &t : triples) {
      report.ingested_quads += store.Insert(t, data);
      if (produced != nullptr) produced->push_back({t.subject, t.predicate, t.object, data});
    }
  }

  if (provenance && report.ingested_quads > 0) {
    std::time_t secs = std::chrono::system_clock::to_time_t(provenance->timestamp);
    std::tm tm{};
    gmtime_r(&secs, &tm);
    char stamp[32];
    std::strftime(stamp, sizeof stamp, "%Y%m%dT%H%M%SZ", &tm);
    const std::string &url = provenance->source_url;
    unsigned long crc = crc32(0L, reinterpret_cast<const Bytef *>(url.data()),
                              static_cast<uInt>(url.size()));
    char batch[96];
    std::snprintf(batch, sizeof batch, "urn:wikikb:import:%s-%08lx", stamp, crc);
    Term source = rdf::IsAbsoluteIri(url) ? Term::Iri(url) : Term::Literal(url);
    rdf::Quad q{Term::Iri(batch), Term::Iri(vocab::kDctermsSource), source, data};
    store.Insert(q);
    if (produced != nullptr) produced->push_back(q);
  }
  return report;
}

}  // namespace wikikb::federation
