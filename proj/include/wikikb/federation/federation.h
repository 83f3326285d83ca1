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

#ifndef WIKIKB_FEDERATION_FEDERATION_H_
#define WIKIKB_FEDERATION_FEDERATION_H_

#include <chrono>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wikikb/rdf/store.h"
#include "wikikb/sparql/ast.h"
#include "wikikb/sparql/eval.h"

namespace wikikb::federation {

struct EndpointConfig {
  std::string url;
  std::chrono::milliseconds timeout{10000};

  // Throws InvalidArgumentError unless the URL is http(s) with a host.
  void Validate() const;
};

// Moves a query to an endpoint and returns the raw results document.
class SparqlTransport {
 public:
  virtual ~SparqlTransport() = default;
  virtual std::string Execute(const EndpointConfig &endpoint, const std::string &query) = 0;
};

// SPARQL protocol over HTTP(S): GET with a `query` parameter, JSON results.
// Throws NetworkError / TimeoutError.
class HttpTransport : public SparqlTransport {
 public:
  std::string Execute(const EndpointConfig &endpoint, const std::string &query) override;
};

// Replays a recorded response regardless of the query.
class FixtureTransport : public SparqlTransport {
 public:
  explicit FixtureTransport(std::string body) : body_(std::move(body)) {}
  // Throws StorageError when the file cannot be read.
  static FixtureTransport FromFile(const std::string &path);

  std::string Execute(const EndpointConfig &endpoint, const std::string &query) override;

 private:
  std::string body_;
};

// Sends a SELECT query and decodes the JSON results. Throws ParseError for a
// query outside the subset, InvalidArgumentError for a non-SELECT form,
// NetworkError / TimeoutError from the transport and MalformedResponseError.
sparql::SolutionSet FetchSelect(SparqlTransport &transport, const EndpointConfig &endpoint,
                                const std::string &query_text);

class AlignmentMap {
 public:
  // `local_namespaces`: prefixes mapped IRIs must start with.
  explicit AlignmentMap(std::vector<std::string> local_namespaces = {});

  // Throws InvalidArgumentError when the target is outside the local
  // namespaces or the mapping would close a cycle.
  void AddClass(const std::string &external, const std::string &local);
  void AddProperty(const std::string &external, const std::string &local);

  const std::map<std::string, std::string> &classes() const { return classes_; }
  const std::map<std::string, std::string> &properties() const { return properties_; }

  // Follows mappings to their end; unmapped IRIs come back unchanged.
  rdf::Term Rewrite(const rdf::Term &term) const;

 private:
  void Add(std::map<std::string, std::string> &table, const std::string &external,
           const std::string &local);
  const std::string *Next(const std::string &iri) const;

  std::vector<std::string> local_namespaces_;
  std::map<std::string, std::string> classes_;
  std::map<std::string, std::string> properties_;
};

// Lines of "external-IRI<TAB>local-IRI"; '#' starts a comment. A local IRI
// whose last segment starts with an upper-case letter is a class mapping,
// otherwise a property mapping. Throws ParseError.
AlignmentMap ParseAlignment(std::string_view text, std::vector<std::string> local_namespaces);

struct ImportReport {
  std::size_t fetched_rows = 0;
  std::size_t ingested_rows = 0;
  std::size_t ingested_quads = 0;
  std::size_t skipped_rows = 0;
  std::vector<std::string> skip_reasons;  // one per skipped row
};

struct ImportProvenance {
  std::string source_url;
  std::chrono::system_clock::time_point timestamp;
};

// Instantiates `templ` once per row, rewrites every IRI through `alignment`
// and inserts into the data warehouse. Rows leaving a template variable
// unbound, or producing an ill-formed triple, are skipped. When quads were
// added and `provenance` is given, one quad links a batch node to the source
// URL; the batch IRI carries the timestamp. `produced`, when given, receives
// every quad the import wrote or found already present.
ImportReport AlignAndIngest(rdf::GraphStore &store, const sparql::SolutionSet &solutions,
                            const AlignmentMap &alignment,
                            const std::vector<sparql::TriplePattern> &templ,
                            const std::optional<ImportProvenance> &provenance = std::nullopt,
                            std::vector<rdf::Quad> *produced = nullptr);

}  // namespace wikikb::federation

#endif  // WIKIKB_FEDERATION_FEDERATION_H_
