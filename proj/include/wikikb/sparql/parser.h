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

#ifndef WIKIKB_SPARQL_PARSER_H_
#define WIKIKB_SPARQL_PARSER_H_

#include <map>
#include <string>
#include <string_view>

#include "wikikb/error.h"
#include "wikikb/sparql/ast.h"

namespace wikikb::sparql {

class UnknownPrefixError : public ParseError {
 public:
  UnknownPrefixError(const std::string &prefix, std::size_t line,
                     std::size_t column, std::size_t offset)
      : ParseError("unknown prefix '" + prefix + ":'", line, column, offset),
        prefix_(prefix) {}
  const std::string &prefix() const { return prefix_; }

 private:
  std::string prefix_;
};

struct ParseOptions {
  // Prefixes usable without a PREFIX declaration. Declarations in the text
  // override them.
  std::map<std::string, std::string> predeclared;
  // Relative IRI references are appended to this base.
  std::string base = "http://example.org/wiki/";

  // rdf, rdfs, owl, xsd, huto, usco, dcterms plus the wiki namespaces
  // data (pages), prop and cat under `base_iri`.
  static ParseOptions Standard(const std::string &base_iri = "http://example.org/wiki/");
};

// Parses one query of the supported fragment:
//   PREFIX*  SELECT (* | ?v+) WHERE? {..}
//          | CONSTRUCT {template} WHERE? {..}
//          | DESCRIBE (* | (?v|iri)+) (WHERE? {..})?
//          | INSERT {template} WHERE {..}
//   (VALUES ...)?
// Group elements: triples (with ';' ',' and forward / | paths), {..} UNION
// {..}, OPTIONAL, FILTER NOT EXISTS, FILTER (comparison), GRAPH, VALUES.
// The '.' between triple statements may be omitted. `#` starts a comment.
Query ParseQuery(std::string_view text,
                 const ParseOptions &options = ParseOptions::Standard());

// Parses a bare triple template such as "?o a <C> . ?o <p> ?l".
std::vector<TriplePattern> ParseTemplate(
    std::string_view text, const ParseOptions &options = ParseOptions::Standard());

}  // namespace wikikb::sparql

#endif  // WIKIKB_SPARQL_PARSER_H_
