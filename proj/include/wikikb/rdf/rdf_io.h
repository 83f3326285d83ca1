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

#ifndef WIKIKB_RDF_RDF_IO_H_
#define WIKIKB_RDF_RDF_IO_H_

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "wikikb/rdf/store.h"

namespace wikikb::rdf {

enum class RdfFormat { kNTriples, kTurtle };

// Parses "ntriples" / "turtle"; throws InvalidArgumentError otherwise.
RdfFormat ParseFormatName(std::string_view name);

// Maps a document-local blank label to a store-level term. Called once per
// distinct label per parse.
using BlankAllocator = std::function<Term(std::string_view label)>;

// Parses a whole document. Throws ParseError with line/column.
//
// The Turtle subset covers @prefix/PREFIX, IRIs, prefixed names, `a`, blank
// node labels, quoted literals with @lang or ^^datatype, bare numbers and
// booleans, predicate-object lists (;) and object lists (,).
std::vector<Triple> ParseRdf(std::string_view text, RdfFormat format,
                             const BlankAllocator &blanks);

// Parses `text` and inserts every statement into `graph`. Nothing is inserted
// if parsing fails. Returns the number of newly added quads. Blank node
// labels are scoped to this call.
std::size_t LoadRdf(GraphStore &store, std::string_view text, RdfFormat format,
                    const Term &graph);

// Canonical N-Triples: one statement per line sorted by (subject, predicate,
// object) term order.
std::string SerializeNTriples(const GraphStore &store, const Term &graph);
std::string SerializeNTriples(std::vector<Triple> triples);

}  // namespace wikikb::rdf

#endif  // WIKIKB_RDF_RDF_IO_H_
