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

#ifndef WIKIKB_RDF_TERM_H_
#define WIKIKB_RDF_TERM_H_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace wikikb::rdf {

enum class TermKind : std::uint8_t { kIri = 0, kBlank = 1, kLiteral = 2 };

// An RDF term. For IRIs `value` holds the absolute IRI, for blank nodes the
// local label (without "_:"), for literals the lexical form. Literals always
// carry a datatype; language-tagged literals use rdf:langString.
//
// The ordering (kind, value, datatype, lang) is the canonical serialization
// order.
class Term {
 public:
  Term() = default;

  // Throws InvalidArgumentError for relative IRIs.
  static Term Iri(std::string_view iri);
  static Term Blank(std::string_view label);
  static Term Literal(std::string_view lexical);
  static Term Typed(std::string_view lexical, std::string_view datatype);
  static Term LangString(std::string_view lexical, std::string_view lang);
  static Term Integer(long long value);

  TermKind kind() const { return kind_; }
  bool is_iri() const { return kind_ == TermKind::kIri; }
  bool is_blank() const { return kind_ == TermKind::kBlank; }
  bool is_literal() const { return kind_ == TermKind::kLiteral; }

  const std::string &value() const { return value_; }
  const std::string &datatype() const { return datatype_; }
  const std::string &lang() const { return lang_; }

  // N-Triples form: <iri>, _:label, "lex", "lex"@en, "lex"^^<dt>.
  std::string ToNTriples() const;

  friend auto operator<=>(const Term &, const Term &) = default;
  friend bool operator==(const Term &, const Term &) = default;

 private:
  TermKind kind_ = TermKind::kIri;
  std::string value_;
  std::string datatype_;
  std::string lang_;
};

struct TermHash {
  std::size_t operator()(const Term &t) const noexcept;
};

// True if `iri` has a scheme followed by ':'.
bool IsAbsoluteIri(std::string_view iri);

// Escapes a lexical form for a quoted N-Triples string.
std::string EscapeString(std::string_view text);

}  // namespace wikikb::rdf

#endif  // WIKIKB_RDF_TERM_H_
