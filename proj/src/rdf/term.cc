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

#include "wikikb/rdf/term.h"

#include <cctype>

#include "wikikb/error.h"
#include "wikikb/rdf/vocab.h"

namespace wikikb::rdf {

bool IsAbsoluteIri(std::string_view iri) {
  if (iri.empty() || !std::isalpha(static_cast<unsigned char>(iri[0]))) {
    return false;
  }
  for (std::size_t i = 1; i < iri.size(); ++i) {
    unsigned char c = iri[i];
    if (c == ':') return true;
    if (!std::isalnum(c) && c != '+' && c != '-' && c != '.') return false;
  }
  return false;
}

Term Term::Iri(std::string_view iri) {
  if (!IsAbsoluteIri(iri)) {
    throw InvalidArgumentError("relative or malformed IRI: " +
                               std::string(iri));
  }
  Term t;
  t.kind_ = TermKind::kIri;
  t.value_ = iri;
  return t;
}

Term Term::Blank(std::string_view label) {
  Term t;
  t.kind_ = TermKind::kBlank;
  t.value_ = label;
  return t;
}

Term Term::Literal(std::string_view lexical) {
  return Typed(lexical, vocab::kXsdString);
}

Term Term::Typed(std::string_view lexical, std::string_view datatype) {
  Term t;
  t.kind_ = TermKind::kLiteral;
  t.value_ = lexical;
  t.datatype_ = datatype;
  return t;
}

Term Term::LangString(std::string_view lexical, std::string_view lang) {
  Term t = Typed(lexical, vocab::kRdfLangString);
  t.lang_ = lang;
  return t;
}

Term Term::Integer(long long value) {
  return Typed(std::to_string(value), vocab::kXsdInteger);
}

std::string EscapeString(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '"': out += "\\\""; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out;
}

std::string Term::ToNTriples() const {
  switch (kind_) {
    case TermKind::kIri:
      return "<" + value_ + ">";
    case TermKind::kBlank:
      return "_:" + value_;
    case TermKind::kLiteral: {
      std::string out = "\"" + EscapeString(value_) + "\"";
      if (!lang_.empty()) {
        out += "@" + lang_;
      } else if (datatype_ != vocab::kXsdString) {
        out += "^^<" + datatype_ + ">";
      }
      return out;
    }
  }
  return {};
}

std::size_t TermHash::operator()(const Term &t) const noexcept {
  std::size_t h = std::hash<std::string>()(t.value());
  h ^= std::hash<std::string>()(t.datatype()) + 0x9e3779b97f4a7c15ULL +
       (h << 6) + (h >> 2);
  h ^= std::hash<std::string>()(t.lang()) + 0x9e3779b97f4a7c15ULL + (h << 6) +
       (h >> 2);
  return h ^ static_cast<std::size_t>(t.kind());
}

}  // namespace wikikb::rdf
