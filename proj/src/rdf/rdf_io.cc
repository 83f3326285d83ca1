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

#include "wikikb/rdf/rdf_io.h"

#include <algorithm>
#include <cctype>
#include <map>
#include <unordered_map>

#include "wikikb/error.h"
#include "wikikb/rdf/vocab.h"
#include "wikikb/text.h"

namespace wikikb::rdf {

RdfFormat ParseFormatName(std::string_view name) {
  if (name == "ntriples" || name == "nt") return RdfFormat::kNTriples;
  if (name == "turtle" || name == "ttl") return RdfFormat::kTurtle;
  throw InvalidArgumentError("unknown RDF format: " + std::string(name));
}

namespace {

bool IsPnChar(char c) {
  unsigned char u = static_cast<unsigned char>(c);
  return std::isalnum(u) || c == '_' || c == '-' || u >= 0x80;
}

class RdfParser {
 public:
  RdfParser(std::string_view text, RdfFormat format,
            const BlankAllocator &blanks)
      : text_(text), strict_(format == RdfFormat::kNTriples), blanks_(blanks) {}

  std::vector<Triple> Parse() {
    for (;;) {
      SkipWs();
      if (AtEnd()) break;
      if (!strict_ && (Peek() == '@' || LooksLikeKeyword("PREFIX"))) {
        ParsePrefix();
        continue;
      }
      ParseTriples();
    }
    return std::move(out_);
  }

 private:
  [[noreturn]] void Fail(const std::string &msg) const { FailAt(msg, pos_); }
  [[noreturn]] void FailAt(const std::string &msg, std::size_t at) const {
    SourcePos p = PositionAt(text_, at);
    throw ParseError(msg, p.line, p.column, at);
  }

  bool AtEnd() const { return pos_ >= text_.size(); }
  char Peek(std::size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }

  void SkipWs() {
    while (!AtEnd()) {
      char c = Peek();
      if (c == '#') {
        while (!AtEnd() && Peek() != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  void Expect(char c) {
    SkipWs();
    if (Peek() != c) Fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  bool LooksLikeKeyword(std::string_view kw) const {
    if (text_.size() - pos_ < kw.size()) return false;
    for (std::size_t i = 0; i < kw.size(); ++i) {
      if (std::toupper(static_cast<unsigned char>(text_[pos_ + i])) != kw[i])
        return false;
    }
    char after = Peek(kw.size());
    return after == ' ' || after == '\t';
  }

  void ParsePrefix() {
    bool at_form = Peek() == '@';
    if (at_form) {
      if (text_.substr(pos_, 7) != "@prefix") Fail("unsupported directive");
      pos_ += 7;
    } else {
      pos_ += 6;
    }
    SkipWs();
    std::size_t start = pos_;
    while (!AtEnd() && Peek() != ':') {
      if (!IsPnChar(Peek()) && Peek() != '.') Fail("bad prefix name");
      ++pos_;
    }
    if (AtEnd()) Fail("expected ':' in prefix declaration");
    std::string prefix(text_.substr(start, pos_ - start));
    ++pos_;
    SkipWs();
    std::string iri = ParseIriRef();
    prefixes_[prefix] = iri;
    if (at_form) Expect('.');
  }

  std::string ParseIriRef() {
    if (Peek() != '<') Fail("expected IRI");
    std::size_t start = pos_;
    ++pos_;
    std::string iri;
    while (!AtEnd() && Peek() != '>') {
      char c = Peek();
      if (c == '\\') {
        ++pos_;
        iri += ParseUnicodeEscape();
        continue;
      }
      if (static_cast<unsigned char>(c) <= 0x20 || c == '<' || c == '"' ||
          c == '{' || c == '}' || c == '|' || c == '^' || c == '`') {
        Fail("invalid character in IRI");
      }
      iri += c;
      ++pos_;
    }
    if (AtEnd()) FailAt("unterminated IRI", start);
    ++pos_;
    if (!IsAbsoluteIri(iri)) FailAt("relative IRI not allowed: " + iri, start);
    return iri;
  }

  std::string ParseUnicodeEscape() {
    char kind = Peek();
    std::size_t digits = kind == 'u' ? 4 : kind == 'U' ? 8 : 0;
    if (digits == 0) Fail("bad escape in IRI");
    ++pos_;
    std::uint32_t cp = 0;
    for (std::size_t i = 0; i < digits; ++i) {
      char c = Peek();
      if (!std::isxdigit(static_cast<unsigned char>(c))) Fail("bad \\u escape");
      cp = cp * 16 + static_cast<std::uint32_t>(
                         std::isdigit(static_cast<unsigned char>(c))
                             ? c - '0'
                             : std::tolower(static_cast<unsigned char>(c)) -
                                   'a' + 10);
      ++pos_;
    }
    std::string out;
    AppendUtf8(cp, &out);
    return out;
  }

  Term ParsePrefixedName() {
    std::size_t start = pos_;
    while (!AtEnd() && Peek() != ':' && (IsPnChar(Peek()) || Peek() == '.'))
      ++pos_;
    if (Peek() != ':') FailAt("expected term", start);
    std::string prefix(text_.substr(start, pos_ - start));
    ++pos_;
    std::size_t local_start = pos_;
    while (!AtEnd() && (IsPnChar(Peek()) || Peek() == '.' || Peek() == ':' ||
                        Peek() == '%')) {
      ++pos_;
    }
    while (pos_ > local_start && text_[pos_ - 1] == '.') --pos_;
    auto it = prefixes_.find(prefix);
    if (it == prefixes_.end()) FailAt("undeclared prefix '" + prefix + "'", start);
    std::string iri =
        it->second + std::string(text_.substr(local_start, pos_ - local_start));
    if (!IsAbsoluteIri(iri)) FailAt("relative IRI not allowed: " + iri, start);
    return Term::Iri(iri);
  }

  Term ParseBlank() {
    std::size_t start = pos_;
    pos_ += 2;
    std::size_t label_start = pos_;
    while (!AtEnd() && (IsPnChar(Peek()) || Peek() == '.')) ++pos_;
    while (pos_ > label_start && text_[pos_ - 1] == '.') --pos_;
    if (pos_ == label_start) FailAt("empty blank node label", start);
    std::string label(text_.substr(label_start, pos_ - label_start));
    auto it = blank_map_.find(label);
    if (it != blank_map_.end()) return it->second;
    Term t = blanks_(label);
    blank_map_.emplace(label, t);
    return t;
  }

  Term ParseIriTerm() {
    if (Peek() == '<') return Term::Iri(ParseIriRef());
    if (strict_) Fail("expected IRI");
    return ParsePrefixedName();
  }

  Term ParseSubject() {
    SkipWs();
    if (Peek() == '_' && Peek(1) == ':') return ParseBlank();
    return ParseIriTerm();
  }

  Term ParseVerb() {
    SkipWs();
    if (!strict_ && Peek() == 'a' &&
        (std::isspace(static_cast<unsigned char>(Peek(1))) || Peek(1) == '<')) {
      ++pos_;
      return Term::Iri(vocab::kRdfType);
    }
    return ParseIriTerm();
  }

  std::string ParseQuoted() {
    char quote = Peek();
    std::size_t start = pos_;
    ++pos_;
    std::string out;
    for (;;) {
      if (AtEnd()) FailAt("unterminated string", start);
      char c = Peek();
      if (c == quote) {
        ++pos_;
        break;
      }
      if (c == '\n' || c == '\r') FailAt("newline in string", pos_);
      if (c == '\\') {
        ++pos_;
        char e = Peek();
        switch (e) {
          case 't': out += '\t'; ++pos_; break;
          case 'b': out += '\b'; ++pos_; break;
          case 'n': out += '\n'; ++pos_; break;
          case 'r': out += '\r'; ++pos_; break;
          case 'f': out += '\f'; ++pos_; break;
          case '"': out += '"'; ++pos_; break;
          case '\'': out += '\''; ++pos_; break;
          case '\\': out += '\\'; ++pos_; break;
          case 'u':
          case 'U': out += ParseUnicodeEscape(); break;
          default: Fail("bad escape in string");
        }
        continue;
      }
      out += c;
      ++pos_;
    }
    return out;
  }

  Term ParseObject() {
    SkipWs();
    char c = Peek();
    if (c == '_' && Peek(1) == ':') return ParseBlank();
    if (c == '"' || (!strict_ && c == '\'')) {
      std::string lexical = ParseQuoted();
      if (Peek() == '@') {
        ++pos_;
        std::size_t start = pos_;
        while (!AtEnd() &&
               (std::isalnum(static_cast<unsigned char>(Peek())) || Peek() == '-'))
          ++pos_;
        if (pos_ == start) Fail("empty language tag");
        return Term::LangString(lexical, text_.substr(start, pos_ - start));
      }
      if (Peek() == '^' && Peek(1) == '^') {
        pos_ += 2;
        Term dt = ParseIriTerm();
        return Term::Typed(lexical, dt.value());
      }
      return Term::Literal(lexical);
    }
    if (!strict_ && (std::isdigit(static_cast<unsigned char>(c)) || c == '+' ||
                     c == '-' || (c == '.' && std::isdigit(static_cast<unsigned char>(Peek(1)))))) {
      return ParseNumber();
    }
    if (!strict_ && (text_.substr(pos_, 4) == "true" || text_.substr(pos_, 5) == "false")) {
      std::size_t len = Peek() == 't' ? 4 : 5;
      if (!IsPnChar(Peek(len)) && Peek(len) != ':') {
        std::string lex(text_.substr(pos_, len));
        pos_ += len;
        return Term::Typed(lex, vocab::kXsdBoolean);
      }
    }
    return ParseIriTerm();
  }

  Term ParseNumber() {
    std::size_t start = pos_;
    if (Peek() == '+' || Peek() == '-') ++pos_;
    bool digits = false, dot = false, exp = false;
    while (std::isdigit(static_cast<unsigned char>(Peek()))) { ++pos_; digits = true; }
    if (Peek() == '.' && std::isdigit(static_cast<unsigned char>(Peek(1)))) {
      dot = true;
      ++pos_;
      while (std::isdigit(static_cast<unsigned char>(Peek()))) ++pos_;
      digits = true;
    }
    if (digits && (Peek() == 'e' || Peek() == 'E')) {
      exp = true;
      ++pos_;
      if (Peek() == '+' || Peek() == '-') ++pos_;
      if (!std::isdigit(static_cast<unsigned char>(Peek()))) Fail("bad exponent");
      while (std::isdigit(static_cast<unsigned char>(Peek()))) ++pos_;
    }
    if (!digits) FailAt("bad number", start);
    std::string lex(text_.substr(start, pos_ - start));
    if (exp) return Term::Typed(lex, vocab::kXsdDouble);
    if (dot) return Term::Typed(lex, vocab::kXsdDecimal);
    return Term::Typed(lex, vocab::kXsdInteger);
  }

  void ParseTriples() {
    std::size_t line_start = pos_;
    Term subject = ParseSubject();
    for (;;) {
      Term predicate = ParseVerb();
      for (;;) {
        Term object = ParseObject();
        out_.push_back(Triple{subject, predicate, object});
        SkipWs();
        if (!strict_ && Peek() == ',') {
          ++pos_;
          continue;
        }
        break;
      }
      SkipWs();
      if (!strict_ && Peek() == ';') {
        while (Peek() == ';') {
          ++pos_;
          SkipWs();
        }
        if (Peek() == '.') break;
        continue;
      }
      break;
    }
    if (strict_) {
      for (std::size_t i = line_start; i < pos_; ++i) {
        if (text_[i] == '\n') FailAt("statement spans lines", i);
      }
    }
    Expect('.');
  }

  std::string_view text_;
  bool strict_;
  const BlankAllocator &blanks_;
  std::size_t pos_ = 0;
  std::map<std::string, std::string> prefixes_;
  std::unordered_map<std::string, Term> blank_map_;
  std::vector<Triple> out_;
};

}  // namespace

std::vector<Triple> ParseRdf(std::string_view text, RdfFormat format,
                             const BlankAllocator &blanks) {
  return RdfParser(text, format, blanks).Parse();
}

std::size_t LoadRdf(GraphStore &store, std::string_view text, RdfFormat format,
                    const Term &graph) {
  if (!store.IsRegistered(graph)) throw UnregisteredGraphError(graph.value());
  BlankAllocator blanks = [&](std::string_view) { return store.FreshBlank(); };
  std::vector<Triple> triples = ParseRdf(text, format, blanks);
  std::size_t added = 0;
  for (const Triple &t : triples) {
    if (store.Insert(t, graph)) ++added;
  }
  return added;
}

std::string SerializeNTriples(std::vector<Triple> triples) {
  std::sort(triples.begin(), triples.end());
  triples.erase(std::unique(triples.begin(), triples.end()), triples.end());
  std::string out;
  for (const Triple &t : triples) {
    out += t.subject.ToNTriples();
    out += ' ';
    out += t.predicate.ToNTriples();
    out += ' ';
    out += t.object.ToNTriples();
    out += " .\n";
  }
  return out;
}

std::string SerializeNTriples(const GraphStore &store, const Term &graph) {
  if (!store.IsRegistered(graph)) throw UnregisteredGraphError(graph.value());
  std::vector<Triple> triples;
  for (const Quad &q : store.Match(std::nullopt, std::nullopt, std::nullopt, graph)) {
    triples.push_back(q.triple());
  }
  return SerializeNTriples(std::move(triples));
}

}  // namespace wikikb::rdf
