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

#include "wikikb/sparql/parser.h"

#include <algorithm>
#include <cctype>

#include "wikikb/rdf/vocab.h"
#include "wikikb/text.h"

namespace wikikb::sparql {

using rdf::Term;

ParseOptions ParseOptions::Standard(const std::string &base_iri) {
  std::string base = base_iri;
  if (!base.empty() && base.back() != '/' && base.back() != '#') base += '/';
  ParseOptions o;
  o.base = base;
  o.predeclared = {
      {"rdf", std::string(vocab::kRdf)},   {"rdfs", std::string(vocab::kRdfs)},
      {"owl", std::string(vocab::kOwl)},   {"xsd", std::string(vocab::kXsd)},
      {"huto", std::string(vocab::kHuto)}, {"usco", std::string(vocab::kUsco)},
      {"dcterms", std::string(vocab::kDcterms)},
      {"data", base + "page/"},            {"prop", base + "prop/"},
      {"cat", base + "category/"},
  };
  return o;
}

namespace {

enum class Tok {
  kEnd, kIriRef, kPName, kVar, kBlank, kString, kInteger, kDecimal, kDouble,
  kLangTag, kWord, kPunct,
};

struct Token {
  Tok kind = Tok::kEnd;
  std::string text;  // IRI, var name, string lexical, word, punct
  std::string prefix;  // kPName
  std::size_t offset = 0;
};

bool IsNameStart(char c) {
  unsigned char u = static_cast<unsigned char>(c);
  return std::isalpha(u) || c == '_' || u >= 0x80;
}
bool IsNameChar(char c) {
  unsigned char u = static_cast<unsigned char>(c);
  return std::isalnum(u) || c == '_' || c == '-' || u >= 0x80;
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> Run() {
    std::vector<Token> out;
    for (;;) {
      SkipWs();
      Token t;
      t.offset = pos_;
      if (pos_ >= text_.size()) {
        out.push_back(t);
        return out;
      }
      Next(&t);
      out.push_back(std::move(t));
    }
  }

  [[noreturn]] void Fail(const std::string &msg, std::size_t at) const {
    SourcePos p = PositionAt(text_, at);
    throw ParseError(msg, p.line, p.column, at);
  }

 private:
  char Peek(std::size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }

  void SkipWs() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  bool TryIriRef(Token *t) {
    std::size_t i = pos_ + 1;
    std::string iri;
    while (i < text_.size()) {
      char c = text_[i];
      if (c == '>') {
        t->kind = Tok::kIriRef;
        t->text = iri;
        pos_ = i + 1;
        return true;
      }
      if (static_cast<unsigned char>(c) <= 0x20 || c == '<' || c == '"' || c == '{' ||
          c == '}' || c == '|' || c == '^' || c == '`' || c == '\\') {
        return false;
      }
      iri += c;
      ++i;
    }
    return false;
  }

  void LexString(Token *t) {
    char quote = Peek();
    std::size_t start = pos_;
    ++pos_;
    std::string out;
    for (;;) {
      if (pos_ >= text_.size()) Fail("unterminated string", start);
      char c = text_[pos_];
      if (c == quote) {
        ++pos_;
        break;
      }
      if (c == '\n') Fail("newline in string", pos_);
      if (c == '\\') {
        char e = Peek(1);
        pos_ += 2;
        switch (e) {
          case 't': out += '\t'; break;
          case 'n': out += '\n'; break;
          case 'r': out += '\r'; break;
          case 'b': out += '\b'; break;
          case 'f': out += '\f'; break;
          case '"': out += '"'; break;
          case '\'': out += '\''; break;
          case '\\': out += '\\'; break;
          case 'u':
          case 'U': {
            std::size_t n = e == 'u' ? 4 : 8;
            std::uint32_t cp = 0;
            for (std::size_t k = 0; k < n; ++k) {
              char h = Peek();
              if (!std::isxdigit(static_cast<unsigned char>(h))) Fail("bad \\u escape", pos_);
              cp = cp * 16 + static_cast<std::uint32_t>(
                                 std::isdigit(static_cast<unsigned char>(h))
                                     ? h - '0'
                                     : std::tolower(static_cast<unsigned char>(h)) - 'a' + 10);
              ++pos_;
            }
            AppendUtf8(cp, &out);
            break;
          }
          default: Fail("bad escape in string", pos_ - 2);
        }
        continue;
      }
      out += c;
      ++pos_;
    }
    t->kind = Tok::kString;
    t->text = std::move(out);
  }

  void LexNumber(Token *t) {
    std::size_t start = pos_;
    if (Peek() == '+' || Peek() == '-') ++pos_;
    bool dot = false, exp = false;
    while (std::isdigit(static_cast<unsigned char>(Peek()))) ++pos_;
    if (Peek() == '.' && std::isdigit(static_cast<unsigned char>(Peek(1)))) {
      dot = true;
      ++pos_;
      while (std::isdigit(static_cast<unsigned char>(Peek()))) ++pos_;
    }
    if (Peek() == 'e' || Peek() == 'E') {
      exp = true;
      ++pos_;
      if (Peek() == '+' || Peek() == '-') ++pos_;
      if (!std::isdigit(static_cast<unsigned char>(Peek()))) Fail("bad exponent", pos_);
      while (std::isdigit(static_cast<unsigned char>(Peek()))) ++pos_;
    }
    t->kind = exp ? Tok::kDouble : dot ? Tok::kDecimal : Tok::kInteger;
    t->text = std::string(text_.substr(start, pos_ - start));
  }

  // Prefixed name starting at pos_ (prefix may be empty).
  void LexPName(Token *t) {
    std::size_t start = pos_;
    while (IsNameChar(Peek()) || (Peek() == '.' && IsNameChar(Peek(1)))) ++pos_;
    if (Peek() != ':') Fail("expected ':' in prefixed name", start);
    t->prefix = std::string(text_.substr(start, pos_ - start));
    ++pos_;
    std::size_t local = pos_;
    while (IsNameChar(Peek()) || Peek() == ':' || Peek() == '%' ||
           (Peek() == '.' && (IsNameChar(Peek(1)) || Peek(1) == ':'))) {
      ++pos_;
    }
    t->kind = Tok::kPName;
    t->text = std::string(text_.substr(local, pos_ - local));
  }

  void Next(Token *t) {
    char c = Peek();
    if (c == '<') {
      if (TryIriRef(t)) return;
      t->kind = Tok::kPunct;
      if (Peek(1) == '=') {
        t->text = "<=";
        pos_ += 2;
      } else {
        t->text = "<";
        ++pos_;
      }
      return;
    }
    if (c == '?' || c == '$') {
      std::size_t start = ++pos_;
      while (IsNameChar(Peek())) ++pos_;
      if (pos_ == start) Fail("empty variable name", start - 1);
      t->kind = Tok::kVar;
      t->text = std::string(text_.substr(start, pos_ - start));
      return;
    }
    if (c == '_' && Peek(1) == ':') {
      pos_ += 2;
      std::size_t start = pos_;
      while (IsNameChar(Peek())) ++pos_;
      if (pos_ == start) Fail("empty blank node label", start);
      t->kind = Tok::kBlank;
      t->text = std::string(text_.substr(start, pos_ - start));
      return;
    }
    if (c == '"' || c == '\'') {
      LexString(t);
      return;
    }
    if (c == '@') {
      std::size_t start = ++pos_;
      while (std::isalnum(static_cast<unsigned char>(Peek())) || Peek() == '-') ++pos_;
      if (pos_ == start) Fail("empty language tag", start);
      t->kind = Tok::kLangTag;
      t->text = std::string(text_.substr(start, pos_ - start));
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        ((c == '+' || c == '-' || c == '.') && std::isdigit(static_cast<unsigned char>(Peek(1))))) {
      LexNumber(t);
      return;
    }
    if (c == ':') {
      LexPName(t);
      return;
    }
    if (IsNameStart(c)) {
      std::size_t start = pos_;
      std::size_t i = pos_;
      while (i < text_.size() &&
             (IsNameChar(text_[i]) || (text_[i] == '.' && i + 1 < text_.size() &&
                                       IsNameChar(text_[i + 1])))) {
        ++i;
      }
      if (i < text_.size() && text_[i] == ':') {
        LexPName(t);
        return;
      }
      while (IsNameChar(Peek())) ++pos_;
      t->kind = Tok::kWord;
      t->text = std::string(text_.substr(start, pos_ - start));
      return;
    }
    static const char *kTwo[] = {"^^", "!=", ">=", "&&", "||"};
    for (const char *p : kTwo) {
      if (c == p[0] && Peek(1) == p[1]) {
        t->kind = Tok::kPunct;
        t->text = p;
        pos_ += 2;
        return;
      }
    }
    if (std::string_view("{}().;,|/*=>!").find(c) != std::string_view::npos) {
      t->kind = Tok::kPunct;
      t->text = std::string(1, c);
      ++pos_;
      return;
    }
    Fail(std::string("unexpected character '") + c + "'", pos_);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

bool WordIs(const Token &t, std::string_view kw) {
  if (t.kind != Tok::kWord || t.text.size() != kw.size()) return false;
  for (std::size_t i = 0; i < kw.size(); ++i) {
    if (std::toupper(static_cast<unsigned char>(t.text[i])) != kw[i]) return false;
  }
  return true;
}

class Parser {
 public:
  Parser(std::string_view text, const ParseOptions &options)
      : text_(text), lexer_(text), options_(options) {
    tokens_ = lexer_.Run();
  }

  Query ParseQueryText() {
    Query q;
    ParsePrologue(&q);
    const Token &t = Cur();
    if (WordIs(t, "SELECT")) {
      Advance();
      q.form = QueryForm::kSelect;
      if (IsPunct("*")) {
        Advance();
        q.select_all = true;
      } else {
        if (Cur().kind != Tok::kVar) Fail("expected '*' or variables after SELECT");
        while (Cur().kind == Tok::kVar) {
          q.projection.push_back(Variable{Cur().text});
          Advance();
        }
      }
      if (WordIs(Cur(), "WHERE")) Advance();
      q.where = ParseGroup();
    } else if (WordIs(t, "CONSTRUCT")) {
      Advance();
      q.form = QueryForm::kConstruct;
      q.templ = ParseTemplateBlock();
      if (WordIs(Cur(), "WHERE")) Advance();
      q.where = ParseGroup();
    } else if (WordIs(t, "DESCRIBE")) {
      Advance();
      q.form = QueryForm::kDescribe;
      if (IsPunct("*")) {
        Advance();
        q.select_all = true;
      } else {
        while (Cur().kind == Tok::kVar || Cur().kind == Tok::kIriRef ||
               Cur().kind == Tok::kPName) {
          if (Cur().kind == Tok::kVar) {
            q.describe_targets.emplace_back(Variable{Cur().text});
            Advance();
          } else {
            q.describe_targets.emplace_back(ParseIri());
          }
        }
        if (q.describe_targets.empty()) Fail("expected DESCRIBE targets");
      }
      if (WordIs(Cur(), "WHERE")) {
        Advance();
        q.where = ParseGroup();
      } else if (IsPunct("{")) {
        q.where = ParseGroup();
      }
    } else if (WordIs(t, "INSERT")) {
      Advance();
      q.form = QueryForm::kInsertWhere;
      if (WordIs(Cur(), "DATA")) Fail("INSERT DATA is not supported");
      q.templ = ParseTemplateBlock();
      if (!WordIs(Cur(), "WHERE")) Fail("expected WHERE");
      Advance();
      q.where = ParseGroup();
    } else {
      Fail("expected SELECT, CONSTRUCT, DESCRIBE or INSERT");
    }
    if (WordIs(Cur(), "VALUES")) {
      Advance();
      q.values = ParseValuesBody();
    }
    if (Cur().kind != Tok::kEnd) Fail("unexpected token after query");
    Validate(q);
    return q;
  }

  std::vector<TriplePattern> ParseBareTemplate() {
    ParsePrologue(nullptr);
    std::vector<TriplePattern> out;
    while (Cur().kind != Tok::kEnd) {
      if (IsPunct(".")) {
        Advance();
        continue;
      }
      ParseTriplesStatement(&out, /*allow_paths=*/false, /*template_mode=*/true);
    }
    return out;
  }

 private:
  const Token &Cur() const { return tokens_[index_]; }
  void Advance() {
    if (index_ + 1 < tokens_.size()) ++index_;
  }
  bool IsPunct(std::string_view p) const {
    return Cur().kind == Tok::kPunct && Cur().text == p;
  }

  [[noreturn]] void Fail(const std::string &msg) const {
    std::size_t at = Cur().offset;
    SourcePos p = PositionAt(text_, at);
    std::string where = Cur().kind == Tok::kEnd ? " (end of input)" : "";
    throw ParseError(msg + where, p.line, p.column, at);
  }

  void Expect(std::string_view p) {
    if (!IsPunct(p)) Fail("expected '" + std::string(p) + "'");
    Advance();
  }

  void ParsePrologue(Query *q) {
    while (WordIs(Cur(), "PREFIX")) {
      Advance();
      if (Cur().kind != Tok::kPName || !Cur().text.empty()) Fail("expected prefix name");
      std::string prefix = Cur().prefix;
      Advance();
      if (Cur().kind != Tok::kIriRef) Fail("expected IRI in PREFIX");
      if (!rdf::IsAbsoluteIri(Cur().text)) Fail("PREFIX IRI must be absolute");
      declared_[prefix] = Cur().text;
      if (q != nullptr) q->prefixes[prefix] = Cur().text;
      Advance();
    }
  }

  Term ParseIri() {
    const Token &t = Cur();
    if (t.kind == Tok::kIriRef) {
      Term iri = Term::Iri(rdf::IsAbsoluteIri(t.text) ? t.text : options_.base + t.text);
      Advance();
      return iri;
    }
    if (t.kind == Tok::kPName) {
      std::string ns;
      if (auto it = declared_.find(t.prefix); it != declared_.end()) {
        ns = it->second;
      } else if (auto it2 = options_.predeclared.find(t.prefix);
                 it2 != options_.predeclared.end()) {
        ns = it2->second;
      } else {
        SourcePos p = PositionAt(text_, t.offset);
        throw UnknownPrefixError(t.prefix, p.line, p.column, t.offset);
      }
      Term iri = Term::Iri(ns + t.text);
      Advance();
      return iri;
    }
    Fail("expected IRI");
  }

  bool AtIri() const { return Cur().kind == Tok::kIriRef || Cur().kind == Tok::kPName; }

  // Term or variable in subject/object position.
  Node ParseVarOrTerm(bool template_mode) {
    const Token &t = Cur();
    switch (t.kind) {
      case Tok::kVar: {
        Variable v{t.text};
        Advance();
        return v;
      }
      case Tok::kBlank: {
        if (template_mode) Fail("blank nodes are not allowed in templates");
        Variable v{"_:" + t.text};
        Advance();
        return v;
      }
      case Tok::kIriRef:
      case Tok::kPName:
        return ParseIri();
      case Tok::kString: {
        std::string lexical = t.text;
        Advance();
        if (Cur().kind == Tok::kLangTag) {
          Term lit = Term::LangString(lexical, Cur().text);
          Advance();
          return lit;
        }
        if (IsPunct("^^")) {
          Advance();
          Term dt = ParseIri();
          return Term::Typed(lexical, dt.value());
        }
        return Term::Literal(lexical);
      }
      case Tok::kInteger: {
        Term lit = Term::Typed(t.text, vocab::kXsdInteger);
        Advance();
        return lit;
      }
      case Tok::kDecimal: {
        Term lit = Term::Typed(t.text, vocab::kXsdDecimal);
        Advance();
        return lit;
      }
      case Tok::kDouble: {
        Term lit = Term::Typed(t.text, vocab::kXsdDouble);
        Advance();
        return lit;
      }
      case Tok::kWord:
        if (WordIs(t, "TRUE") || WordIs(t, "FALSE")) {
          std::string lex = WordIs(t, "TRUE") ? "true" : "false";
          Advance();
          return Term::Typed(lex, vocab::kXsdBoolean);
        }
        break;
      default:
        break;
    }
    Fail("expected variable or term");
  }

  PropertyPath ParsePathPrimary() {
    if (IsPunct("(")) {
      Advance();
      PropertyPath p = ParsePathAlternative();
      Expect(")");
      return p;
    }
    PropertyPath link;
    if (Cur().kind == Tok::kWord && Cur().text == "a") {
      Advance();
      link.iri = Term::Iri(vocab::kRdfType);
      return link;
    }
    if (!AtIri()) Fail("expected IRI in property path");
    link.iri = ParseIri();
    return link;
  }

  PropertyPath ParsePathSequence() {
    PropertyPath first = ParsePathPrimary();
    if (!IsPunct("/")) return first;
    PropertyPath seq;
    seq.kind = PropertyPath::Kind::kSequence;
    seq.parts.push_back(std::move(first));
    while (IsPunct("/")) {
      Advance();
      seq.parts.push_back(ParsePathPrimary());
    }
    return seq;
  }

  PropertyPath ParsePathAlternative() {
    PropertyPath first = ParsePathSequence();
    if (!IsPunct("|")) return first;
    PropertyPath alt;
    alt.kind = PropertyPath::Kind::kAlternative;
    alt.parts.push_back(std::move(first));
    while (IsPunct("|")) {
      Advance();
      alt.parts.push_back(ParsePathSequence());
    }
    return alt;
  }

  // Returns the predicate node and, for complex paths, the path.
  std::pair<Node, std::optional<PropertyPath>> ParseVerb(bool allow_paths) {
    if (Cur().kind == Tok::kVar) {
      Variable v{Cur().text};
      Advance();
      return {v, std::nullopt};
    }
    if (!allow_paths) {
      if (Cur().kind == Tok::kWord && Cur().text == "a") {
        Advance();
        return {Term::Iri(vocab::kRdfType), std::nullopt};
      }
      if (!AtIri()) Fail("expected predicate");
      return {ParseIri(), std::nullopt};
    }
    bool starts_path = (Cur().kind == Tok::kWord && Cur().text == "a") || AtIri() ||
                       IsPunct("(");
    if (!starts_path) Fail("expected predicate");
    PropertyPath path = ParsePathAlternative();
    if (path.kind == PropertyPath::Kind::kLink) return {path.iri, std::nullopt};
    return {Term::Iri(vocab::kRdfType), std::move(path)};
  }

  bool AtObjectStart() const {
    const Token &t = Cur();
    return t.kind == Tok::kVar || t.kind == Tok::kBlank || t.kind == Tok::kIriRef ||
           t.kind == Tok::kPName || t.kind == Tok::kString || t.kind == Tok::kInteger ||
           t.kind == Tok::kDecimal || t.kind == Tok::kDouble ||
           WordIs(t, "TRUE") || WordIs(t, "FALSE");
  }

  void ParseTriplesStatement(std::vector<TriplePattern> *out, bool allow_paths,
                             bool template_mode) {
    Node subject = ParseVarOrTerm(template_mode);
    if (const auto *term = std::get_if<Term>(&subject); term && term->is_literal()) {
      Fail("literal in subject position");
    }
    for (;;) {
      auto [predicate, path] = ParseVerb(allow_paths);
      for (;;) {
        if (!AtObjectStart()) Fail("expected object");
        Node object = ParseVarOrTerm(template_mode);
        out->push_back(TriplePattern{subject, predicate, path, object});
        if (IsPunct(",")) {
          Advance();
          continue;
        }
        break;
      }
      if (IsPunct(";")) {
        while (IsPunct(";")) Advance();
        if (IsPunct(".") || IsPunct("}") || Cur().kind == Tok::kEnd) break;
        continue;
      }
      break;
    }
    if (IsPunct(".")) Advance();
  }

  std::vector<TriplePattern> ParseTemplateBlock() {
    Expect("{");
    std::vector<TriplePattern> out;
    while (!IsPunct("}")) {
      if (Cur().kind == Tok::kEnd) Fail("unterminated template");
      if (IsPunct(".")) {
        Advance();
        continue;
      }
      ParseTriplesStatement(&out, /*allow_paths=*/false, /*template_mode=*/true);
    }
    Advance();
    return out;
  }

  ValuesBlock ParseValuesBody() {
    ValuesBlock block;
    bool multi = false;
    if (Cur().kind == Tok::kVar) {
      block.variables.push_back(Variable{Cur().text});
      Advance();
    } else if (IsPunct("(")) {
      multi = true;
      Advance();
      while (Cur().kind == Tok::kVar) {
        block.variables.push_back(Variable{Cur().text});
        Advance();
      }
      Expect(")");
    } else {
      Fail("expected variable after VALUES");
    }
    Expect("{");
    auto value = [&]() -> std::optional<Term> {
      if (WordIs(Cur(), "UNDEF")) {
        Advance();
        return std::nullopt;
      }
      Node n = ParseVarOrTerm(/*template_mode=*/true);
      if (std::holds_alternative<Variable>(n)) Fail("variables are not allowed in VALUES");
      return std::get<Term>(n);
    };
    while (!IsPunct("}")) {
      if (Cur().kind == Tok::kEnd) Fail("unterminated VALUES block");
      std::vector<std::optional<Term>> row;
      if (multi) {
        Expect("(");
        while (!IsPunct(")")) {
          if (Cur().kind == Tok::kEnd) Fail("unterminated VALUES row");
          row.push_back(value());
        }
        Advance();
        if (row.size() != block.variables.size()) Fail("VALUES row arity mismatch");
      } else {
        row.push_back(value());
      }
      block.rows.push_back(std::move(row));
    }
    Advance();
    return block;
  }

  Expression ParseExprPrimary() {
    if (IsPunct("(")) {
      Advance();
      Expression e = ParseExprOr();
      Expect(")");
      return e;
    }
    if (IsPunct("!")) {
      Advance();
      Expression e;
      e.kind = Expression::Kind::kNot;
      e.operands.push_back(ParseExprPrimary());
      return e;
    }
    Expression leaf;
    leaf.leaf = ParseVarOrTerm(/*template_mode=*/true);
    return leaf;
  }

  Expression ParseExprRelational() {
    Expression left = ParseExprPrimary();
    static const std::pair<std::string_view, Expression::Kind> kOps[] = {
        {"=", Expression::Kind::kEq},  {"!=", Expression::Kind::kNe},
        {"<", Expression::Kind::kLt},  {"<=", Expression::Kind::kLe},
        {">", Expression::Kind::kGt},  {">=", Expression::Kind::kGe}};
    for (const auto &[op, kind] : kOps) {
      if (IsPunct(op)) {
        Advance();
        Expression e;
        e.kind = kind;
        e.operands.push_back(std::move(left));
        e.operands.push_back(ParseExprPrimary());
        return e;
      }
    }
    return left;
  }

  Expression ParseExprAnd() {
    Expression left = ParseExprRelational();
    while (IsPunct("&&")) {
      Advance();
      Expression e;
      e.kind = Expression::Kind::kAnd;
      e.operands.push_back(std::move(left));
      e.operands.push_back(ParseExprRelational());
      left = std::move(e);
    }
    return left;
  }

  Expression ParseExprOr() {
    Expression left = ParseExprAnd();
    while (IsPunct("||")) {
      Advance();
      Expression e;
      e.kind = Expression::Kind::kOr;
      e.operands.push_back(std::move(left));
      e.operands.push_back(ParseExprAnd());
      left = std::move(e);
    }
    return left;
  }

  GraphPattern ParseGroup() {
    Expect("{");
    GraphPattern group;
    group.kind = GraphPattern::Kind::kGroup;
    auto basic = [&]() -> std::vector<TriplePattern> & {
      if (group.children.empty() || group.children.back().kind != GraphPattern::Kind::kBasic) {
        GraphPattern b;
        b.kind = GraphPattern::Kind::kBasic;
        group.children.push_back(std::move(b));
      }
      return group.children.back().triples;
    };
    for (;;) {
      if (IsPunct("}")) {
        Advance();
        return group;
      }
      if (Cur().kind == Tok::kEnd) Fail("unterminated group pattern");
      if (IsPunct(".")) {
        Advance();
        continue;
      }
      if (IsPunct("{")) {
        GraphPattern left = ParseGroup();
        while (WordIs(Cur(), "UNION")) {
          Advance();
          GraphPattern u;
          u.kind = GraphPattern::Kind::kUnion;
          u.children.push_back(std::move(left));
          u.children.push_back(ParseGroup());
          left = std::move(u);
        }
        group.children.push_back(std::move(left));
        continue;
      }
      if (WordIs(Cur(), "OPTIONAL")) {
        Advance();
        GraphPattern opt;
        opt.kind = GraphPattern::Kind::kOptional;
        opt.children.push_back(ParseGroup());
        group.children.push_back(std::move(opt));
        continue;
      }
      if (WordIs(Cur(), "FILTER")) {
        Advance();
        if (WordIs(Cur(), "NOT")) {
          Advance();
          if (!WordIs(Cur(), "EXISTS")) Fail("expected EXISTS after NOT");
          Advance();
          GraphPattern f;
          f.kind = GraphPattern::Kind::kFilterNotExists;
          f.children.push_back(ParseGroup());
          group.children.push_back(std::move(f));
          continue;
        }
        if (!IsPunct("(")) Fail("only FILTER NOT EXISTS and FILTER (comparison) are supported");
        GraphPattern f;
        f.kind = GraphPattern::Kind::kFilter;
        Advance();
        f.expression = ParseExprOr();
        Expect(")");
        group.children.push_back(std::move(f));
        continue;
      }
      if (WordIs(Cur(), "GRAPH")) {
        Advance();
        GraphPattern g;
        g.kind = GraphPattern::Kind::kGraph;
        if (Cur().kind == Tok::kVar) {
          g.graph = Variable{Cur().text};
          Advance();
        } else {
          g.graph = ParseIri();
        }
        g.children.push_back(ParseGroup());
        group.children.push_back(std::move(g));
        continue;
      }
      if (WordIs(Cur(), "VALUES")) {
        Advance();
        GraphPattern v;
        v.kind = GraphPattern::Kind::kValues;
        v.values = ParseValuesBody();
        group.children.push_back(std::move(v));
        continue;
      }
      ParseTriplesStatement(&basic(), /*allow_paths=*/true, /*template_mode=*/false);
    }
  }

  void Validate(const Query &q) const {
    std::vector<Variable> scope;
    if (q.where) scope = InScopeVariables(*q.where);
    if (q.values) {
      for (const Variable &v : q.values->variables) scope.push_back(v);
    }
    auto check = [&](const Node &n) {
      if (const auto *v = std::get_if<Variable>(&n)) {
        if (std::find(scope.begin(), scope.end(), *v) == scope.end()) {
          throw ParseError("variable ?" + v->name + " does not occur in WHERE", 1, 1, 0);
        }
      }
    };
    for (const Variable &v : q.projection) check(v);
    for (const TriplePattern &t : q.templ) {
      check(t.subject);
      check(t.predicate);
      check(t.object);
    }
    for (const Node &n : q.describe_targets) check(n);
  }

  std::string_view text_;
  Lexer lexer_;
  const ParseOptions &options_;
  std::vector<Token> tokens_;
  std::size_t index_ = 0;
  std::map<std::string, std::string> declared_;
};

}  // namespace

Query ParseQuery(std::string_view text, const ParseOptions &options) {
  return Parser(text, options).ParseQueryText();
}

std::vector<TriplePattern> ParseTemplate(std::string_view text, const ParseOptions &options) {
  return Parser(text, options).ParseBareTemplate();
}

}  // namespace wikikb::sparql
