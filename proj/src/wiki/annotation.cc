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

#include "wikikb/wiki/annotation.h"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <map>
#include <regex>

#include "wikikb/error.h"
#include "wikikb/rdf/vocab.h"
#include "wikikb/text.h"

namespace wikikb::wiki {

using rdf::Quad;
using rdf::Term;

std::string_view NamespaceName(Namespace ns) {
  switch (ns) {
    case Namespace::kMain: return "Main";
    case Namespace::kCategory: return "Category";
    case Namespace::kProperty: return "Property";
  }
  return "Main";
}

std::optional<Namespace> ParseNamespace(std::string_view name) {
  if (name == "Main") return Namespace::kMain;
  if (name == "Category" || name == "category") return Namespace::kCategory;
  if (name == "Property" || name == "property") return Namespace::kProperty;
  return std::nullopt;
}

namespace {

std::string NormalizeTitle(std::string_view title) {
  std::string out(Trim(title));
  std::replace(out.begin(), out.end(), ' ', '_');
  return out;
}

}  // namespace

PageRef PageRef::Make(Namespace ns, std::string_view title) {
  std::string normalized = NormalizeTitle(title);
  if (normalized.empty()) throw InvalidArgumentError("empty page title");
  return PageRef{ns, std::move(normalized)};
}

PageRef PageRef::FromLink(std::string_view link) {
  link = Trim(link);
  auto colon = link.find(':');
  if (colon != std::string_view::npos) {
    if (auto ns = ParseNamespace(link.substr(0, colon))) {
      return Make(*ns, link.substr(colon + 1));
    }
  }
  return Make(Namespace::kMain, link);
}

std::string PageRef::Key() const {
  return std::string(NamespaceName(ns)) + ":" + title;
}

IriScheme::IriScheme(std::string base_iri) : base_(std::move(base_iri)) {
  if (!rdf::IsAbsoluteIri(base_)) {
    throw InvalidArgumentError("base IRI must be absolute: " + base_);
  }
  if (base_.back() != '/' && base_.back() != '#') base_ += '/';
}

Term IriScheme::PageIri(const PageRef &page) const {
  switch (page.ns) {
    case Namespace::kCategory: return CategoryIri(page.title);
    case Namespace::kProperty: return PropertyIri(page.title);
    case Namespace::kMain: break;
  }
  return Term::Iri(PagePrefix() + PercentEncode(NormalizeTitle(page.title)));
}

Term IriScheme::PropertyIri(std::string_view name) const {
  return Term::Iri(PropertyPrefix() + PercentEncode(NormalizeTitle(name)));
}

Term IriScheme::CategoryIri(std::string_view name) const {
  return Term::Iri(CategoryPrefix() + PercentEncode(NormalizeTitle(name)));
}

std::optional<PageRef> IriScheme::PageOf(const Term &iri) const {
  if (!iri.is_iri()) return std::nullopt;
  const std::string &v = iri.value();
  const std::pair<std::string, Namespace> prefixes[] = {
      {PagePrefix(), Namespace::kMain},
      {CategoryPrefix(), Namespace::kCategory},
      {PropertyPrefix(), Namespace::kProperty}};
  for (const auto &[prefix, ns] : prefixes) {
    if (v.size() > prefix.size() && v.compare(0, prefix.size(), prefix) == 0) {
      return PageRef{ns, PercentDecode(std::string_view(v).substr(prefix.size()))};
    }
  }
  return std::nullopt;
}

std::string AnnotationTag::DisplayForm() const {
  return display_label ? *display_label : value;
}

namespace {

bool HasTitleForbiddenChar(std::string_view s) {
  return s.find_first_of("#<>[]{}|\n") != std::string_view::npos;
}

bool IsCategoryWord(std::string_view s) {
  return s == "Category" || s == "category";
}

}  // namespace

ParseOutcome ParseAnnotations(const PageRef &page, std::string_view text) {
  ParseOutcome outcome;
  std::size_t pos = 0;
  std::size_t copied = 0;  // text_[copied, open) still to be copied verbatim
  auto malformed = [&](std::size_t at, std::string message) {
    outcome.diagnostics.push_back(Diagnostic{at, std::move(message)});
  };
  while (true) {
    std::size_t open = text.find("[[", pos);
    if (open == std::string_view::npos) break;
    std::size_t close = text.find("]]", open + 2);
    if (close == std::string_view::npos) {
      malformed(open, "unterminated '[[' region");
      break;
    }
    std::string_view body = text.substr(open + 2, close - open - 2);
    if (body.find("[[") != std::string_view::npos) {
      malformed(open, "nested '[[' inside annotation");
      pos = open + 2;
      continue;
    }
    std::size_t end = close + 2;

    AnnotationTag tag;
    tag.span_begin = open;
    tag.span_end = end;
    bool is_tag = false;
    std::string error;

    std::size_t dcolon = body.find("::");
    if (dcolon != std::string_view::npos) {
      std::string_view name = Trim(body.substr(0, dcolon));
      std::string_view rest = body.substr(dcolon + 2);
      std::string_view value = rest;
      std::optional<std::string> label;
      std::size_t bar = rest.find('|');
      if (bar != std::string_view::npos) {
        value = rest.substr(0, bar);
        label = std::string(rest.substr(bar + 1));
      }
      value = Trim(value);
      if (name.empty()) {
        error = "annotation with empty property name";
      } else if (HasTitleForbiddenChar(name)) {
        error = "invalid property name '" + std::string(name) + "'";
      } else if (value.empty()) {
        error = "annotation with empty value";
      } else if (IsCategoryWord(name)) {
        if (HasTitleForbiddenChar(value)) {
          error = "invalid category name '" + std::string(value) + "'";
        } else {
          tag.kind = page.ns == Namespace::kCategory ? TagKind::kSubclassAssertion
                                                     : TagKind::kCategoryAssertion;
          tag.value = value;
          tag.display_label = label ? label : std::optional<std::string>(tag.value);
          is_tag = true;
        }
      } else {
        tag.kind = IsLiteralShaped(value) || IsAnnotationProperty(name)
                       ? TagKind::kAttribute
                       : TagKind::kRelation;
        tag.property = name;
        tag.value = value;
        tag.display_label = label;
        is_tag = true;
      }
    } else {
      std::string_view trimmed = Trim(body);
      std::size_t colon = trimmed.find(':');
      if (colon != std::string_view::npos &&
          IsCategoryWord(Trim(trimmed.substr(0, colon)))) {
        std::string_view rest = trimmed.substr(colon + 1);
        std::size_t bar = rest.find('|');  // sort key, not displayed
        std::string_view value = Trim(rest.substr(0, bar));
        if (value.empty() || HasTitleForbiddenChar(value)) {
          error = "invalid category membership";
        } else {
          tag.kind = TagKind::kCategoryAssertion;
          tag.value = value;
          tag.display_label = std::string();
          is_tag = true;
        }
      }
      // Anything else is an ordinary link and stays as text.
    }

    if (!error.empty()) {
      malformed(open, error);
      pos = end;
      continue;
    }
    if (!is_tag) {
      pos = end;
      continue;
    }
    outcome.display_text.append(text.substr(copied, open - copied));
    outcome.display_text += tag.DisplayForm();
    outcome.tags.push_back(std::move(tag));
    copied = end;
    pos = end;
  }
  outcome.display_text.append(text.substr(copied));
  return outcome;
}

namespace {

const std::regex &IntegerPattern() {
  static const std::regex re("^[+-]?[0-9]+$");
  return re;
}
const std::regex &DecimalPattern() {
  static const std::regex re("^[+-]?([0-9]+\\.[0-9]*|\\.[0-9]+)$");
  return re;
}
const std::regex &DatePattern() {
  static const std::regex re("^([0-9]{4})-([0-9]{2})-([0-9]{2})$");
  return re;
}

bool IsIsoDate(const std::string &s) {
  std::smatch m;
  if (!std::regex_match(s, m, DatePattern())) return false;
  std::chrono::year_month_day ymd{std::chrono::year{std::stoi(m[1])},
                                  std::chrono::month{static_cast<unsigned>(std::stoi(m[2]))},
                                  std::chrono::day{static_cast<unsigned>(std::stoi(m[3]))}};
  return ymd.ok() && std::stoi(m[1]) >= 1;
}

}  // namespace

Term InferLiteralType(std::string_view raw) {
  std::string value(Trim(raw));
  if (std::regex_match(value, IntegerPattern())) {
    return Term::Typed(value, vocab::kXsdInteger);
  }
  if (std::regex_match(value, DecimalPattern())) {
    return Term::Typed(value, vocab::kXsdDecimal);
  }
  if (IsIsoDate(value)) return Term::Typed(value, vocab::kXsdDate);
  return Term::Literal(value);
}

bool IsLiteralShaped(std::string_view value) {
  value = Trim(value);
  if (value.empty() || HasTitleForbiddenChar(value)) return true;
  if (value.find("://") != std::string_view::npos) return true;
  return InferLiteralType(value).datatype() != vocab::kXsdString;
}

bool IsAnnotationProperty(std::string_view name) {
  return name == "HasComment" || name == "HasDescription";
}

std::optional<Term> ExpandVocabularyName(std::string_view name) {
  name = Trim(name);
  static const std::pair<std::string_view, std::string_view> kPrefixes[] = {
      {"rdf", vocab::kRdf},   {"rdfs", vocab::kRdfs}, {"owl", vocab::kOwl},
      {"xsd", vocab::kXsd},   {"huto", vocab::kHuto}, {"usco", vocab::kUsco},
      {"dcterms", vocab::kDcterms}};
  auto colon = name.find(':');
  if (colon == std::string_view::npos) return std::nullopt;
  std::string_view prefix = name.substr(0, colon);
  std::string_view local = name.substr(colon + 1);
  for (const auto &[p, ns] : kPrefixes) {
    if (prefix == p && !local.empty() && local.substr(0, 2) != "//") {
      return Term::Iri(std::string(ns) + std::string(local));
    }
  }
  if (rdf::IsAbsoluteIri(name) &&
      (name.find("://") != std::string_view::npos || prefix == "urn")) {
    return Term::Iri(name);
  }
  return std::nullopt;
}

bool StoreDeclarations::Visible(const Quad &q) const {
  return ignored_ == nullptr || ignored_->count(q) == 0;
}

std::optional<PropertyKind> StoreDeclarations::KindOf(const Term &property) const {
  static const std::pair<std::string_view, PropertyKind> kKinds[] = {
      {vocab::kOwlObjectProperty, PropertyKind::kObject},
      {vocab::kOwlDatatypeProperty, PropertyKind::kDatatype},
      {vocab::kOwlAnnotationProperty, PropertyKind::kAnnotation}};
  const Term type = Term::Iri(vocab::kRdfType);
  for (const Term &graph : {rdf::GraphStore::DataGraph(), rdf::GraphStore::UscoGraph(),
                            rdf::GraphStore::HutoGraph()}) {
    for (const auto &[iri, kind] : kKinds) {
      Quad q{property, type, Term::Iri(iri), graph};
      if (store_.Contains(q) && Visible(q)) return kind;
    }
  }
  return std::nullopt;
}

std::optional<Term> StoreDeclarations::AliasOf(const Term &local) const {
  for (std::string_view rel : {vocab::kOwlEquivalentProperty, vocab::kOwlEquivalentClass}) {
    for (const Quad &q : store_.Match(local, Term::Iri(rel), std::nullopt,
                                      rdf::GraphStore::DataGraph())) {
      if (Visible(q) && q.object.is_iri()) return q.object;
    }
  }
  return std::nullopt;
}

namespace {

std::string_view KindName(PropertyKind kind) {
  switch (kind) {
    case PropertyKind::kObject: return "owl:ObjectProperty";
    case PropertyKind::kDatatype: return "owl:DatatypeProperty";
    case PropertyKind::kAnnotation: return "owl:AnnotationProperty";
  }
  return "";
}

std::string_view KindIri(PropertyKind kind) {
  switch (kind) {
    case PropertyKind::kObject: return vocab::kOwlObjectProperty;
    case PropertyKind::kDatatype: return vocab::kOwlDatatypeProperty;
    case PropertyKind::kAnnotation: return vocab::kOwlAnnotationProperty;
  }
  return "";
}

}  // namespace

Compilation CompileTags(const PageRef &page, const std::vector<AnnotationTag> &tags,
                        const DeclarationLookup &declarations,
                        const IriScheme &scheme) {
  const Term data = rdf::GraphStore::DataGraph();
  const Term type = Term::Iri(vocab::kRdfType);
  const Term rdfs_class = Term::Iri(vocab::kRdfsClass);
  const Term self = scheme.PageIri(page);

  std::set<Quad> out;
  std::vector<Diagnostic> diagnostics;
  std::map<Term, PropertyKind> pinned;
  auto emit = [&](Term s, Term p, Term o) {
    out.insert(Quad{std::move(s), std::move(p), std::move(o), data});
  };
  auto resolve = [&](const Term &local) {
    auto alias = declarations.AliasOf(local);
    return alias ? *alias : local;
  };

  if (page.ns == Namespace::kMain) {
    emit(self, type, Term::Iri(vocab::kOwlNamedIndividual));
  }

  for (const AnnotationTag &tag : tags) {
    switch (tag.kind) {
      case TagKind::kCategoryAssertion: {
        Term cls = resolve(scheme.CategoryIri(tag.value));
        emit(self, type, cls);
        emit(cls, type, rdfs_class);
        break;
      }
      case TagKind::kSubclassAssertion: {
        Term cls = resolve(scheme.CategoryIri(tag.value));
        emit(self, Term::Iri(vocab::kRdfsSubClassOf), cls);
        emit(self, type, rdfs_class);
        emit(cls, type, rdfs_class);
        break;
      }
      case TagKind::kRelation:
      case TagKind::kAttribute: {
        if (tag.property == kImportedFrom) {
          auto external = ExpandVocabularyName(tag.value);
          if (!external) {
            diagnostics.push_back(
                {tag.span_begin, "cannot expand vocabulary name '" + tag.value + "'"});
          } else if (page.ns == Namespace::kProperty) {
            emit(self, Term::Iri(vocab::kOwlEquivalentProperty), *external);
          } else if (page.ns == Namespace::kCategory) {
            emit(self, Term::Iri(vocab::kOwlEquivalentClass), *external);
          } else {
            diagnostics.push_back(
                {tag.span_begin, "ImportedFrom applies to Property and Category pages"});
          }
          break;
        }
        Term property = resolve(scheme.PropertyIri(tag.property));
        PropertyKind kind = IsAnnotationProperty(tag.property) ? PropertyKind::kAnnotation
                            : IsLiteralShaped(tag.value)       ? PropertyKind::kDatatype
                                                               : PropertyKind::kObject;
        std::optional<PropertyKind> declared;
        if (auto it = pinned.find(property); it != pinned.end()) {
          declared = it->second;
        } else {
          declared = declarations.KindOf(property);
        }
        if (declared && *declared != kind) {
          throw PropertyKindConflict(
              tag.property,
              "property '" + tag.property + "' is declared " +
                  std::string(KindName(*declared)) + " but used as " +
                  std::string(KindName(kind)),
              tag.span_begin, tag.span_end);
        }
        pinned[property] = kind;
        Term object = kind == PropertyKind::kObject
                          ? scheme.PageIri(PageRef::FromLink(tag.value))
                      : kind == PropertyKind::kAnnotation ? Term::Literal(tag.value)
                                                          : InferLiteralType(tag.value);
        emit(self, property, object);
        emit(property, type, Term::Iri(KindIri(kind)));
        break;
      }
    }
  }
  return Compilation{std::vector<Quad>(out.begin(), out.end()), std::move(diagnostics)};
}

Compilation CompileTags(const PageRef &page, const std::vector<AnnotationTag> &tags,
                        const rdf::GraphStore &store, const IriScheme &scheme) {
  return CompileTags(page, tags, StoreDeclarations(store), scheme);
}

}  // namespace wikikb::wiki
