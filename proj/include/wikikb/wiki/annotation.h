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

#ifndef WIKIKB_WIKI_ANNOTATION_H_
#define WIKIKB_WIKI_ANNOTATION_H_

#include <compare>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "wikikb/rdf/store.h"
#include "wikikb/rdf/term.h"

namespace wikikb::wiki {

enum class Namespace { kMain, kCategory, kProperty };

std::string_view NamespaceName(Namespace ns);
std::optional<Namespace> ParseNamespace(std::string_view name);

// A wiki page. Titles are stored with spaces folded to underscores.
struct PageRef {
  Namespace ns = Namespace::kMain;
  std::string title;

  // Throws InvalidArgumentError for an empty title.
  static PageRef Make(Namespace ns, std::string_view title);
  // "Category:City" -> (Category, City); unknown prefixes stay in the title.
  static PageRef FromLink(std::string_view link);

  // "Main:Dakar", "Category:City".
  std::string Key() const;

  friend auto operator<=>(const PageRef &, const PageRef &) = default;
  friend bool operator==(const PageRef &, const PageRef &) = default;
};

// Maps pages, properties and categories onto IRIs under one base.
class IriScheme {
 public:
  explicit IriScheme(std::string base_iri = "http://example.org/wiki/");

  const std::string &base() const { return base_; }
  std::string PagePrefix() const { return base_ + "page/"; }
  std::string PropertyPrefix() const { return base_ + "prop/"; }
  std::string CategoryPrefix() const { return base_ + "category/"; }

  rdf::Term PageIri(const PageRef &page) const;
  rdf::Term PropertyIri(std::string_view name) const;
  rdf::Term CategoryIri(std::string_view name) const;

  // Inverse of PageIri; nullopt for IRIs outside the scheme.
  std::optional<PageRef> PageOf(const rdf::Term &iri) const;

 private:
  std::string base_;
};

enum class TagKind { kRelation, kAttribute, kCategoryAssertion, kSubclassAssertion };

struct AnnotationTag {
  TagKind kind = TagKind::kRelation;
  std::string property;  // empty for category kinds
  std::string value;
  std::optional<std::string> display_label;
  // Byte offsets of the whole [[...]] region, end exclusive.
  std::size_t span_begin = 0;
  std::size_t span_end = 0;

  // What the region renders as in display text.
  std::string DisplayForm() const;
};

struct Diagnostic {
  std::size_t offset = 0;
  std::string message;
};

struct ParseOutcome {
  std::vector<AnnotationTag> tags;
  std::string display_text;
  std::vector<Diagnostic> diagnostics;
};

// Extracts inline annotations. Total: malformed regions become diagnostics
// and pass through unchanged.
//
//   [[P::V]] / [[P::V|label]]  property (relation or attribute by value shape)
//   [[Category:X]]             category membership
//   [[Category::X]]            subclass axiom on Category pages, membership
//                              elsewhere
ParseOutcome ParseAnnotations(const PageRef &page, std::string_view wikitext);

// integer, decimal, ISO date, or plain string literal.
rdf::Term InferLiteralType(std::string_view raw);

// True when a property value cannot name a page and compiles to a literal.
bool IsLiteralShaped(std::string_view value);

// Properties whose values are documentation, compiled to
// owl:AnnotationProperty with string literals.
bool IsAnnotationProperty(std::string_view name);

// Reserved property aliasing a local property or category to an external
// vocabulary term.
inline constexpr std::string_view kImportedFrom = "ImportedFrom";

enum class PropertyKind { kObject, kDatatype, kAnnotation };

// Resolves prior property declarations and vocabulary aliases.
class DeclarationLookup {
 public:
  virtual ~DeclarationLookup() = default;
  virtual std::optional<PropertyKind> KindOf(const rdf::Term &property) const = 0;
  // External IRI a local property or category IRI is aliased to.
  virtual std::optional<rdf::Term> AliasOf(const rdf::Term &local) const = 0;
};

// Reads declarations from the asserted warehouses of a store. Quads listed in
// `ignored` (a page's own previous output) are treated as absent.
class StoreDeclarations : public DeclarationLookup {
 public:
  explicit StoreDeclarations(const rdf::GraphStore &store,
                             const std::set<rdf::Quad> *ignored = nullptr)
      : store_(store), ignored_(ignored) {}

  std::optional<PropertyKind> KindOf(const rdf::Term &property) const override;
  std::optional<rdf::Term> AliasOf(const rdf::Term &local) const override;

 private:
  bool Visible(const rdf::Quad &q) const;

  const rdf::GraphStore &store_;
  const std::set<rdf::Quad> *ignored_;
};

struct Compilation {
  std::vector<rdf::Quad> quads;  // sorted, duplicate free, all in the data graph
  std::vector<Diagnostic> diagnostics;
};

// Compiles tags to OWL-typed statements in the data warehouse. Throws
// PropertyKindConflict when a property is used against its declared kind
// (including earlier uses within the same tag list).
Compilation CompileTags(const PageRef &page,
                        const std::vector<AnnotationTag> &tags,
                        const DeclarationLookup &declarations,
                        const IriScheme &scheme = IriScheme());
Compilation CompileTags(const PageRef &page,
                        const std::vector<AnnotationTag> &tags,
                        const rdf::GraphStore &store,
                        const IriScheme &scheme = IriScheme());

// Expands "huto:before" style names over the built-in vocabulary prefixes or
// accepts an absolute IRI.
std::optional<rdf::Term> ExpandVocabularyName(std::string_view name);

}  // namespace wikikb::wiki

#endif  // WIKIKB_WIKI_ANNOTATION_H_
