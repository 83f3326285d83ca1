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

#ifndef WIKIKB_RDF_VOCAB_H_
#define WIKIKB_RDF_VOCAB_H_

#include <string_view>

// IRIs of the vocabulary terms the engine reads or writes.
namespace wikikb::vocab {

inline constexpr std::string_view kRdf =
    "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr std::string_view kRdfs =
    "http://www.w3.org/2000/01/rdf-schema#";
inline constexpr std::string_view kOwl = "http://www.w3.org/2002/07/owl#";
inline constexpr std::string_view kXsd = "http://www.w3.org/2001/XMLSchema#";
inline constexpr std::string_view kHuto = "http://ns.inria.fr/huto/";
inline constexpr std::string_view kUsco = "http://ns.inria.fr/usco/";
inline constexpr std::string_view kDcterms = "http://purl.org/dc/terms/";

inline constexpr std::string_view kRdfType =
    "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
inline constexpr std::string_view kRdfSubject =
    "http://www.w3.org/1999/02/22-rdf-syntax-ns#subject";
inline constexpr std::string_view kRdfPredicate =
    "http://www.w3.org/1999/02/22-rdf-syntax-ns#predicate";
inline constexpr std::string_view kRdfObject =
    "http://www.w3.org/1999/02/22-rdf-syntax-ns#object";
inline constexpr std::string_view kRdfLangString =
    "http://www.w3.org/1999/02/22-rdf-syntax-ns#langString";

inline constexpr std::string_view kRdfsClass =
    "http://www.w3.org/2000/01/rdf-schema#Class";
inline constexpr std::string_view kRdfsSubClassOf =
    "http://www.w3.org/2000/01/rdf-schema#subClassOf";
inline constexpr std::string_view kRdfsSubPropertyOf =
    "http://www.w3.org/2000/01/rdf-schema#subPropertyOf";

inline constexpr std::string_view kOwlObjectProperty =
    "http://www.w3.org/2002/07/owl#ObjectProperty";
inline constexpr std::string_view kOwlDatatypeProperty =
    "http://www.w3.org/2002/07/owl#DatatypeProperty";
inline constexpr std::string_view kOwlAnnotationProperty =
    "http://www.w3.org/2002/07/owl#AnnotationProperty";
inline constexpr std::string_view kOwlNamedIndividual =
    "http://www.w3.org/2002/07/owl#NamedIndividual";
inline constexpr std::string_view kOwlEquivalentProperty =
    "http://www.w3.org/2002/07/owl#equivalentProperty";
inline constexpr std::string_view kOwlEquivalentClass =
    "http://www.w3.org/2002/07/owl#equivalentClass";

inline constexpr std::string_view kXsdString =
    "http://www.w3.org/2001/XMLSchema#string";
inline constexpr std::string_view kXsdInteger =
    "http://www.w3.org/2001/XMLSchema#integer";
inline constexpr std::string_view kXsdDecimal =
    "http://www.w3.org/2001/XMLSchema#decimal";
inline constexpr std::string_view kXsdDouble =
    "http://www.w3.org/2001/XMLSchema#double";
inline constexpr std::string_view kXsdBoolean =
    "http://www.w3.org/2001/XMLSchema#boolean";
inline constexpr std::string_view kXsdDate =
    "http://www.w3.org/2001/XMLSchema#date";

inline constexpr std::string_view kDctermsSource =
    "http://purl.org/dc/terms/source";

// Warehouses (named graphs).
inline constexpr std::string_view kDataGraph = "urn:warehouse:data";
inline constexpr std::string_view kUscoGraph = "urn:warehouse:usco";
inline constexpr std::string_view kHutoGraph = "urn:warehouse:huto";
inline constexpr std::string_view kInferredGraph = "urn:warehouse:inferred";

}  // namespace wikikb::vocab

#endif  // WIKIKB_RDF_VOCAB_H_
