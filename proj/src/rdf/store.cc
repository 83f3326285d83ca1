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

#include "wikikb/rdf/store.h"

#include "wikikb/error.h"
#include "wikikb/rdf/vocab.h"

namespace wikikb::rdf {

bool GraphIndex::Insert(TermId s, TermId p, TermId o) {
  if (!spo_.insert({s, p, o}).second) return false;
  pos_.insert({p, o, s});
  osp_.insert({o, s, p});
  return true;
}

bool GraphIndex::Erase(TermId s, TermId p, TermId o) {
  if (spo_.erase({s, p, o}) == 0) return false;
  pos_.erase({p, o, s});
  osp_.erase({o, s, p});
  return true;
}

void GraphIndex::Clear() {
  spo_.clear();
  pos_.clear();
  osp_.clear();
}

IndexOrder GraphIndex::BestOrder(bool s, bool p, bool o) {
  if (s && o && !p) return IndexOrder::kOsp;
  if (s) return IndexOrder::kSpo;
  if (p) return IndexOrder::kPos;
  if (o) return IndexOrder::kOsp;
  return IndexOrder::kSpo;
}

const std::vector<Term> &GraphStore::Warehouses() {
  static const std::vector<Term> kWarehouses = {
      Term::Iri(vocab::kDataGraph), Term::Iri(vocab::kUscoGraph),
      Term::Iri(vocab::kHutoGraph), Term::Iri(vocab::kInferredGraph)};
  return kWarehouses;
}

const Term &GraphStore::DataGraph() { return Warehouses()[0]; }
const Term &GraphStore::UscoGraph() { return Warehouses()[1]; }
const Term &GraphStore::HutoGraph() { return Warehouses()[2]; }
const Term &GraphStore::InferredGraph() { return Warehouses()[3]; }

GraphStore::GraphStore() {
  terms_.emplace_back();  // id 0 is reserved
  for (const Term &g : Warehouses()) RegisterGraph(g);
}

bool GraphStore::RegisterGraph(const Term &graph) {
  if (!graph.is_iri()) {
    throw InvalidArgumentError("graph name must be an IRI: " +
                               graph.ToNTriples());
  }
  TermId id = Intern(graph);
  if (graphs_.count(id) != 0) return false;
  graphs_.emplace(id, GraphIndex());
  graph_order_.push_back(graph);
  return true;
}

bool GraphStore::IsRegistered(const Term &graph) const {
  return index(graph) != nullptr;
}

const GraphIndex *GraphStore::index(const Term &graph) const {
  auto id = Lookup(graph);
  return id ? index(*id) : nullptr;
}

const GraphIndex *GraphStore::index(TermId graph) const {
  auto it = graphs_.find(graph);
  return it == graphs_.end() ? nullptr : &it->second;
}

GraphIndex &GraphStore::MutableIndex(const Term &graph) {
  auto id = Lookup(graph);
  if (id) {
    auto it = graphs_.find(*id);
    if (it != graphs_.end()) return it->second;
  }
  throw UnregisteredGraphError(graph.value());
}

TermId GraphStore::Intern(const Term &term) {
  auto it = ids_.find(term);
  if (it != ids_.end()) return it->second;
  TermId id = static_cast<TermId>(terms_.size());
  terms_.push_back(term);
  ids_.emplace(term, id);
  return id;
}

std::optional<TermId> GraphStore::Lookup(const Term &term) const {
  auto it = ids_.find(term);
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

namespace {

void CheckShape(const Term &s, const Term &p) {
  if (s.is_literal()) {
    throw InvalidArgumentError("literal in subject position: " +
                               s.ToNTriples());
  }
  if (!p.is_iri()) {
    throw InvalidArgumentError("predicate must be an IRI: " + p.ToNTriples());
  }
}

}  // namespace

bool GraphStore::Insert(const Quad &quad) {
  GraphIndex &index = MutableIndex(quad.graph);
  CheckShape(quad.subject, quad.predicate);
  return index.Insert(Intern(quad.subject), Intern(quad.predicate),
                      Intern(quad.object));
}

bool GraphStore::Insert(const Triple &triple, const Term &graph) {
  return Insert(Quad{triple.subject, triple.predicate, triple.object, graph});
}

bool GraphStore::Remove(const Quad &quad) {
  GraphIndex &index = MutableIndex(quad.graph);
  auto s = Lookup(quad.subject);
  auto p = Lookup(quad.predicate);
  auto o = Lookup(quad.object);
  if (!s || !p || !o) return false;
  return index.Erase(*s, *p, *o);
}

bool GraphStore::Contains(const Quad &quad) const {
  const GraphIndex *idx = index(quad.graph);
  if (idx == nullptr) return false;
  auto s = Lookup(quad.subject);
  auto p = Lookup(quad.predicate);
  auto o = Lookup(quad.object);
  return s && p && o && idx->Contains(*s, *p, *o);
}

std::size_t GraphStore::ClearGraph(const Term &graph) {
  GraphIndex &index = MutableIndex(graph);
  std::size_t n = index.size();
  index.Clear();
  return n;
}

std::vector<Quad> GraphStore::Match(const std::optional<Term> &s,
                                    const std::optional<Term> &p,
                                    const std::optional<Term> &o,
                                    const std::optional<Term> &g) const {
  std::vector<Quad> out;
  TermId ids[3] = {kAnyTerm, kAnyTerm, kAnyTerm};
  const std::optional<Term> *bound[3] = {&s, &p, &o};
  for (int i = 0; i < 3; ++i) {
    if (*bound[i]) {
      auto id = Lookup(**bound[i]);
      if (!id) return out;
      ids[i] = *id;
    }
  }
  for (const Term &graph : graph_order_) {
    if (g && *g != graph) continue;
    const GraphIndex *idx = index(graph);
    idx->ForEach(ids[0], ids[1], ids[2], [&](TermId a, TermId b, TermId c) {
      out.push_back(Quad{terms_[a], terms_[b], terms_[c], graph});
      return true;
    });
  }
  return out;
}

std::size_t GraphStore::size() const {
  std::size_t n = 0;
  for (const auto &[id, idx] : graphs_) n += idx.size();
  return n;
}

std::size_t GraphStore::size(const Term &graph) const {
  const GraphIndex *idx = index(graph);
  if (idx == nullptr) throw UnregisteredGraphError(graph.value());
  return idx->size();
}

Term GraphStore::FreshBlank() {
  for (;;) {
    Term t = Term::Blank("b" + std::to_string(next_blank_++));
    if (ids_.count(t) == 0) return t;
  }
}

}  // namespace wikikb::rdf
