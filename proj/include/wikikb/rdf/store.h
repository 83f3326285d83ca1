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

#ifndef WIKIKB_RDF_STORE_H_
#define WIKIKB_RDF_STORE_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <unordered_map>
#include <vector>

#include "wikikb/rdf/term.h"

namespace wikikb::rdf {

struct Triple {
  Term subject;
  Term predicate;
  Term object;

  friend auto operator<=>(const Triple &, const Triple &) = default;
  friend bool operator==(const Triple &, const Triple &) = default;
};

struct Quad {
  Term subject;
  Term predicate;
  Term object;
  Term graph;

  Triple triple() const { return {subject, predicate, object}; }

  friend auto operator<=>(const Quad &, const Quad &) = default;
  friend bool operator==(const Quad &, const Quad &) = default;
};

// Dense id of an interned term. 0 never names a term and acts as the
// wildcard in id-level matching.
using TermId = std::uint32_t;
inline constexpr TermId kAnyTerm = 0;

enum class IndexOrder { kSpo, kPos, kOsp };

// One named graph: the same triple set under three orderings.
class GraphIndex {
 public:
  using Key = std::array<TermId, 3>;

  bool Insert(TermId s, TermId p, TermId o);
  bool Erase(TermId s, TermId p, TermId o);
  bool Contains(TermId s, TermId p, TermId o) const {
    return spo_.count({s, p, o}) != 0;
  }
  std::size_t size() const { return spo_.size(); }
  void Clear();

  // Calls fn(s, p, o) for each triple matching the bound ids, using the index
  // whose key order puts the most bound positions first. fn returns false to
  // stop early.
  template <typename Fn>
  void ForEach(TermId s, TermId p, TermId o, Fn &&fn) const {
    ForEachVia(BestOrder(s != kAnyTerm, p != kAnyTerm, o != kAnyTerm), s, p,
               o, fn);
  }

  // Same contract as ForEach but scans a fixed index.
  template <typename Fn>
  void ForEachVia(IndexOrder order, TermId s, TermId p, TermId o,
                  Fn &&fn) const {
    const std::set<Key> *index = nullptr;
    Key bound{};
    switch (order) {
      case IndexOrder::kSpo: index = &spo_; bound = {s, p, o}; break;
      case IndexOrder::kPos: index = &pos_; bound = {p, o, s}; break;
      case IndexOrder::kOsp: index = &osp_; bound = {o, s, p}; break;
    }
    int prefix = 0;
    while (prefix < 3 && bound[prefix] != kAnyTerm) ++prefix;
    Key low{};
    for (int i = 0; i < prefix; ++i) low[i] = bound[i];
    for (auto it = index->lower_bound(low); it != index->end(); ++it) {
      const Key &k = *it;
      bool in_prefix = true;
      for (int i = 0; i < prefix; ++i) {
        if (k[i] != bound[i]) { in_prefix = false; break; }
      }
      if (!in_prefix) break;
      bool match = true;
      for (int i = prefix; i < 3; ++i) {
        if (bound[i] != kAnyTerm && k[i] != bound[i]) { match = false; break; }
      }
      if (!match) continue;
      bool more = true;
      switch (order) {
        case IndexOrder::kSpo: more = fn(k[0], k[1], k[2]); break;
        case IndexOrder::kPos: more = fn(k[2], k[0], k[1]); break;
        case IndexOrder::kOsp: more = fn(k[1], k[2], k[0]); break;
      }
      if (!more) return;
    }
  }

  static IndexOrder BestOrder(bool s, bool p, bool o);

 private:
  std::set<Key> spo_;
  std::set<Key> pos_;
  std::set<Key> osp_;
};

// In-memory quad store. Terms are interned into a dictionary; each registered
// graph holds SPO/POS/OSP indexes over term ids. Set semantics throughout.
//
// Not internally synchronized: callers serialize writers against readers. All
// const members are safe to call concurrently.
class GraphStore {
 public:
  // Registers the warehouse graphs (data, usco, huto, inferred).
  GraphStore();

  // The four warehouses in registration order.
  static const std::vector<Term> &Warehouses();
  static const Term &DataGraph();
  static const Term &UscoGraph();
  static const Term &HutoGraph();
  static const Term &InferredGraph();

  // Returns true if the graph was not registered before.
  bool RegisterGraph(const Term &graph);
  bool IsRegistered(const Term &graph) const;
  const std::vector<Term> &graphs() const { return graph_order_; }

  // Throws UnregisteredGraphError. Returns true iff the quad was absent.
  bool Insert(const Quad &quad);
  bool Insert(const Triple &triple, const Term &graph);
  bool Remove(const Quad &quad);
  bool Contains(const Quad &quad) const;
  // Removes every quad of the graph; returns how many were removed.
  std::size_t ClearGraph(const Term &graph);

  // Unbound positions are wildcards. Deterministic order for a fixed state:
  // graphs in registration order, then index order.
  std::vector<Quad> Match(const std::optional<Term> &s,
                          const std::optional<Term> &p,
                          const std::optional<Term> &o,
                          const std::optional<Term> &g) const;

  std::size_t size() const;
  std::size_t size(const Term &graph) const;

  // Allocates a blank node label unused in this store.
  Term FreshBlank();

  // Id-level access.
  std::optional<TermId> Lookup(const Term &term) const;
  const Term &term(TermId id) const { return terms_[id]; }
  std::size_t term_count() const { return terms_.size(); }
  // Index of a registered graph, nullptr if unregistered.
  const GraphIndex *index(const Term &graph) const;
  const GraphIndex *index(TermId graph) const;

 private:
  TermId Intern(const Term &term);
  GraphIndex &MutableIndex(const Term &graph);

  std::vector<Term> terms_;
  std::unordered_map<Term, TermId, TermHash> ids_;
  std::vector<Term> graph_order_;
  std::unordered_map<TermId, GraphIndex> graphs_;
  std::uint64_t next_blank_ = 0;
};

}  // namespace wikikb::rdf

#endif  // WIKIKB_RDF_STORE_H_
