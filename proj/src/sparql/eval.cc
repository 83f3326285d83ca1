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

#include "wikikb/sparql/eval.h"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "wikikb/error.h"
#include "wikikb/rdf/vocab.h"

namespace wikikb::sparql {

using rdf::GraphIndex;
using rdf::GraphStore;
using rdf::kAnyTerm;
using rdf::Term;
using rdf::TermId;
using rdf::Triple;

const std::vector<Term> &StandardDefaultGraphs() {
  static const std::vector<Term> kGraphs = {GraphStore::DataGraph(), GraphStore::InferredGraph(),
                                            GraphStore::UscoGraph(), GraphStore::HutoGraph()};
  return kGraphs;
}

namespace {

using Row = std::vector<TermId>;
using Rows = std::vector<Row>;
using IdPair = std::pair<TermId, TermId>;

struct VectorHash {
  std::size_t operator()(const std::vector<TermId> &v) const noexcept {
    std::size_t h = v.size();
    for (TermId id : v) h = h * 1000003u ^ id;
    return h;
  }
};

bool Compatible(const Row &a, const Row &b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != kAnyTerm && b[i] != kAnyTerm && a[i] != b[i]) return false;
  }
  return true;
}

Row Merge(const Row &a, const Row &b) {
  Row out = a;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i] == kAnyTerm) out[i] = b[i];
  }
  return out;
}

std::optional<long double> NumericValue(const Term &t) {
  if (!t.is_literal()) return std::nullopt;
  const std::string &dt = t.datatype();
  if (dt != vocab::kXsdInteger && dt != vocab::kXsdDecimal && dt != vocab::kXsdDouble) {
    return std::nullopt;
  }
  char *end = nullptr;
  long double v = std::strtold(t.value().c_str(), &end);
  if (end == t.value().c_str() || *end != '\0') return std::nullopt;
  return v;
}

class Evaluator {
 public:
  Evaluator(const GraphStore &store, const Query &query, const std::vector<Term> &default_graphs)
      : store_(store), query_(query) {
    const std::vector<Term> &graphs =
        default_graphs.empty() ? StandardDefaultGraphs() : default_graphs;
    for (const Term &g : graphs) {
      auto id = store.Lookup(g);
      if (id && store.index(*id) != nullptr &&
          std::find(default_ids_.begin(), default_ids_.end(), *id) == default_ids_.end()) {
        default_ids_.push_back(*id);
      }
    }
    for (const Term &g : store.graphs()) all_graph_ids_.push_back(*store.Lookup(g));

    auto add = [&](const Variable &v) {
      if (slots_.emplace(v.name, slot_vars_.size()).second) slot_vars_.push_back(v);
    };
    if (query.where) {
      for (const Variable &v : AllVariables(*query.where)) add(v);
    }
    if (query.values) {
      for (const Variable &v : query.values->variables) add(v);
    }
    for (const Variable &v : query.projection) add(v);
  }

  Rows Solutions() {
    Row seed(slot_vars_.size(), kAnyTerm);
    Rows rows;
    if (query_.where) {
      rows = Eval(*query_.where, default_ids_, seed);
    } else {
      rows.push_back(seed);
    }
    if (query_.values) rows = Join(rows, ValuesRows(*query_.values, seed));
    return rows;
  }

  SolutionSet Select() {
    Rows rows = Solutions();
    SolutionSet out;
    if (query_.select_all) {
      std::vector<Variable> vars = query_.where ? InScopeVariables(*query_.where)
                                                : std::vector<Variable>{};
      if (query_.values) {
        for (const Variable &v : query_.values->variables) {
          if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
        }
      }
      for (const Variable &v : vars) {
        if (!v.is_blank()) out.variables.push_back(v);
      }
    } else {
      out.variables = query_.projection;
    }
    for (const Row &row : rows) {
      std::vector<std::optional<Term>> r;
      for (const Variable &v : out.variables) {
        TermId id = row[slots_.at(v.name)];
        if (id == kAnyTerm) {
          r.emplace_back(std::nullopt);
        } else {
          r.emplace_back(TermOf(id));
        }
      }
      out.rows.push_back(std::move(r));
    }
    return out;
  }

  std::vector<Triple> Instantiate(const std::vector<TriplePattern> &templ) {
    std::set<Triple> out;
    for (const Row &row : Solutions()) {
      for (const TriplePattern &t : templ) {
        auto s = Ground(t.subject, row);
        auto p = Ground(t.predicate, row);
        auto o = Ground(t.object, row);
        if (!s || !p || !o) continue;
        if (s->is_literal() || !p->is_iri()) continue;
        out.insert(Triple{*s, *p, *o});
      }
    }
    return std::vector<Triple>(out.begin(), out.end());
  }

  std::vector<Term> DescribeTargets() {
    std::vector<Term> targets;
    std::set<Term> seen;
    auto add = [&](const Term &t) {
      if (!t.is_literal() && seen.insert(t).second) targets.push_back(t);
    };
    std::vector<Variable> vars;
    for (const Node &n : query_.describe_targets) {
      if (const auto *t = std::get_if<Term>(&n)) {
        add(*t);
      } else {
        vars.push_back(std::get<Variable>(n));
      }
    }
    if (query_.select_all && query_.where) {
      for (const Variable &v : InScopeVariables(*query_.where)) {
        if (!v.is_blank()) vars.push_back(v);
      }
    }
    if (!vars.empty()) {
      for (const Row &row : Solutions()) {
        for (const Variable &v : vars) {
          TermId id = row[slots_.at(v.name)];
          if (id != kAnyTerm) add(TermOf(id));
        }
      }
    }
    return targets;
  }

  const std::vector<TermId> &default_ids() const { return default_ids_; }

 private:
  TermId IdOf(const Term &t) {
    if (auto id = store_.Lookup(t)) return *id;
    auto it = local_ids_.find(t);
    if (it != local_ids_.end()) return it->second;
    TermId id = static_cast<TermId>(store_.term_count() + local_terms_.size());
    local_terms_.push_back(t);
    local_ids_.emplace(t, id);
    return id;
  }

  const Term &TermOf(TermId id) const {
    if (id < store_.term_count()) return store_.term(id);
    return local_terms_[id - store_.term_count()];
  }

  std::optional<Term> Ground(const Node &n, const Row &row) const {
    if (const auto *t = std::get_if<Term>(&n)) return *t;
    TermId id = row[slots_.at(std::get<Variable>(n).name)];
    if (id == kAnyTerm) return std::nullopt;
    return TermOf(id);
  }

  // Calls fn(s, p, o) once per distinct triple of the union of `graphs`.
  template <typename Fn>
  void ForEachTriple(const std::vector<TermId> &graphs, TermId s, TermId p, TermId o, Fn &&fn) {
    for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
      const GraphIndex *idx = store_.index(graphs[gi]);
      idx->ForEach(s, p, o, [&](TermId a, TermId b, TermId c) {
        for (std::size_t gj = 0; gj < gi; ++gj) {
          if (store_.index(graphs[gj])->Contains(a, b, c)) return true;
        }
        fn(a, b, c);
        return true;
      });
    }
  }

  // Value of a node under `row`; kAnyTerm for an unbound variable.
  TermId Resolve(const Node &n, const Row &row) {
    if (const auto *t = std::get_if<Term>(&n)) return IdOf(*t);
    return row[slots_.at(std::get<Variable>(n).name)];
  }

  std::vector<IdPair> EvalPath(const PropertyPath &path, TermId s, TermId o,
                               const std::vector<TermId> &graphs) {
    std::vector<IdPair> out;
    switch (path.kind) {
      case PropertyPath::Kind::kLink: {
        TermId p = IdOf(path.iri);
        ForEachTriple(graphs, s, p, o, [&](TermId a, TermId, TermId c) { out.emplace_back(a, c); });
        break;
      }
      case PropertyPath::Kind::kSequence: {
        std::size_t n = path.parts.size();
        out = EvalPath(path.parts[0], s, n == 1 ? o : kAnyTerm, graphs);
        for (std::size_t k = 1; k < n; ++k) {
          std::vector<IdPair> next;
          TermId end = k + 1 == n ? o : kAnyTerm;
          std::unordered_map<TermId, std::vector<IdPair>> cache;
          for (const auto &[a, mid] : out) {
            auto it = cache.find(mid);
            if (it == cache.end()) {
              it = cache.emplace(mid, EvalPath(path.parts[k], mid, end, graphs)).first;
            }
            for (const auto &[m2, b] : it->second) next.emplace_back(a, b);
          }
          out = std::move(next);
        }
        break;
      }
      case PropertyPath::Kind::kAlternative:
        for (const PropertyPath &part : path.parts) {
          std::vector<IdPair> sub = EvalPath(part, s, o, graphs);
          out.insert(out.end(), sub.begin(), sub.end());
        }
        break;
    }
    return out;
  }

  // Binds `node` to `value` in `row`. Returns false on conflict; records the
  // slot in `bound` when it was newly assigned.
  bool Bind(const Node &node, TermId value, Row &row, std::vector<std::size_t> &bound) {
    const auto *v = std::get_if<Variable>(&node);
    if (v == nullptr) return true;
    std::size_t slot = slots_.at(v->name);
    if (row[slot] == kAnyTerm) {
      row[slot] = value;
      bound.push_back(slot);
      return true;
    }
    return row[slot] == value;
  }

  void MatchBgp(const std::vector<TriplePattern> &triples, std::size_t i, Row &row,
                const std::vector<TermId> &graphs, Rows &out) {
    if (i == triples.size()) {
      out.push_back(row);
      return;
    }
    const TriplePattern &t = triples[i];
    TermId s = Resolve(t.subject, row);
    TermId o = Resolve(t.object, row);
    std::vector<std::array<TermId, 3>> matches;
    if (t.path) {
      for (const auto &[a, b] : EvalPath(*t.path, s, o, graphs)) matches.push_back({a, kAnyTerm, b});
    } else {
      TermId p = Resolve(t.predicate, row);
      ForEachTriple(graphs, s, p, o,
                    [&](TermId a, TermId b, TermId c) { matches.push_back({a, b, c}); });
    }
    std::vector<std::size_t> bound;
    for (const auto &m : matches) {
      bool ok = Bind(t.subject, m[0], row, bound) &&
                (t.path || Bind(t.predicate, m[1], row, bound)) && Bind(t.object, m[2], row, bound);
      if (ok) MatchBgp(triples, i + 1, row, graphs, out);
      for (std::size_t slot : bound) row[slot] = kAnyTerm;
      bound.clear();
    }
  }

  Rows ValuesRows(const ValuesBlock &values, const Row &seed) {
    Rows out;
    for (const auto &vrow : values.rows) {
      Row r(slot_vars_.size(), kAnyTerm);
      for (std::size_t k = 0; k < values.variables.size(); ++k) {
        if (vrow[k]) r[slots_.at(values.variables[k].name)] = IdOf(*vrow[k]);
      }
      if (Compatible(r, seed)) out.push_back(Merge(seed, r));
    }
    return out;
  }

  Rows Join(const Rows &left, const Rows &right) {
    Rows out;
    if (left.empty() || right.empty()) return out;
    std::vector<std::size_t> shared;
    for (std::size_t i = 0; i < slot_vars_.size(); ++i) {
      bool all = true;
      for (const Row &r : left) {
        if (r[i] == kAnyTerm) { all = false; break; }
      }
      if (!all) continue;
      for (const Row &r : right) {
        if (r[i] == kAnyTerm) { all = false; break; }
      }
      if (all) shared.push_back(i);
    }
    if (shared.empty()) {
      for (const Row &a : left) {
        for (const Row &b : right) {
          if (Compatible(a, b)) out.push_back(Merge(a, b));
        }
      }
      return out;
    }
    std::unordered_map<std::vector<TermId>, std::vector<const Row *>, VectorHash> buckets;
    std::vector<TermId> key(shared.size());
    for (const Row &b : right) {
      for (std::size_t k = 0; k < shared.size(); ++k) key[k] = b[shared[k]];
      buckets[key].push_back(&b);
    }
    for (const Row &a : left) {
      for (std::size_t k = 0; k < shared.size(); ++k) key[k] = a[shared[k]];
      auto it = buckets.find(key);
      if (it == buckets.end()) continue;
      for (const Row *b : it->second) {
        if (Compatible(a, *b)) out.push_back(Merge(a, *b));
      }
    }
    return out;
  }

  bool PassesFilters(const std::vector<const GraphPattern *> &filters, const Row &row,
                     const std::vector<TermId> &graphs) {
    for (const GraphPattern *f : filters) {
      if (f->kind == GraphPattern::Kind::kFilterNotExists) {
        if (!Eval(f->children[0], graphs, row).empty()) return false;
      } else if (EvalExpression(f->expression, row) != std::optional<bool>(true)) {
        return false;
      }
    }
    return true;
  }

  std::optional<Term> ExpressionTerm(const Expression &e, const Row &row) const {
    return Ground(e.leaf, row);
  }

  // nullopt signals an evaluation error (which a filter treats as false).
  std::optional<bool> EvalExpression(const Expression &e, const Row &row) {
    using K = Expression::Kind;
    switch (e.kind) {
      case K::kLeaf: {
        auto t = ExpressionTerm(e, row);
        if (!t) return std::nullopt;
        if (t->is_literal() && t->datatype() == vocab::kXsdBoolean) return t->value() == "true";
        if (auto n = NumericValue(*t)) return *n != 0;
        return std::nullopt;
      }
      case K::kAnd: {
        auto a = EvalExpression(e.operands[0], row);
        auto b = EvalExpression(e.operands[1], row);
        if (a == std::optional<bool>(false) || b == std::optional<bool>(false)) return false;
        if (!a || !b) return std::nullopt;
        return true;
      }
      case K::kOr: {
        auto a = EvalExpression(e.operands[0], row);
        auto b = EvalExpression(e.operands[1], row);
        if (a == std::optional<bool>(true) || b == std::optional<bool>(true)) return true;
        if (!a || !b) return std::nullopt;
        return false;
      }
      case K::kNot: {
        auto a = EvalExpression(e.operands[0], row);
        if (!a) return std::nullopt;
        return !*a;
      }
      default:
        break;
    }
    if (e.operands[0].kind != K::kLeaf || e.operands[1].kind != K::kLeaf) return std::nullopt;
    auto a = ExpressionTerm(e.operands[0], row);
    auto b = ExpressionTerm(e.operands[1], row);
    if (!a || !b) return std::nullopt;
    int cmp;
    auto na = NumericValue(*a);
    auto nb = NumericValue(*b);
    if (na && nb) {
      cmp = *na < *nb ? -1 : *na > *nb ? 1 : 0;
    } else if (e.kind == K::kEq || e.kind == K::kNe) {
      cmp = *a == *b ? 0 : 1;
    } else if (a->is_literal() && b->is_literal() && a->datatype() == b->datatype() &&
               a->lang() == b->lang()) {
      cmp = a->value().compare(b->value());
    } else {
      return std::nullopt;
    }
    switch (e.kind) {
      case K::kEq: return cmp == 0;
      case K::kNe: return cmp != 0;
      case K::kLt: return cmp < 0;
      case K::kLe: return cmp <= 0;
      case K::kGt: return cmp > 0;
      case K::kGe: return cmp >= 0;
      default: return std::nullopt;
    }
  }

  // A group's elements joined left to right; filters apply to the group's
  // final rows, or are handed back through `deferred` (OPTIONAL conditions).
  Rows EvalGroup(const GraphPattern &group, const std::vector<TermId> &graphs, const Row &seed,
                 std::vector<const GraphPattern *> *deferred) {
    Rows acc{seed};
    std::vector<const GraphPattern *> filters;
    for (const GraphPattern &child : group.children) {
      switch (child.kind) {
        case GraphPattern::Kind::kFilterNotExists:
        case GraphPattern::Kind::kFilter:
          filters.push_back(&child);
          break;
        case GraphPattern::Kind::kOptional: {
          const GraphPattern &inner = child.children[0];
          std::vector<const GraphPattern *> conditions;
          Rows right = inner.kind == GraphPattern::Kind::kGroup
                           ? EvalGroup(inner, graphs, seed, &conditions)
                           : Eval(inner, graphs, seed);
          Rows next;
          for (const Row &a : acc) {
            bool matched = false;
            for (const Row &b : right) {
              if (!Compatible(a, b)) continue;
              Row m = Merge(a, b);
              if (!PassesFilters(conditions, m, graphs)) continue;
              next.push_back(std::move(m));
              matched = true;
            }
            if (!matched) next.push_back(a);
          }
          acc = std::move(next);
          break;
        }
        default:
          acc = Join(acc, Eval(child, graphs, seed));
          break;
      }
      if (acc.empty()) break;
    }
    if (deferred != nullptr) {
      deferred->insert(deferred->end(), filters.begin(), filters.end());
      return acc;
    }
    if (filters.empty()) return acc;
    Rows out;
    for (Row &r : acc) {
      if (PassesFilters(filters, r, graphs)) out.push_back(std::move(r));
    }
    return out;
  }

  Rows Eval(const GraphPattern &p, const std::vector<TermId> &graphs, const Row &seed) {
    switch (p.kind) {
      case GraphPattern::Kind::kBasic: {
        Rows out;
        Row row = seed;
        MatchBgp(p.triples, 0, row, graphs, out);
        return out;
      }
      case GraphPattern::Kind::kGroup:
        return EvalGroup(p, graphs, seed, nullptr);
      case GraphPattern::Kind::kUnion: {
        Rows out = Eval(p.children[0], graphs, seed);
        Rows right = Eval(p.children[1], graphs, seed);
        out.insert(out.end(), std::make_move_iterator(right.begin()),
                   std::make_move_iterator(right.end()));
        return out;
      }
      case GraphPattern::Kind::kGraph: {
        Rows out;
        if (const auto *iri = std::get_if<Term>(&p.graph)) {
          auto id = store_.Lookup(*iri);
          if (!id || store_.index(*id) == nullptr) return out;
          return Eval(p.children[0], {*id}, seed);
        }
        std::size_t slot = slots_.at(std::get<Variable>(p.graph).name);
        for (TermId g : all_graph_ids_) {
          if (seed[slot] != kAnyTerm && seed[slot] != g) continue;
          for (Row &r : Eval(p.children[0], {g}, seed)) {
            if (r[slot] == kAnyTerm) r[slot] = g;
            if (r[slot] == g) out.push_back(std::move(r));
          }
        }
        return out;
      }
      case GraphPattern::Kind::kValues:
        return ValuesRows(p.values, seed);
      case GraphPattern::Kind::kOptional: {
        GraphPattern wrapper;
        wrapper.kind = GraphPattern::Kind::kGroup;
        wrapper.children.push_back(p);
        return EvalGroup(wrapper, graphs, seed, nullptr);
      }
      case GraphPattern::Kind::kFilterNotExists:
      case GraphPattern::Kind::kFilter: {
        Rows out;
        if (PassesFilters({&p}, seed, graphs)) out.push_back(seed);
        return out;
      }
    }
    return {};
  }

  const GraphStore &store_;
  const Query &query_;
  std::vector<TermId> default_ids_;
  std::vector<TermId> all_graph_ids_;
  std::map<std::string, std::size_t> slots_;
  std::vector<Variable> slot_vars_;
  std::vector<Term> local_terms_;
  std::unordered_map<Term, TermId, rdf::TermHash> local_ids_;
};

void RequireForm(const Query &q, QueryForm form, const char *what) {
  if (q.form != form) throw InvalidArgumentError(std::string("query is not a ") + what);
}

}  // namespace

SolutionSet EvaluateSelect(const GraphStore &store, const Query &query,
                           const std::vector<Term> &default_graphs) {
  RequireForm(query, QueryForm::kSelect, "SELECT");
  return Evaluator(store, query, default_graphs).Select();
}

std::vector<Triple> EvaluateConstruct(const GraphStore &store, const Query &query,
                                      const std::vector<Term> &default_graphs) {
  RequireForm(query, QueryForm::kConstruct, "CONSTRUCT");
  return Evaluator(store, query, default_graphs).Instantiate(query.templ);
}

std::vector<Triple> ConciseBoundedDescription(const GraphStore &store, const Term &node,
                                              const std::vector<Term> &default_graphs) {
  const std::vector<Term> &graphs =
      default_graphs.empty() ? StandardDefaultGraphs() : default_graphs;
  std::set<Triple> out;
  std::set<Term> visited{node};
  std::deque<Term> queue{node};
  while (!queue.empty()) {
    Term current = queue.front();
    queue.pop_front();
    for (const Term &g : graphs) {
      if (!store.IsRegistered(g)) continue;
      for (const rdf::Quad &q : store.Match(current, std::nullopt, std::nullopt, g)) {
        out.insert(q.triple());
        if (q.object.is_blank() && visited.insert(q.object).second) queue.push_back(q.object);
      }
    }
  }
  return std::vector<Triple>(out.begin(), out.end());
}

std::vector<Triple> EvaluateDescribe(const GraphStore &store, const Query &query,
                                     const std::vector<Term> &default_graphs) {
  RequireForm(query, QueryForm::kDescribe, "DESCRIBE");
  std::vector<Term> targets = Evaluator(store, query, default_graphs).DescribeTargets();
  std::set<Triple> out;
  for (const Term &t : targets) {
    for (Triple &triple : ConciseBoundedDescription(store, t, default_graphs)) {
      out.insert(std::move(triple));
    }
  }
  return std::vector<Triple>(out.begin(), out.end());
}

std::vector<Triple> InsertCandidates(const GraphStore &store, const Query &query,
                                     const std::vector<Term> &default_graphs) {
  RequireForm(query, QueryForm::kInsertWhere, "INSERT ... WHERE");
  return Evaluator(store, query, default_graphs).Instantiate(query.templ);
}

std::size_t ExecuteInsertWhere(GraphStore &store, const Query &query, const Term &target,
                               const std::vector<Term> &default_graphs) {
  if (!store.IsRegistered(target)) throw UnregisteredGraphError(target.value());
  std::size_t added = 0;
  for (const Triple &t : InsertCandidates(store, query, default_graphs)) {
    if (store.Insert(t, target)) ++added;
  }
  return added;
}

}  // namespace wikikb::sparql
