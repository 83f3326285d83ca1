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

#include "wikikb/huto/temporal.h"

#include <charconv>
#include <cstdio>
#include <set>

#include "wikikb/error.h"
#include "wikikb/rdf/vocab.h"
#include "wikikb/sparql/eval.h"
#include "wikikb/sparql/parser.h"

namespace wikikb::huto {

using rdf::GraphStore;
using rdf::Term;
using namespace std::chrono;

namespace {

Term Huto(std::string_view local) { return Term::Iri(std::string(vocab::kHuto) + std::string(local)); }

constexpr std::string_view kTemporalityQuery = R"(
DESCRIBE ?x
WHERE {
    { ?x huto:uri ?resource } UNION
    { ?x huto:triple/(rdf:subject|rdf:object) ?resource } UNION
    { ?x huto:graph ?g .
        graph ?g {
            { ?resource ?p ?o } UNION
            { ?s ?p ?resource }
        }
    }
    FILTER NOT EXISTS { ?j ?k ?x }
}
)";

std::vector<Term> Objects(const GraphStore &store, const Term &s, const Term &p) {
  std::set<Term> out;
  for (const Term &g : sparql::StandardDefaultGraphs()) {
    for (const rdf::Quad &q : store.Match(s, p, std::nullopt, g)) out.insert(q.object);
  }
  return std::vector<Term>(out.begin(), out.end());
}

std::vector<Term> Subjects(const GraphStore &store, const Term &p, const Term &o) {
  std::set<Term> out;
  for (const Term &g : sparql::StandardDefaultGraphs()) {
    for (const rdf::Quad &q : store.Match(std::nullopt, p, o, g)) out.insert(q.subject);
  }
  return std::vector<Term>(out.begin(), out.end());
}

std::optional<long long> IntegerField(const GraphStore &store, const Term &node, const Term &p) {
  for (const Term &v : Objects(store, node, p)) {
    if (!v.is_literal()) continue;
    long long n = 0;
    const std::string &s = v.value();
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), n);
    if (ec == std::errc() && ptr == s.data() + s.size()) return n;
  }
  return std::nullopt;
}

struct Span {
  CalendarDate lo, hi;
};

// The calendar period a date node covers.
std::optional<Span> DateSpan(const GraphStore &store, const Term &node) {
  auto y = IntegerField(store, node, Huto("year"));
  if (!y) return std::nullopt;
  auto m = IntegerField(store, node, Huto("month"));
  auto d = IntegerField(store, node, Huto("day"));
  int year = static_cast<int>(*y);
  if (!m) return Span{{year, 1, 1}, {year, 12, 31}};
  if (*m < 1 || *m > 12) return std::nullopt;
  unsigned month = static_cast<unsigned>(*m);
  if (!d) {
    auto last = year_month_day_last(std::chrono::year(year), month_day_last(std::chrono::month(month)));
    return Span{{year, month, 1}, {year, month, static_cast<unsigned>(last.day())}};
  }
  CalendarDate date{year, month, static_cast<unsigned>(*d)};
  if (!date.valid()) return std::nullopt;
  return Span{date, date};
}

std::optional<Span> ExpressionSpan(const GraphStore &store, const Term &expr) {
  if (auto s = DateSpan(store, expr)) return s;
  std::optional<Span> lo, hi;
  for (const Term &b : Objects(store, expr, Huto("begin"))) {
    if ((lo = DateSpan(store, b))) break;
  }
  for (const Term &e : Objects(store, expr, Huto("end"))) {
    if ((hi = DateSpan(store, e))) break;
  }
  if (!lo || !hi || hi->hi < lo->lo) return std::nullopt;
  return Span{lo->lo, hi->hi};
}

}  // namespace

bool CalendarDate::valid() const {
  return year_month_day(std::chrono::year(year), std::chrono::month(month), std::chrono::day(day))
      .ok();
}

sys_days CalendarDate::days() const {
  return sys_days(year_month_day(std::chrono::year(year), std::chrono::month(month),
                                 std::chrono::day(day)));
}

CalendarDate CalendarDate::FromDays(sys_days d) {
  year_month_day ymd(d);
  return {static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()),
          static_cast<unsigned>(ymd.day())};
}

CalendarDate CalendarDate::Parse(const std::string &text) {
  CalendarDate d;
  int consumed = 0;
  if (std::sscanf(text.c_str(), "%d-%u-%u%n", &d.year, &d.month, &d.day, &consumed) != 3 ||
      static_cast<std::size_t>(consumed) != text.size() || !d.valid()) {
    throw InvalidArgumentError("not a calendar date: " + text);
  }
  return d;
}

std::string CalendarDate::ToString() const {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", year, month, day);
  return buf;
}

DiscourseTime DiscourseTime::At(system_clock::time_point instant, int utc_offset_minutes) {
  auto local = instant + minutes(utc_offset_minutes);
  return {CalendarDate::FromDays(floor<std::chrono::days>(local)), utc_offset_minutes};
}

std::vector<Term> DeicticClasses() { return {Huto("Today"), Huto("Yesterday"), Huto("Tomorrow")}; }

std::optional<CalendarDate> EffectiveDate(const Term &deictic_class, const CalendarDate &discourse) {
  int shift;
  if (deictic_class == Huto("Today")) {
    shift = 0;
  } else if (deictic_class == Huto("Yesterday")) {
    shift = -1;
  } else if (deictic_class == Huto("Tomorrow")) {
    shift = 1;
  } else {
    return std::nullopt;
  }
  return CalendarDate::FromDays(discourse.days() + std::chrono::days(shift));
}

std::size_t ResolveDeictic(GraphStore &store, const DiscourseTime &discourse, const Term &target) {
  return ResolveDeictic(
      store, [&](const Term &) { return std::optional<DiscourseTime>(discourse); }, target);
}

std::size_t ResolveDeictic(
    GraphStore &store,
    const std::function<std::optional<DiscourseTime>(const Term &node)> &discourse_of,
    const Term &target) {
  if (!store.IsRegistered(target)) throw UnregisteredGraphError(target.value());
  const Term type = Term::Iri(vocab::kRdfType);
  const Term year = Huto("year"), month = Huto("month"), day = Huto("day");

  // Collected first: the inserts below must not disturb the scan.
  std::vector<std::pair<Term, Term>> typed;
  std::set<Term> seen;
  for (const Term &cls : DeicticClasses()) {
    for (const Term &node : Subjects(store, type, cls)) {
      if (seen.insert(node).second) typed.emplace_back(node, cls);
    }
  }
  std::size_t added = 0;
  for (const auto &[node, cls] : typed) {
    if (!Objects(store, node, year).empty() || !Objects(store, node, month).empty() ||
        !Objects(store, node, day).empty()) {
      continue;
    }
    auto discourse = discourse_of(node);
    if (!discourse || !discourse->date.valid()) continue;
    CalendarDate d = *EffectiveDate(cls, discourse->date);
    added += store.Insert(rdf::Triple{node, year, Term::Integer(d.year)}, target);
    added += store.Insert(rdf::Triple{node, month, Term::Integer(d.month)}, target);
    added += store.Insert(rdf::Triple{node, day, Term::Integer(d.day)}, target);
  }
  return added;
}

std::vector<rdf::Triple> TemporalityOf(const GraphStore &store, const Term &resource) {
  static const sparql::Query kQuery = sparql::ParseQuery(kTemporalityQuery);
  sparql::Query q = kQuery;
  q.values = sparql::ValuesBlock{{sparql::Variable{"resource"}}, {{resource}}};
  // Inferred before/after edges point at annotation nodes and would hide
  // them from the top-level filter, so only asserted graphs are consulted.
  return sparql::EvaluateDescribe(store, q,
                                  {GraphStore::DataGraph(), GraphStore::UscoGraph(),
                                   GraphStore::HutoGraph()});
}

std::vector<Term> ResourcesInInterval(const GraphStore &store, const CalendarDate &begin,
                                      const CalendarDate &end) {
  if (!begin.valid() || !end.valid()) throw InvalidArgumentError("invalid calendar date");
  if (end < begin) {
    throw InvalidArgumentError("interval begins after it ends: " + begin.ToString() + " > " +
                               end.ToString());
  }
  const Term type = Term::Iri(vocab::kRdfType);
  std::set<Term> out;
  for (const Term &annotation : Subjects(store, type, Huto("TemporalAnnotation"))) {
    bool hit = false;
    for (const Term &expr : Objects(store, annotation, Huto("hasTemporalExp"))) {
      auto span = ExpressionSpan(store, expr);
      if (span && !(span->hi < begin) && !(end < span->lo)) {
        hit = true;
        break;
      }
    }
    if (!hit) continue;
    for (const Term &r : Objects(store, annotation, Huto("uri"))) out.insert(r);
    for (const Term &t : Objects(store, annotation, Huto("triple"))) {
      for (const Term &r : Objects(store, t, Term::Iri(vocab::kRdfSubject))) out.insert(r);
      for (const Term &r : Objects(store, t, Term::Iri(vocab::kRdfObject))) out.insert(r);
    }
    for (const Term &g : Objects(store, annotation, Huto("graph"))) {
      if (!store.IsRegistered(g)) continue;
      for (const rdf::Quad &q : store.Match(std::nullopt, std::nullopt, std::nullopt, g)) {
        if (q.subject.is_iri()) out.insert(q.subject);
        if (q.object.is_iri()) out.insert(q.object);
      }
    }
  }
  std::vector<Term> result;
  for (const Term &t : out) {
    if (!t.is_literal()) result.push_back(t);
  }
  return result;
}

}  // namespace wikikb::huto
