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

#ifndef WIKIKB_HUTO_TEMPORAL_H_
#define WIKIKB_HUTO_TEMPORAL_H_

#include <chrono>
#include <compare>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "wikikb/rdf/store.h"

namespace wikikb::huto {

// Proleptic Gregorian calendar date.
struct CalendarDate {
  int year = 1970;
  unsigned month = 1;
  unsigned day = 1;

  bool valid() const;
  std::chrono::sys_days days() const;
  static CalendarDate FromDays(std::chrono::sys_days d);
  // "YYYY-MM-DD"; throws InvalidArgumentError.
  static CalendarDate Parse(const std::string &text);
  std::string ToString() const;

  friend auto operator<=>(const CalendarDate &, const CalendarDate &) = default;
  friend bool operator==(const CalendarDate &, const CalendarDate &) = default;
};

struct DiscourseTime {
  CalendarDate date;
  int utc_offset_minutes = 0;

  // Local calendar date of `instant` at the given offset.
  static DiscourseTime At(std::chrono::system_clock::time_point instant,
                          int utc_offset_minutes = 0);
};

// huto:Today, huto:Yesterday, huto:Tomorrow.
std::vector<rdf::Term> DeicticClasses();

// Effective date of a deictic class for the discourse date; nullopt for a
// class that is not deictic.
std::optional<CalendarDate> EffectiveDate(const rdf::Term &deictic_class,
                                          const CalendarDate &discourse);

// Gives every node typed by a deictic class huto:year, huto:month and
// huto:day (integers) in `target`. Nodes already carrying any of the three
// are left alone. Returns the number of new quads.
std::size_t ResolveDeictic(rdf::GraphStore &store, const DiscourseTime &discourse,
                           const rdf::Term &target = rdf::GraphStore::InferredGraph());

// Same, with the discourse time chosen per node (nullopt skips the node).
std::size_t ResolveDeictic(
    rdf::GraphStore &store,
    const std::function<std::optional<DiscourseTime>(const rdf::Term &node)> &discourse_of,
    const rdf::Term &target = rdf::GraphStore::InferredGraph());

// The resource-type temporal query: descriptions of the top-level
// annotations attached to `resource` by URI, by reified triple, or by a named
// graph mentioning it. Sorted, duplicate free.
std::vector<rdf::Triple> TemporalityOf(const rdf::GraphStore &store, const rdf::Term &resource);

// Resources with an annotation whose date or interval intersects the closed
// window [begin, end]. Partial dates (year, year-month) cover their whole
// period; expressions without calendar fields are ignored. Throws
// InvalidArgumentError when begin > end.
std::vector<rdf::Term> ResourcesInInterval(const rdf::GraphStore &store, const CalendarDate &begin,
                                           const CalendarDate &end);

}  // namespace wikikb::huto

#endif  // WIKIKB_HUTO_TEMPORAL_H_
