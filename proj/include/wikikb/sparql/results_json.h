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

#ifndef WIKIKB_SPARQL_RESULTS_JSON_H_
#define WIKIKB_SPARQL_RESULTS_JSON_H_

#include <string>
#include <string_view>

#include "wikikb/sparql/eval.h"

namespace wikikb::sparql {

// SPARQL 1.1 JSON results (application/sparql-results+json).
std::string EncodeResultsJson(const SolutionSet &solutions);

// Throws MalformedResponseError for anything that is not a complete SELECT
// results document.
SolutionSet DecodeResultsJson(std::string_view body);

}  // namespace wikikb::sparql

#endif  // WIKIKB_SPARQL_RESULTS_JSON_H_
