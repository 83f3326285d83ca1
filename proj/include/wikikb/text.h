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

#ifndef WIKIKB_TEXT_H_
#define WIKIKB_TEXT_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

namespace wikikb {

// Appends the UTF-8 encoding of a code point.
void AppendUtf8(std::uint32_t code_point, std::string *out);

// Percent-encodes every byte outside the RFC 3986 unreserved set.
std::string PercentEncode(std::string_view text);
std::string PercentDecode(std::string_view text);

std::string_view Trim(std::string_view text);

// Tracks 1-based line/column while scanning a buffer.
struct SourcePos {
  std::size_t line = 1;
  std::size_t column = 1;
};
SourcePos PositionAt(std::string_view text, std::size_t offset);

}  // namespace wikikb

#endif  // WIKIKB_TEXT_H_
