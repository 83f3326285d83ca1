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

#ifndef WIKIKB_SERVICE_JOURNAL_H_
#define WIKIKB_SERVICE_JOURNAL_H_

#include <chrono>
#include <cstdint>
#include <string>
#include <vector>

namespace wikikb::service {

using Clock = std::chrono::system_clock;

// "2014-01-14T09:30:00.250Z" and back. Parse throws InvalidArgumentError.
std::string FormatTimestamp(Clock::time_point t);
Clock::time_point ParseTimestamp(const std::string &text);

struct JournalRecord {
  enum class Kind { kPage, kLoad, kImport };

  Kind kind = Kind::kPage;
  std::uint64_t id = 0;
  Clock::time_point timestamp;
  std::string author;

  // kPage
  std::string ns;
  std::string title;
  std::string wikitext;

  // kLoad: `content` in `format` loaded into `graph`.
  std::string graph;
  std::string format;
  std::string content;

  // kImport: decoded results are kept so replay never refetches.
  std::string source;
  std::string results_json;
  std::string alignment;
  std::string templ;

  std::string ToJson() const;
  // Throws InvalidArgumentError.
  static JournalRecord FromJson(const std::string &json);
};

// Append-only file of records framed as
//   uint32 little-endian payload length | uint32 little-endian CRC-32 | JSON
// A torn final record (short frame or bad checksum) is dropped on open and
// the file truncated to the last complete record.
class Journal {
 public:
  // Creates the file if needed. Throws StorageError.
  explicit Journal(std::string path);
  ~Journal();
  Journal(const Journal &) = delete;
  Journal &operator=(const Journal &) = delete;

  // Records present when the journal was opened.
  const std::vector<JournalRecord> &replayed() const { return replayed_; }
  std::size_t dropped_bytes() const { return dropped_bytes_; }

  // Writes and fsyncs one record. On failure the file is restored to its
  // previous length and StorageError is thrown.
  void Append(const JournalRecord &record);

  const std::string &path() const { return path_; }

 private:
  std::string path_;
  int fd_ = -1;
  std::vector<JournalRecord> replayed_;
  std::size_t dropped_bytes_ = 0;
};

}  // namespace wikikb::service

#endif  // WIKIKB_SERVICE_JOURNAL_H_
