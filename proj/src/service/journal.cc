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

#include "wikikb/service/journal.h"

#include <fcntl.h>
#include <sys/stat.h>
#include <unistd.h>
#include <zlib.h>

#include <cerrno>
#include <cstdio>
#include <cstring>

#include <json.hpp>

#include "wikikb/error.h"

namespace wikikb::service {

using json = nlohmann::json;
using namespace std::chrono;

std::string FormatTimestamp(Clock::time_point t) {
  auto ms = floor<milliseconds>(t);
  auto day = floor<days>(ms);
  year_month_day ymd(day);
  hh_mm_ss hms(ms - day);
  char buf[40];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02d.%03dZ",
                static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()),
                static_cast<unsigned>(ymd.day()), static_cast<int>(hms.hours().count()),
                static_cast<int>(hms.minutes().count()), static_cast<int>(hms.seconds().count()),
                static_cast<int>(hms.subseconds().count()));
  return buf;
}

Clock::time_point ParseTimestamp(const std::string &text) {
  int y, mo, d, h, mi, s, ms = 0, consumed = 0;
  bool ok = std::sscanf(text.c_str(), "%d-%d-%dT%d:%d:%d.%dZ%n", &y, &mo, &d, &h, &mi, &s, &ms,
                        &consumed) == 7 ||
            (ms = 0, std::sscanf(text.c_str(), "%d-%d-%dT%d:%d:%dZ%n", &y, &mo, &d, &h, &mi, &s,
                                 &consumed) == 6);
  year_month_day ymd{year(y), month(static_cast<unsigned>(mo)), day(static_cast<unsigned>(d))};
  if (!ok || static_cast<std::size_t>(consumed) != text.size() || !ymd.ok() || h > 23 || mi > 59 ||
      s > 60) {
    throw InvalidArgumentError("bad timestamp: " + text);
  }
  return sys_days(ymd) + hours(h) + minutes(mi) + seconds(s) + milliseconds(ms);
}

std::string JournalRecord::ToJson() const {
  json j;
  j["id"] = id;
  j["timestamp"] = FormatTimestamp(timestamp);
  j["author"] = author;
  switch (kind) {
    case Kind::kPage:
      j["kind"] = "page";
      j["ns"] = ns;
      j["title"] = title;
      j["wikitext"] = wikitext;
      break;
    case Kind::kLoad:
      j["kind"] = "load";
      j["graph"] = graph;
      j["format"] = format;
      j["content"] = content;
      break;
    case Kind::kImport:
      j["kind"] = "import";
      j["source"] = source;
      j["results"] = results_json;
      j["alignment"] = alignment;
      j["template"] = templ;
      break;
  }
  return j.dump();
}

JournalRecord JournalRecord::FromJson(const std::string &text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw InvalidArgumentError("journal record is not JSON");
  try {
    JournalRecord r;
    r.id = j.at("id").get<std::uint64_t>();
    r.timestamp = ParseTimestamp(j.at("timestamp").get<std::string>());
    r.author = j.value("author", "");
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "page") {
      r.kind = Kind::kPage;
      r.ns = j.at("ns").get<std::string>();
      r.title = j.at("title").get<std::string>();
      r.wikitext = j.at("wikitext").get<std::string>();
    } else if (kind == "load") {
      r.kind = Kind::kLoad;
      r.graph = j.at("graph").get<std::string>();
      r.format = j.at("format").get<std::string>();
      r.content = j.at("content").get<std::string>();
    } else if (kind == "import") {
      r.kind = Kind::kImport;
      r.source = j.at("source").get<std::string>();
      r.results_json = j.at("results").get<std::string>();
      r.alignment = j.at("alignment").get<std::string>();
      r.templ = j.at("template").get<std::string>();
    } else {
      throw InvalidArgumentError("unknown journal record kind " + kind);
    }
    return r;
  } catch (const json::exception &e) {
    throw InvalidArgumentError(std::string("journal record: ") + e.what());
  }
}

namespace {

std::uint32_t ReadLe32(const unsigned char *p) {
  return static_cast<std::uint32_t>(p[0]) | static_cast<std::uint32_t>(p[1]) << 8 |
         static_cast<std::uint32_t>(p[2]) << 16 | static_cast<std::uint32_t>(p[3]) << 24;
}

void WriteLe32(std::uint32_t v, unsigned char *p) {
  for (int i = 0; i < 4; ++i) p[i] = static_cast<unsigned char>(v >> (8 * i));
}

[[noreturn]] void Fail(const std::string &what, const std::string &path) {
  throw StorageError(what + " " + path + ": " + std::strerror(errno));
}

}  // namespace

Journal::Journal(std::string path) : path_(std::move(path)) {
  fd_ = ::open(path_.c_str(), O_RDWR | O_CREAT | O_CLOEXEC, 0644);
  if (fd_ < 0) Fail("cannot open journal", path_);

  std::string bytes;
  char buf[1 << 16];
  for (;;) {
    ssize_t n = ::read(fd_, buf, sizeof buf);
    if (n < 0) {
      if (errno == EINTR) continue;
      ::close(fd_);
      Fail("cannot read journal", path_);
    }
    if (n == 0) break;
    bytes.append(buf, static_cast<std::size_t>(n));
  }

  std::size_t pos = 0;
  while (pos + 8 <= bytes.size()) {
    const auto *head = reinterpret_cast<const unsigned char *>(bytes.data() + pos);
    std::uint32_t len = ReadLe32(head);
    std::uint32_t crc = ReadLe32(head + 4);
    if (bytes.size() - pos - 8 < len) break;
    const char *payload = bytes.data() + pos + 8;
    if (crc32(0L, reinterpret_cast<const Bytef *>(payload), len) != crc) break;
    try {
      replayed_.push_back(JournalRecord::FromJson(std::string(payload, len)));
    } catch (const InvalidArgumentError &) {
      break;
    }
    pos += 8 + len;
  }
  dropped_bytes_ = bytes.size() - pos;
  if (dropped_bytes_ > 0 && ::ftruncate(fd_, static_cast<off_t>(pos)) != 0) {
    ::close(fd_);
    Fail("cannot truncate journal", path_);
  }
  if (::lseek(fd_, static_cast<off_t>(pos), SEEK_SET) < 0) {
    ::close(fd_);
    Fail("cannot seek journal", path_);
  }
}

Journal::~Journal() {
  if (fd_ >= 0) ::close(fd_);
}

void Journal::Append(const JournalRecord &record) {
  std::string payload = record.ToJson();
  std::string frame(8, '\0');
  auto *head = reinterpret_cast<unsigned char *>(frame.data());
  WriteLe32(static_cast<std::uint32_t>(payload.size()), head);
  WriteLe32(static_cast<std::uint32_t>(
                crc32(0L, reinterpret_cast<const Bytef *>(payload.data()),
                      static_cast<uInt>(payload.size()))),
            head + 4);
  frame += payload;

  off_t start = ::lseek(fd_, 0, SEEK_END);
  if (start < 0) Fail("cannot seek journal", path_);
  std::size_t done = 0;
  while (done < frame.size()) {
    ssize_t n = ::write(fd_, frame.data() + done, frame.size() - done);
    if (n < 0) {
      if (errno == EINTR) continue;
      int saved = errno;
      [[maybe_unused]] int ignored = ::ftruncate(fd_, start);
      errno = saved;
      Fail("cannot write journal", path_);
    }
    done += static_cast<std::size_t>(n);
  }
  if (::fsync(fd_) != 0) {
    int saved = errno;
    [[maybe_unused]] int ignored = ::ftruncate(fd_, start);
    errno = saved;
    Fail("cannot sync journal", path_);
  }
}

}  // namespace wikikb::service
