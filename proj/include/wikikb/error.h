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

#ifndef WIKIKB_ERROR_H_
#define WIKIKB_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wikikb {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Syntax error in RDF, query, rule catalog or alignment input. Line and
// column are 1-based; offset is the 0-based byte offset.
class ParseError : public Error {
 public:
  ParseError(const std::string &message, std::size_t line, std::size_t column,
             std::size_t offset)
      : Error(message + " at line " + std::to_string(line) + ", column " +
              std::to_string(column)),
        detail_(message),
        line_(line),
        column_(column),
        offset_(offset) {}

  const std::string &detail() const { return detail_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  std::size_t offset() const { return offset_; }

 private:
  std::string detail_;
  std::size_t line_;
  std::size_t column_;
  std::size_t offset_;
};

class UnregisteredGraphError : public Error {
 public:
  explicit UnregisteredGraphError(const std::string &graph)
      : Error("graph is not registered: " + graph), graph_(graph) {}
  const std::string &graph() const { return graph_; }

 private:
  std::string graph_;
};

// A property previously declared object-valued is used with a literal, or
// the converse.
class PropertyKindConflict : public Error {
 public:
  PropertyKindConflict(const std::string &property, const std::string &message,
                       std::size_t span_begin, std::size_t span_end)
      : Error(message),
        property_(property),
        span_begin_(span_begin),
        span_end_(span_end) {}

  const std::string &property() const { return property_; }
  std::size_t span_begin() const { return span_begin_; }
  std::size_t span_end() const { return span_end_; }

 private:
  std::string property_;
  std::size_t span_begin_;
  std::size_t span_end_;
};

class NotFoundError : public Error {
 public:
  using Error::Error;
};

class InvalidArgumentError : public Error {
 public:
  using Error::Error;
};

class StorageError : public Error {
 public:
  using Error::Error;
};

// Operation not permitted through this interface (updates on the endpoint).
class ForbiddenError : public Error {
 public:
  using Error::Error;
};

// Remote endpoint unreachable or answering with an HTTP error.
class NetworkError : public Error {
 public:
  using Error::Error;
};

class TimeoutError : public NetworkError {
 public:
  using NetworkError::NetworkError;
};

// A results document that is not valid SPARQL JSON results.
class MalformedResponseError : public Error {
 public:
  using Error::Error;
};

}  // namespace wikikb

#endif  // WIKIKB_ERROR_H_
