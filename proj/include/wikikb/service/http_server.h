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

#ifndef WIKIKB_SERVICE_HTTP_SERVER_H_
#define WIKIKB_SERVICE_HTTP_SERVER_H_

#include <memory>
#include <string>

#include "wikikb/service/repository.h"

namespace httplib {
class Server;
}

namespace wikikb::service {

// JSON-over-HTTP front end of a repository.
//
//   GET  /pages/{ns}/{title}          page view with factbox
//   PUT  /pages/{ns}/{title}          save (body: wikitext; author from the
//                                     X-Author header or ?author=)
//   GET  /pages/{ns}/{title}/history  revisions, newest first
//   GET|POST /sparql                  read-only query endpoint
//   GET  /facets?class=<iri>          facet histograms
//   GET  /export?graph=<iri|name>     N-Triples dump of one graph
class HttpServer {
 public:
  explicit HttpServer(WikiRepository &repository);
  ~HttpServer();

  // Blocks until Stop(). Returns false if the address cannot be bound.
  bool Listen(const std::string &host, int port);
  // Binds an ephemeral port and returns it (-1 on failure); serve with
  // ListenAfterBind().
  int BindToAnyPort(const std::string &host);
  bool ListenAfterBind();
  void Stop();
  void WaitUntilReady() const;

 private:
  void Routes();

  WikiRepository &repository_;
  std::unique_ptr<httplib::Server> server_;
};

// Resolves "data", "usco", "huto", "inferred" to warehouse IRIs; anything
// else must be an absolute IRI.
rdf::Term GraphByName(const std::string &name);

}  // namespace wikikb::service

#endif  // WIKIKB_SERVICE_HTTP_SERVER_H_
