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

#include "wikikb/service/http_server.h"

#include <httplib.h>

#include <json.hpp>

#include "wikikb/error.h"
#include "wikikb/rdf/vocab.h"

namespace wikikb::service {

using json = nlohmann::json;
using rdf::Term;

namespace {

json TermJson(const Term &t) {
  json j;
  switch (t.kind()) {
    case rdf::TermKind::kIri: j["type"] = "uri"; break;
    case rdf::TermKind::kBlank: j["type"] = "bnode"; break;
    case rdf::TermKind::kLiteral:
      j["type"] = "literal";
      if (!t.lang().empty()) {
        j["xml:lang"] = t.lang();
      } else if (t.datatype() != vocab::kXsdString) {
        j["datatype"] = t.datatype();
      }
      break;
  }
  j["value"] = t.value();
  return j;
}

json RevisionJson(const RevisionInfo &r) {
  return {{"id", r.id}, {"timestamp", FormatTimestamp(r.timestamp)}, {"author", r.author}};
}

void Reply(httplib::Response &res, int status, const json &body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void ReplyError(httplib::Response &res, int status, const std::string &message,
                json extra = json::object()) {
  extra["error"] = message;
  Reply(res, status, extra);
}

wiki::PageRef PageFromMatch(const httplib::Request &req) {
  auto ns = wiki::ParseNamespace(req.matches[1].str());
  if (!ns) throw NotFoundError("unknown namespace " + req.matches[1].str());
  return wiki::PageRef::Make(*ns, req.matches[2].str());
}

// Maps library errors onto status codes.
template <typename Fn>
httplib::Server::Handler Guarded(Fn fn) {
  return [fn](const httplib::Request &req, httplib::Response &res) {
    try {
      fn(req, res);
    } catch (const ParseError &e) {
      ReplyError(res, 400, e.what(),
                 {{"line", e.line()}, {"column", e.column()}, {"offset", e.offset()}});
    } catch (const ForbiddenError &e) {
      ReplyError(res, 403, e.what());
    } catch (const NotFoundError &e) {
      ReplyError(res, 404, e.what());
    } catch (const UnregisteredGraphError &e) {
      ReplyError(res, 404, e.what());
    } catch (const PropertyKindConflict &e) {
      ReplyError(res, 409, e.what(),
                 {{"property", e.property()},
                  {"span_begin", e.span_begin()},
                  {"span_end", e.span_end()}});
    } catch (const InvalidArgumentError &e) {
      ReplyError(res, 400, e.what());
    } catch (const std::exception &e) {
      ReplyError(res, 500, e.what());
    }
  };
}

}  // namespace

Term GraphByName(const std::string &name) {
  if (name == "data") return rdf::GraphStore::DataGraph();
  if (name == "usco") return rdf::GraphStore::UscoGraph();
  if (name == "huto") return rdf::GraphStore::HutoGraph();
  if (name == "inferred") return rdf::GraphStore::InferredGraph();
  if (!rdf::IsAbsoluteIri(name)) throw InvalidArgumentError("unknown graph " + name);
  return Term::Iri(name);
}

HttpServer::HttpServer(WikiRepository &repository)
    : repository_(repository), server_(std::make_unique<httplib::Server>()) {
  Routes();
}

HttpServer::~HttpServer() = default;

void HttpServer::Routes() {
  WikiRepository &repo = repository_;
  const char *kPage = R"(/pages/([^/]+)/([^/]+))";
  const char *kHistory = R"(/pages/([^/]+)/([^/]+)/history)";

  server_->Get(kPage, Guarded([&repo](const httplib::Request &req, httplib::Response &res) {
    PageView view = repo.GetPage(PageFromMatch(req));
    json factbox = json::array();
    for (const FactboxRow &row : view.factbox) {
      json values = json::array();
      for (const FactValue &v : row.values) {
        values.push_back({{"term", TermJson(v.value)}, {"label", v.label}, {"inferred", v.inferred}});
      }
      factbox.push_back({{"property", row.property.value()}, {"label", row.label}, {"values", values}});
    }
    Reply(res, 200,
          {{"ns", std::string(wiki::NamespaceName(view.page.ns))},
           {"title", view.page.title},
           {"display_text", view.display_text},
           {"revision", RevisionJson(view.revision)},
           {"factbox", factbox}});
  }));

  server_->Put(kPage, Guarded([&repo](const httplib::Request &req, httplib::Response &res) {
    std::string author = req.get_header_value("X-Author");
    if (author.empty()) author = req.get_param_value("author");
    SaveResult r = repo.SavePage(PageFromMatch(req), req.body, author);
    json per_rule = json::object();
    for (const auto &[name, n] : r.fixpoint.added_per_rule) per_rule[name] = n;
    json diagnostics = json::array();
    for (const wiki::Diagnostic &d : r.diagnostics) {
      diagnostics.push_back({{"offset", d.offset}, {"message", d.message}});
    }
    Reply(res, 200,
          {{"revision_id", r.revision_id},
           {"quads_added", r.quads_added},
           {"quads_removed", r.quads_removed},
           {"fixpoint",
            {{"rounds", r.fixpoint.rounds},
             {"total_added", r.fixpoint.total_added},
             {"added_per_rule", per_rule}}},
           {"diagnostics", diagnostics}});
  }));

  server_->Get(kHistory, Guarded([&repo](const httplib::Request &req, httplib::Response &res) {
    json revisions = json::array();
    for (const RevisionInfo &r : repo.History(PageFromMatch(req))) revisions.push_back(RevisionJson(r));
    Reply(res, 200, {{"revisions", revisions}});
  }));

  auto sparql = Guarded([&repo](const httplib::Request &req, httplib::Response &res) {
    std::string query;
    if (req.has_param("query")) {
      query = req.get_param_value("query");
    } else if (req.method == "POST" &&
               req.get_header_value("Content-Type").rfind("application/sparql-query", 0) == 0) {
      query = req.body;
    } else {
      throw InvalidArgumentError("missing query parameter");
    }
    QueryResponse r = repo.Query(query);
    res.status = 200;
    res.set_content(r.body, r.content_type);
  });
  server_->Get("/sparql", sparql);
  server_->Post("/sparql", sparql);

  server_->Get("/facets", Guarded([&repo](const httplib::Request &req, httplib::Response &res) {
    if (!req.has_param("class")) throw InvalidArgumentError("missing class parameter");
    std::string cls = req.get_param_value("class");
    if (!rdf::IsAbsoluteIri(cls)) throw InvalidArgumentError("class must be an absolute IRI");
    json facets = json::array();
    for (const Facet &f : repo.Facets(Term::Iri(cls))) {
      json values = json::array();
      for (const FacetValue &v : f.values) {
        values.push_back({{"term", TermJson(v.value)}, {"label", v.label}, {"count", v.count}});
      }
      facets.push_back({{"property", f.property.value()}, {"label", f.label}, {"values", values}});
    }
    Reply(res, 200, {{"class", cls}, {"facets", facets}});
  }));

  server_->Get("/export", Guarded([&repo](const httplib::Request &req, httplib::Response &res) {
    std::string graph = req.has_param("graph") ? req.get_param_value("graph") : "data";
    res.status = 200;
    res.set_content(repo.Export(GraphByName(graph)), "application/n-triples");
  }));
}

bool HttpServer::Listen(const std::string &host, int port) { return server_->listen(host, port); }

int HttpServer::BindToAnyPort(const std::string &host) { return server_->bind_to_any_port(host); }

bool HttpServer::ListenAfterBind() { return server_->listen_after_bind(); }

void HttpServer::Stop() { server_->stop(); }

void HttpServer::WaitUntilReady() const { server_->wait_until_ready(); }

}  // namespace wikikb::service
