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

#include <gtest/gtest.h>

#include <httplib.h>
#include <json.hpp>

#include <algorithm>
#include <thread>

#include "support.h"
#include "wikikb/error.h"
#include "wikikb/service/http_server.h"

namespace wikikb::service {
namespace {

using json = nlohmann::json;

class HttpApi : public ::testing::Test {
 protected:
  void SetUp() override {
    RepositoryOptions o;
    o.clock = testing::SteppingClock(ParseTimestamp("2014-01-14T09:30:00Z"), std::chrono::seconds(1));
    repo_ = std::make_unique<WikiRepository>(o);
    server_ = std::make_unique<HttpServer>(*repo_);
    port_ = server_->BindToAnyPort("127.0.0.1");
    ASSERT_GT(port_, 0);
    thread_ = std::thread([this] { server_->ListenAfterBind(); });
    server_->WaitUntilReady();
    client_ = std::make_unique<httplib::Client>("127.0.0.1", port_);
  }
  void TearDown() override {
    server_->Stop();
    if (thread_.joinable()) thread_.join();
  }
  httplib::Result Put(const std::string &path, const std::string &body, const std::string &author = "alice") {
    return client_->Put(path, {{"X-Author", author}}, body, "text/plain");
  }

  std::unique_ptr<WikiRepository> repo_;
  std::unique_ptr<HttpServer> server_;
  std::unique_ptr<httplib::Client> client_;
  std::thread thread_;
  int port_ = -1;
};

TEST_F(HttpApi, SaveThenView) {
  auto saved = Put("/pages/Category/City", testing::ReadFixture("pages/Category/City.wiki"));
  ASSERT_TRUE(saved);
  EXPECT_EQ(saved->status, 200);
  saved = Put("/pages/Main/Dakar", testing::ReadFixture("pages/Dakar.wiki"));
  ASSERT_TRUE(saved);
  ASSERT_EQ(saved->status, 200);
  json s = json::parse(saved->body);
  EXPECT_EQ(s["revision_id"], 2);
  EXPECT_GT(s["quads_added"].get<int>(), 0);
  EXPECT_EQ(s["quads_removed"], 0);
  EXPECT_TRUE(s["fixpoint"]["added_per_rule"].contains("sc-type"));
  EXPECT_TRUE(s["diagnostics"].empty());

  auto view = client_->Get("/pages/Main/Dakar");
  ASSERT_TRUE(view);
  ASSERT_EQ(view->status, 200);
  EXPECT_EQ(view->get_header_value("Content-Type"), "application/json");
  json v = json::parse(view->body);
  EXPECT_EQ(v["ns"], "Main");
  EXPECT_EQ(v["title"], "Dakar");
  EXPECT_EQ(v["revision"]["author"], "alice");
  EXPECT_EQ(v["revision"]["timestamp"], "2014-01-14T09:30:01.000Z");
  bool inferred_locality = false;
  for (const json &row : v["factbox"]) {
    for (const json &val : row["values"]) {
      if (val["term"]["value"] == "http://example.org/wiki/category/Locality" && val["inferred"] == true) {
        inferred_locality = true;
      }
    }
  }
  EXPECT_TRUE(inferred_locality);
}

TEST_F(HttpApi, AuthorFromQueryParameter) {
  auto r = client_->Put("/pages/Main/Thies?author=bob", "plain", "text/plain");
  ASSERT_TRUE(r);
  EXPECT_EQ(r->status, 200);
  auto h = client_->Get("/pages/Main/Thies/history");
  ASSERT_TRUE(h);
  EXPECT_EQ(json::parse(h->body)["revisions"][0]["author"], "bob");
}

TEST_F(HttpApi, HistoryNewestFirst) {
  Put("/pages/Main/Dakar", "one", "alice");
  Put("/pages/Main/Dakar", "two", "bob");
  auto h = client_->Get("/pages/Main/Dakar/history");
  ASSERT_TRUE(h);
  ASSERT_EQ(h->status, 200);
  json revs = json::parse(h->body)["revisions"];
  ASSERT_EQ(revs.size(), 2u);
  EXPECT_EQ(revs[0]["author"], "bob");
  EXPECT_EQ(revs[0]["id"], 2);
  EXPECT_EQ(revs[1]["id"], 1);
}

TEST_F(HttpApi, NotFound) {
  for (const char *path : {"/pages/Main/Nowhere", "/pages/Main/Nowhere/history", "/pages/Talk/Dakar",
                           "/export?graph=urn:nowhere"}) {
    auto r = client_->Get(path);
    ASSERT_TRUE(r) << path;
    EXPECT_EQ(r->status, 404) << path;
    if (r->status == 404) {
      EXPECT_TRUE(json::parse(r->body).contains("error"));
    }
  }
}

TEST_F(HttpApi, KindConflictIs409) {
  Put("/pages/Main/Dakar", "[[Capital::Senegal]]");
  std::string text = "Built [[Capital::1902]].";
  auto r = Put("/pages/Main/Thies", text);
  ASSERT_TRUE(r);
  EXPECT_EQ(r->status, 409);
  json e = json::parse(r->body);
  EXPECT_EQ(e["property"], "Capital");
  EXPECT_EQ(text.substr(e["span_begin"], e["span_end"].get<std::size_t>() - e["span_begin"].get<std::size_t>()),
            "[[Capital::1902]]");
  EXPECT_EQ(client_->Get("/pages/Main/Thies")->status, 404);
}

TEST_F(HttpApi, SparqlEndpoint) {
  Put("/pages/Main/Dakar", testing::ReadFixture("pages/Dakar.wiki"));
  httplib::Params params{{"query", "SELECT ?c WHERE { data:Dakar prop:Capital ?c }"}};
  auto get = client_->Get("/sparql", params, {});
  ASSERT_TRUE(get);
  ASSERT_EQ(get->status, 200);
  EXPECT_EQ(get->get_header_value("Content-Type"), "application/sparql-results+json");
  EXPECT_EQ(json::parse(get->body)["results"]["bindings"][0]["c"]["value"], "http://example.org/wiki/page/Senegal");

  auto post = client_->Post("/sparql", "DESCRIBE data:Dakar", "application/sparql-query");
  ASSERT_TRUE(post);
  EXPECT_EQ(post->status, 200);
  EXPECT_EQ(post->get_header_value("Content-Type"), "application/n-triples");

  auto form = client_->Post("/sparql", httplib::Params{{"query", "SELECT * { ?s ?p ?o }"}});
  ASSERT_TRUE(form);
  EXPECT_EQ(form->status, 200);
}

TEST_F(HttpApi, SparqlErrors) {
  auto bad = client_->Get("/sparql", httplib::Params{{"query", "SELECT ?x WHERE { ?x a <u> "}}, {});
  ASSERT_TRUE(bad);
  EXPECT_EQ(bad->status, 400);
  json e = json::parse(bad->body);
  EXPECT_TRUE(e.contains("line"));
  EXPECT_TRUE(e.contains("offset"));

  std::string before = client_->Get("/export?graph=data")->body;
  auto update = client_->Post("/sparql", "INSERT { <urn:x> <urn:p> <urn:y> } WHERE { }", "application/sparql-query");
  ASSERT_TRUE(update);
  EXPECT_EQ(update->status, 403);
  EXPECT_EQ(client_->Get("/export?graph=data")->body, before);

  auto missing = client_->Get("/sparql");
  ASSERT_TRUE(missing);
  EXPECT_EQ(missing->status, 400);
}

TEST_F(HttpApi, Facets) {
  Put("/pages/Main/A", "[[IsPartOf::Region A]] [[Category:City]]");
  Put("/pages/Main/B", "[[IsPartOf::Region A]] [[Category:City]]");
  Put("/pages/Main/C", "[[IsPartOf::Region B]] [[Category:City]]");
  auto r = client_->Get("/facets", httplib::Params{{"class", "http://example.org/wiki/category/City"}}, {});
  ASSERT_TRUE(r);
  ASSERT_EQ(r->status, 200);
  json f = json::parse(r->body)["facets"];
  ASSERT_EQ(f.size(), 1u);
  EXPECT_EQ(f[0]["label"], "IsPartOf");
  EXPECT_EQ(f[0]["values"][0]["count"], 2);
  EXPECT_EQ(f[0]["values"][1]["count"], 1);
  EXPECT_EQ(client_->Get("/facets")->status, 400);
  EXPECT_EQ(client_->Get("/facets?class=City")->status, 400);
}

TEST_F(HttpApi, Export) {
  auto huto = client_->Get("/export?graph=huto");
  ASSERT_TRUE(huto);
  EXPECT_EQ(huto->status, 200);
  EXPECT_EQ(huto->get_header_value("Content-Type"), "application/n-triples");
  std::size_t lines = std::count(huto->body.begin(), huto->body.end(), '\n');
  std::string vocab = testing::ReadFixture("../../vocab/huto.nt");
  EXPECT_EQ(lines, static_cast<std::size_t>(std::count(vocab.begin(), vocab.end(), '\n')));
  EXPECT_EQ(client_->Get("/export?graph=bogus")->status, 400);
  EXPECT_EQ(client_->Get("/export")->status, 200);
}

TEST(GraphByName, Names) {
  EXPECT_EQ(GraphByName("inferred").value(), "urn:warehouse:inferred");
  EXPECT_EQ(GraphByName("urn:g:1").value(), "urn:g:1");
  EXPECT_THROW(GraphByName("nope"), InvalidArgumentError);
}

}  // namespace
}  // namespace wikikb::service
