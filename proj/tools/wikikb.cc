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

#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "wikikb/error.h"
#include "wikikb/federation/federation.h"
#include "wikikb/rdf/rdf_io.h"
#include "wikikb/rules/rules.h"
#include "wikikb/service/config.h"
#include "wikikb/service/http_server.h"
#include "wikikb/service/repository.h"
#include "wikikb/sparql/eval.h"
#include "wikikb/sparql/parser.h"

namespace fs = std::filesystem;
using namespace wikikb;

namespace {

std::string ReadFile(const std::string &path) {
  if (path.empty() || path == "-") {
    std::ostringstream s;
    s << std::cin.rdbuf();
    return s.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw StorageError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

service::HttpServer *g_server = nullptr;

void OnSignal(int) {
  if (g_server != nullptr) g_server->Stop();
}

struct Globals {
  std::string config_file;
  std::string data_dir;
  service::ServiceConfig config;

  void Resolve() {
    if (!config_file.empty()) config = service::ServiceConfig::FromFile(config_file);
    config.ApplyEnvironment();
    if (!data_dir.empty()) config.data_dir = data_dir;
  }

  service::RepositoryOptions Options() const {
    service::RepositoryOptions o;
    o.base_iri = config.base_iri;
    o.data_dir = config.data_dir;
    return o;
  }
};

void PrintSolutions(const sparql::SolutionSet &s) {
  for (std::size_t i = 0; i < s.variables.size(); ++i) {
    std::cout << (i ? "\t" : "") << '?' << s.variables[i].name;
  }
  std::cout << '\n';
  for (const auto &row : s.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      std::cout << (i ? "\t" : "") << (row[i] ? row[i]->ToNTriples() : "");
    }
    std::cout << '\n';
  }
}

int Run(int argc, char **argv) {
  CLI::App app{"Semantic wiki knowledge base"};
  app.require_subcommand(1, 1);
  Globals g;
  app.add_option("--config", g.config_file, "key=value configuration file");
  app.add_option("--data-dir", g.data_dir, "data directory (journal and lock)");

  auto *serve = app.add_subcommand("serve", "run the HTTP service");
  std::string listen;
  serve->add_option("--listen", listen, "host:port");

  auto *load = app.add_subcommand("load", "load an RDF file into a graph");
  std::string load_file, load_graph = "data", load_format;
  load->add_option("file", load_file, "N-Triples or Turtle file")->required();
  load->add_option("--graph", load_graph, "data|usco|huto|inferred or a graph IRI");
  load->add_option("--format", load_format, "ntriples|turtle (default from extension)");

  auto *import_pages = app.add_subcommand("import-pages", "save every *.wiki file of a directory");
  std::string pages_dir, pages_author = "import-pages";
  import_pages->add_option("dir", pages_dir, "directory; Category/ and Property/ subdirectories map to namespaces")->required();
  import_pages->add_option("--author", pages_author);

  auto *query = app.add_subcommand("query", "evaluate a query (stdin when no file)");
  std::string query_file;
  query->add_option("file", query_file);

  auto *rules_cmd = app.add_subcommand("rules", "rematerialize with a rule set and report");
  std::string rules_name, rules_catalog;
  rules_cmd->add_option("set", rules_name, "rdfs-lite|normalization|temporal|all");
  rules_cmd->add_option("--catalog", rules_catalog, "rule catalog file");

  auto *export_cmd = app.add_subcommand("export", "print a graph as N-Triples");
  std::string export_graph = "data";
  export_cmd->add_option("--graph", export_graph);

  auto *federate = app.add_subcommand("federate", "import from a SPARQL endpoint");
  std::string endpoint, fixture, fed_query, alignment_file, templ, templ_file;
  federate->add_option("--endpoint", endpoint, "endpoint URL (must be allow-listed)");
  federate->add_option("--fixture", fixture, "recorded SPARQL JSON results to replay");
  federate->add_option("--query", fed_query, "SELECT query file")->required();
  federate->add_option("--alignment", alignment_file, "external<TAB>local mapping file");
  federate->add_option("--template", templ, "triple template, e.g. \"?o a usco:Locality\"");
  federate->add_option("--template-file", templ_file);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    return app.exit(e);
  }
  g.Resolve();

  if (*rules_cmd && rules_catalog.empty() && rules_name.empty()) {
    std::cerr << "rules: give a set name or --catalog\n";
    return 2;
  }
  std::optional<rules::RuleSet> ruleset;
  if (*rules_cmd) {
    if (!rules_catalog.empty()) {
      ruleset = rules::ParseCatalog(ReadFile(rules_catalog), rdf::GraphStore::InferredGraph(),
                                    sparql::ParseOptions::Standard(g.config.base_iri));
    } else {
      try {
        ruleset = rules::BuiltinRuleset(rules_name);
      } catch (const NotFoundError &) {
        std::cerr << "unknown rule set '" << rules_name << "'; valid names:";
        for (const std::string &n : rules::BuiltinRulesetNames()) std::cerr << ' ' << n;
        std::cerr << '\n';
        return 2;
      }
    }
  }

  service::WikiRepository repo(g.Options());

  if (*serve) {
    if (!listen.empty()) {
      std::map<std::string, std::string> overrides{{"WIKIKB_LISTEN", listen}};
      g.config.ApplyEnvironment(&overrides);
    }
    service::HttpServer server(repo);
    g_server = &server;
    std::signal(SIGINT, OnSignal);
    std::signal(SIGTERM, OnSignal);
    std::cerr << "listening on " << g.config.listen_host << ':' << g.config.listen_port << '\n';
    if (!server.Listen(g.config.listen_host, g.config.listen_port)) {
      std::cerr << "cannot listen on " << g.config.listen_host << ':' << g.config.listen_port << '\n';
      return 1;
    }
    return 0;
  }

  if (*load) {
    rdf::RdfFormat format;
    if (!load_format.empty()) {
      format = rdf::ParseFormatName(load_format);
    } else {
      std::string ext = fs::path(load_file).extension().string();
      format = ext == ".ttl" ? rdf::RdfFormat::kTurtle : rdf::RdfFormat::kNTriples;
    }
    auto report = repo.LoadRdf(ReadFile(load_file), format, service::GraphByName(load_graph), "cli");
    std::cout << report.statements << '\n';
    std::cerr << report.added << " new\n";
    return 0;
  }

  if (*import_pages) {
    std::vector<fs::path> files;
    for (const auto &entry : fs::recursive_directory_iterator(pages_dir)) {
      if (entry.is_regular_file() && entry.path().extension() == ".wiki") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    std::size_t added = 0;
    for (const fs::path &f : files) {
      fs::path rel = fs::relative(f, pages_dir);
      wiki::Namespace ns = wiki::Namespace::kMain;
      if (rel.has_parent_path()) {
        auto parsed = wiki::ParseNamespace(rel.parent_path().string());
        if (!parsed) throw InvalidArgumentError("unknown namespace directory " + rel.parent_path().string());
        ns = *parsed;
      }
      auto page = wiki::PageRef::Make(ns, f.stem().string());
      service::SaveResult r = repo.SavePage(page, ReadFile(f.string()), pages_author);
      added += r.quads_added;
      for (const wiki::Diagnostic &d : r.diagnostics) {
        std::cerr << f.string() << ": offset " << d.offset << ": " << d.message << '\n';
      }
    }
    std::cout << files.size() << " pages, " << added << " quads\n";
    return 0;
  }

  if (*query) {
    std::string text = ReadFile(query_file);
    sparql::Query q = sparql::ParseQuery(text, sparql::ParseOptions::Standard(g.config.base_iri));
    if (q.form == sparql::QueryForm::kInsertWhere) {
      std::cout << repo.ExecuteUpdate(text) << '\n';
      return 0;
    }
    rdf::GraphStore store = repo.Snapshot();
    switch (q.form) {
      case sparql::QueryForm::kSelect:
        PrintSolutions(sparql::EvaluateSelect(store, q));
        break;
      case sparql::QueryForm::kConstruct:
        std::cout << rdf::SerializeNTriples(sparql::EvaluateConstruct(store, q));
        break;
      default:
        std::cout << rdf::SerializeNTriples(sparql::EvaluateDescribe(store, q));
        break;
    }
    return 0;
  }

  if (*rules_cmd) {
    rdf::GraphStore store = repo.Snapshot();
    store.ClearGraph(rdf::GraphStore::InferredGraph());
    rules::FixpointReport report = rules::RunFixpoint(store, *ruleset);
    std::cout << "rounds\t" << report.rounds << '\n';
    std::cout << "total_added\t" << report.total_added << '\n';
    for (const rules::Rule &r : ruleset->rules) {
      std::cout << r.name << '\t' << report.added_per_rule.at(r.name) << '\n';
    }
    return 0;
  }

  if (*export_cmd) {
    std::cout << repo.Export(service::GraphByName(export_graph));
    return 0;
  }

  if (*federate) {
    if (endpoint.empty() == fixture.empty()) {
      std::cerr << "federate: give exactly one of --endpoint or --fixture\n";
      return 2;
    }
    std::string template_text = !templ_file.empty() ? ReadFile(templ_file) : templ;
    if (template_text.empty()) {
      std::cerr << "federate: --template or --template-file is required\n";
      return 2;
    }
    std::string alignment = alignment_file.empty() ? "" : ReadFile(alignment_file);
    std::string query_text = ReadFile(fed_query);
    sparql::SolutionSet solutions;
    std::string source;
    if (!endpoint.empty()) {
      if (!g.config.FederationAllowed(endpoint)) {
        std::cerr << "endpoint not in the federation allowlist: " << endpoint << '\n';
        return 1;
      }
      federation::HttpTransport transport;
      solutions = federation::FetchSelect(transport, {endpoint}, query_text);
      source = endpoint;
    } else {
      auto transport = federation::FixtureTransport::FromFile(fixture);
      solutions = federation::FetchSelect(transport, {"http://fixture.invalid/sparql"}, query_text);
      source = "file://" + fs::absolute(fixture).string();
    }
    federation::ImportReport r = repo.Import(solutions, alignment, template_text, source, "cli");
    std::cout << "fetched_rows\t" << r.fetched_rows << '\n'
              << "ingested_rows\t" << r.ingested_rows << '\n'
              << "ingested_quads\t" << r.ingested_quads << '\n'
              << "skipped_rows\t" << r.skipped_rows << '\n';
    for (const std::string &why : r.skip_reasons) std::cerr << why << '\n';
    return 0;
  }
  return 2;
}

}  // namespace

int main(int argc, char **argv) {
  try {
    return Run(argc, argv);
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
