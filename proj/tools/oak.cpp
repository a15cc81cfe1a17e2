// oak: command-line front end for the knowledge map.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <httplib.h>
#include <nlohmann/json.hpp>

#include "oak/agri_ontology.hpp"
#include "oak/assessment.hpp"
#include "oak/browser/service.hpp"
#include "oak/repository.hpp"
#include "oak/sparql/results.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string default_store() {
  if (const char* env = std::getenv("OAK_STORE"); env && *env) return env;
  return "oak_store.ttl";
}

std::string join(const std::vector<std::string>& v, std::string_view sep = ", ") {
  std::string out;
  for (const auto& s : v) out += (out.empty() ? "" : std::string(sep)) + s;
  return out;
}

void print_breakdown(const oak::GradeBreakdown& g) {
  fmt::print("basic       {:>3} / 20\n", g.basic);
  fmt::print("principal   {:>3} / 40\n", g.principal);
  fmt::print("subordinal  {:>3} / 40\n", g.subordinal);
  fmt::print("total       {:>3} / 100  {}\n", g.total, g.accepted ? "accepted" : "rejected (below 50)");
}

void print_cards(const json& cards) {
  auto names = [](const json& roles) {
    std::vector<std::string> out;
    for (const auto& r : roles) {
      auto p = r.value("concept", "");
      if (r.contains("state")) p += "=" + r.value("state", "");
      out.push_back(p);
    }
    return join(out);
  };
  for (const auto& c : cards) {
    fmt::print("{}  [{}]  grade {}\n", c.value("id", ""), c.value("task", ""), c.value("grade", 0));
    if (!c["algorithms"].empty()) fmt::print("  algorithms: {}\n", join(c["algorithms"].get<std::vector<std::string>>()));
    if (!c["conditions"].empty()) fmt::print("  conditions: {}\n", names(c["conditions"]));
    if (!c["targets"].empty()) fmt::print("  targets:    {}\n", names(c["targets"]));
    if (c.contains("dataset")) fmt::print("  dataset:    {}\n", c["dataset"].value("name", ""));
    for (const auto& e : c["evaluation"]) fmt::print("  evaluation: {} {}\n", e.value("metric", ""), e.value("value", ""));
    if (!c["locations"].empty()) fmt::print("  locations:  {}\n", join(c["locations"].get<std::vector<std::string>>()));
    if (!c["context"].empty()) fmt::print("  context:    {}\n", join(c["context"].get<std::vector<std::string>>()));
    if (c["source"].is_string()) fmt::print("  source:     {}\n", c["source"].get<std::string>());
  }
}

json read_json_file(const std::string& path) {
  try {
    return json::parse(oak::rdf::read_file(path));
  } catch (const json::parse_error& e) {
    throw oak::Error(oak::ErrorKind::invalid_descriptor, path + ": " + e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"oak - ontology-based knowledge map"};
  app.require_subcommand(1);
  std::string store_path = default_store();

  auto* wrap = app.add_subcommand("wrap", "wrap a mined-knowledge descriptor into RDF");
  std::string wrap_in, wrap_out;
  bool wrap_import = false;
  wrap->add_option("descriptor", wrap_in, "descriptor JSON file")->required()->check(CLI::ExistingFile);
  wrap->add_option("--out", wrap_out, "write the Turtle here instead of stdout");
  wrap->add_flag("--import", wrap_import, "add the item to the store");
  wrap->add_option("--store", store_path, "store snapshot (default $OAK_STORE or ./oak_store.ttl)");

  auto* assess = app.add_subcommand("assess", "grade a descriptor or a stored item");
  std::string assess_target;
  assess->add_option("target", assess_target, "descriptor JSON file or knowledge item id")->required();
  assess->add_option("--store", store_path, "store snapshot");

  auto* report = app.add_subcommand("report", "repository assessment table");
  bool report_json = false;
  report->add_option("--store", store_path, "store snapshot");
  report->add_flag("--json", report_json, "print JSON");

  auto* foca = app.add_subcommand("foca", "FOCA total quality from a grades file");
  std::string foca_in;
  foca->add_option("grades", foca_in, "grades JSON file")->required()->check(CLI::ExistingFile);

  auto* serve = app.add_subcommand("serve", "run the HTTP service");
  int port = 8080;
  std::string host = "127.0.0.1", ui_dir;
  serve->add_option("--port", port, "port to listen on");
  serve->add_option("--host", host, "address to bind");
  serve->add_option("--store", store_path, "store snapshot");
  serve->add_option("--ui-dir", ui_dir, "static UI bundle to serve at /")->check(CLI::ExistingDirectory);

  auto* search = app.add_subcommand("search", "keyword search for knowledge items");
  std::string search_q, search_url;
  bool search_json = false;
  search->add_option("query", search_q, "keywords")->required();
  search->add_option("--url", search_url, "service base URL (default: search the store directly)");
  search->add_option("--store", store_path, "store snapshot");
  search->add_flag("--json", search_json, "print the full JSON response");

  auto* query = app.add_subcommand("query", "run a SPARQL query against the store");
  std::string query_file, query_text, query_format = "tsv";
  auto* qf = query->add_option("--file", query_file, "query file")->check(CLI::ExistingFile);
  query->add_option("--query", query_text, "query text")->excludes(qf);
  query->add_option("--format", query_format, "tsv or json")->check(CLI::IsMember({"tsv", "json"}));
  query->add_option("--store", store_path, "store snapshot");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*wrap) {
      const auto d = oak::parse_descriptor(oak::rdf::read_file(wrap_in));
      oak::WrapResult res;
      if (wrap_import) {
        oak::Repository repo(oak::agri::mini_ontology(), store_path);
        res = repo.add(d);
      } else {
        std::uint64_t next = 1;
        if (fs::exists(store_path)) next = oak::max_item(oak::rdf::load_snapshot(store_path)) + 1;
        res = oak::wrap(d, oak::agri::mini_ontology(), next);
      }
      const auto ttl = oak::to_turtle(res.kr);
      if (wrap_out.empty()) std::cout << ttl;
      else oak::rdf::write_file_atomic(wrap_out, ttl);
      fmt::print(stderr, "{}: {} {}, grade {}{}\n", res.kr.id, oak::to_string(res.pattern),
                 oak::to_string(res.knowledge), res.grade.total,
                 wrap_import ? ", imported into " + store_path : "");
      return 0;
    }

    if (*assess) {
      if (fs::is_regular_file(assess_target)) {
        print_breakdown(oak::grade(oak::descriptor_from_json(read_json_file(assess_target))));
        return 0;
      }
      oak::Repository repo(oak::agri::mini_ontology(), store_path);
      const auto snap = repo.snapshot();
      oak::browser::build_card(*snap, assess_target);  // not-found when absent
      const auto a = oak::assess_stored(*snap, assess_target);
      oak::GradeBreakdown g{a.basic, a.principal, a.subordinal, a.grade, a.grade >= oak::kImportThreshold};
      print_breakdown(g);
      return 0;
    }

    if (*report) {
      oak::Repository repo(oak::agri::mini_ontology(), store_path);
      const auto r = oak::repository_report(*repo.snapshot());
      if (report_json) {
        std::cout << oak::to_json(r).dump(2) << "\n";
        return 0;
      }
      if (r.empty()) {
        fmt::print("empty repository\n");
        return 0;
      }
      fmt::print("{:<20} {:>6} {:>6} {:>10} {:>11}\n", "item", "grade", "basic", "principal", "subordinal");
      for (const auto& a : r.per_item) {
        fmt::print("{:<20} {:>6} {:>6} {:>10} {:>11}\n", a.id, a.grade, a.basic, a.principal, a.subordinal);
      }
      fmt::print("\nitems       {}\n", r.items);
      fmt::print("basic       {:.1f}%\n", r.basic_pct);
      fmt::print("principal   {:.1f}%\n", r.principal_pct);
      fmt::print("subordinal  {:.1f}%\n", r.subordinal_pct);
      fmt::print("rate        {:.1f}%\n", r.rate);
      return 0;
    }

    if (*foca) {
      const auto res = oak::foca_score(oak::foca_from_json(read_json_file(foca_in)));
      for (std::size_t g = 0; g < 5; ++g) {
        if (res.means[g]) fmt::print("G{} mean  {:.2f}\n", g + 1, *res.means[g]);
        else fmt::print("G{} mean  -\n", g + 1);
      }
      fmt::print("z        {:.4f}\n", res.z);
      fmt::print("mu       {:.4f}\n", res.mu);
      return 0;
    }

    if (*serve) {
      oak::Repository repo(oak::agri::mini_ontology(), store_path);
      oak::browser::Server server(repo, ui_dir);
      fmt::print(stderr, "serving {} items from {} on http://{}:{}\n",
                 oak::publish::kmap_ids(*repo.snapshot()).size(), store_path, host, port);
      server.listen(host, port);
      return 0;
    }

    if (*search) {
      json body;
      if (!search_url.empty()) {
        httplib::Client cli(search_url);
        cli.set_read_timeout(30);
        auto res = cli.Post("/search", json{{"q", search_q}}.dump(), "application/json");
        if (!res) {
          fmt::print(stderr, "oak: cannot reach {}: {}\n", search_url, httplib::to_string(res.error()));
          return 1;
        }
        body = json::parse(res->body);
        if (res->status != 200) {
          fmt::print(stderr, "oak: {}\n", body.value("message", res->body));
          return 1;
        }
      } else {
        oak::Repository repo(oak::agri::mini_ontology(), store_path);
        body = oak::browser::to_json(oak::browser::search(search_q, *repo.ontology(), *repo.snapshot()));
      }
      if (search_json) {
        std::cout << body.dump(2) << "\n";
        return 0;
      }
      fmt::print("{} item(s), template {}\n", body["cards"].size(), body.value("template", ""));
      print_cards(body["cards"]);
      return 0;
    }

    if (*query) {
      const auto text = query_file.empty() ? query_text : oak::rdf::read_file(query_file);
      if (text.empty()) {
        fmt::print(stderr, "oak: give --file or --query\n");
        return 2;
      }
      oak::Repository repo(oak::agri::mini_ontology(), store_path);
      const auto q = oak::sparql::parse_query(text, oak::vocab::standard_prefixes());
      const auto table = oak::sparql::evaluate(*repo.snapshot(), q);
      std::cout << oak::sparql::format_results(table, *oak::sparql::parse_format(query_format));
      return 0;
    }
  } catch (const oak::Error& e) {
    fmt::print(stderr, "oak: {}\n", e.what());
    return 1;
  }
  return 0;
}
