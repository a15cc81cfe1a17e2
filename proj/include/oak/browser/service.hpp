#pragma once

// HTTP face of the knowledge browser. Handlers are plain functions of the
// request payload so they can be exercised without sockets; Server binds
// them to routes.

#include <filesystem>
#include <string>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "oak/assessment.hpp"
#include "oak/browser/search.hpp"
#include "oak/repository.hpp"
#include "oak/sparql/results.hpp"

namespace oak::browser {

struct Reply {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";
};

inline Reply json_reply(int status, const nlohmann::json& j) { return {status, j.dump(2) + "\n"}; }

inline nlohmann::json error_json(const Error& e) {
  nlohmann::json j{{"error", std::string(to_string(e.kind()))}, {"message", e.what()}};
  if (const auto* tl = dynamic_cast<const TermListError*>(&e)) j["terms"] = tl->terms();
  else if (!e.detail().empty()) j["detail"] = e.detail();
  return j;
}

inline Reply error_reply(int status, const Error& e) { return json_reply(status, error_json(e)); }

inline nlohmann::json to_json(const SearchResult& r) {
  return {{"cards", to_json(r.cards)},
          {"intent", to_json(r.intent)},
          {"template", r.query.template_id},
          {"query", r.query.text},
          {"rows", r.table.size()}};
}

class Service {
 public:
  explicit Service(Repository& repo) : repo_(repo) {}

  Reply sparql(std::string_view query) const {
    if (query.empty()) return error_reply(400, Error(ErrorKind::syntax_error, "missing query parameter"));
    try {
      const auto q = sparql::parse_query(query, vocab::standard_prefixes());
      const auto table = sparql::evaluate(*repo_.snapshot(), q);
      return {200, sparql::to_json(table), "application/sparql-results+json"};
    } catch (const Error& e) {
      return error_reply(400, e);
    }
  }

  Reply search(std::string_view body) const {
    std::string q;
    try {
      const auto j = nlohmann::json::parse(body);
      if (!j.is_object() || !j.contains("q") || !j.at("q").is_string()) {
        return error_reply(400, Error(ErrorKind::syntax_error, "body must be {\"q\": string}"));
      }
      q = j.at("q").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
      return error_reply(400, Error(ErrorKind::syntax_error, std::string("malformed JSON: ") + e.what()));
    }
    if (text::split_ws(q).empty()) {
      return error_reply(400, Error(ErrorKind::no_concepts_recognized, "empty query"));
    }
    try {
      const auto store = repo_.snapshot();
      return json_reply(200, to_json(browser::search(q, *repo_.ontology(), *store)));
    } catch (const Error& e) {
      return error_reply(400, e);
    }
  }

  Reply kmap(const std::string& id) const {
    try {
      return json_reply(200, to_json(build_card(*repo_.snapshot(), id)));
    } catch (const Error& e) {
      return error_reply(e.kind() == ErrorKind::not_found ? 404 : 400, e);
    }
  }

  Reply import(std::string_view turtle) {
    try {
      return json_reply(200, {{"triples", repo_.import_turtle(turtle)}});
    } catch (const Error& e) {
      return error_reply(e.kind() == ErrorKind::io_error ? 500 : 400, e);
    }
  }

  Reply report() const { return json_reply(200, oak::to_json(repository_report(*repo_.snapshot()))); }

 private:
  Repository& repo_;
};

/// Routes a Service over httplib. listen() blocks; start() runs the
/// accept loop on a background thread and returns the bound port.
class Server {
 public:
  explicit Server(Repository& repo, std::filesystem::path ui_dir = {}) : service_(repo) {
    auto send = [](httplib::Response& res, const Reply& r) {
      res.status = r.status;
      res.set_content(r.body, r.content_type);
    };
    http_.Get("/sparql", [this, send](const httplib::Request& req, httplib::Response& res) {
      send(res, service_.sparql(req.has_param("query") ? req.get_param_value("query") : ""));
    });
    http_.Post("/sparql", [this, send](const httplib::Request& req, httplib::Response& res) {
      send(res, service_.sparql(req.has_param("query") ? req.get_param_value("query") : req.body));
    });
    http_.Post("/search", [this, send](const httplib::Request& req, httplib::Response& res) {
      send(res, service_.search(req.body));
    });
    http_.Get(R"(/kmap/([A-Za-z0-9_]+))", [this, send](const httplib::Request& req, httplib::Response& res) {
      send(res, service_.kmap(req.matches[1]));
    });
    http_.Post("/import", [this, send](const httplib::Request& req, httplib::Response& res) {
      send(res, service_.import(req.body));
    });
    http_.Get("/report", [this, send](const httplib::Request&, httplib::Response& res) {
      send(res, service_.report());
    });
    http_.set_default_headers({{"Access-Control-Allow-Origin", "*"}});
    if (!ui_dir.empty()) {
      if (!http_.set_mount_point("/", ui_dir.string())) {
        throw Error(ErrorKind::io_error, "cannot serve UI directory " + ui_dir.string());
      }
    }
  }

  ~Server() { stop(); }
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  /// Binds `port` (0 picks a free one) and serves on a background thread.
  int start(const std::string& host = "127.0.0.1", int port = 0) {
    port_ = port == 0 ? http_.bind_to_any_port(host) : (http_.bind_to_port(host, port) ? port : -1);
    if (port_ < 0) throw Error(ErrorKind::io_error, "cannot bind " + host + ":" + std::to_string(port));
    thread_ = std::thread([this] { http_.listen_after_bind(); });
    http_.wait_until_ready();
    return port_;
  }

  void listen(const std::string& host, int port) {
    if (!http_.listen(host, port)) {
      throw Error(ErrorKind::io_error, "cannot bind " + host + ":" + std::to_string(port));
    }
  }

  void stop() {
    http_.stop();
    if (thread_.joinable()) thread_.join();
  }

  int port() const { return port_; }
  const Service& service() const { return service_; }

 private:
  Service service_;
  httplib::Server http_;
  std::thread thread_;
  int port_ = -1;
};

}  // namespace oak::browser
