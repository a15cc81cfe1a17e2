#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "oak/sparql/eval.hpp"

namespace oak::sparql {

enum class ResultFormat { tsv, json };

inline std::optional<ResultFormat> parse_format(std::string_view s) {
  if (s == "tsv") return ResultFormat::tsv;
  if (s == "json") return ResultFormat::json;
  return std::nullopt;
}

/// Header line of `?var` names, then one tab-separated line per row with
/// terms spelled as in query text.
inline std::string to_tsv(const SolutionTable& t) {
  std::string out;
  for (std::size_t i = 0; i < t.header.size(); ++i) out += (i ? "\t?" : "?") + t.header[i];
  out += "\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += "\t";
      out += rdf::to_string(row[i]);
    }
    out += "\n";
  }
  return out;
}

inline nlohmann::json term_json(const Term& t) {
  if (t.is_iri()) return {{"type", "uri"}, {"value", t.value}};
  nlohmann::json j{{"type", "literal"}, {"value", t.value}};
  if (t.datatype == rdf::Datatype::integer) j["datatype"] = std::string(vocab::kXsd) + "integer";
  if (t.datatype == rdf::Datatype::decimal) j["datatype"] = std::string(vocab::kXsd) + "decimal";
  return j;
}

inline Term term_from_json(const nlohmann::json& j) {
  const auto type = j.at("type").get<std::string>();
  const auto value = j.at("value").get<std::string>();
  if (type == "uri") return Term::iri(value);
  if (type != "literal" && type != "typed-literal") {
    throw Error(ErrorKind::unsupported_feature, "binding type " + type, type);
  }
  const auto dt = j.value("datatype", std::string());
  if (dt == std::string(vocab::kXsd) + "integer") return {rdf::TermKind::literal, value, rdf::Datatype::integer};
  if (dt == std::string(vocab::kXsd) + "decimal") return {rdf::TermKind::literal, value, rdf::Datatype::decimal};
  return Term::literal(value);
}

inline nlohmann::json to_json_value(const SolutionTable& t) {
  nlohmann::json bindings = nlohmann::json::array();
  for (const auto& row : t.rows) {
    nlohmann::json b = nlohmann::json::object();
    for (std::size_t i = 0; i < row.size(); ++i) b[t.header[i]] = term_json(row[i]);
    bindings.push_back(std::move(b));
  }
  return {{"head", {{"vars", t.header}}}, {"results", {{"bindings", bindings}}}};
}

inline std::string to_json(const SolutionTable& t) { return to_json_value(t).dump(2) + "\n"; }

inline SolutionTable parse_results_json(std::string_view text) {
  const auto j = nlohmann::json::parse(text);
  SolutionTable t;
  t.header = j.at("head").at("vars").get<std::vector<std::string>>();
  for (const auto& b : j.at("results").at("bindings")) {
    std::vector<Term> row;
    for (const auto& v : t.header) row.push_back(term_from_json(b.at(v)));
    t.rows.push_back(std::move(row));
  }
  return t;
}

inline std::string format_results(const SolutionTable& t, ResultFormat f) {
  return f == ResultFormat::tsv ? to_tsv(t) : to_json(t);
}

}  // namespace oak::sparql
