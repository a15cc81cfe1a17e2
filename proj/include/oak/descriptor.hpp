#pragma once

// Structured description of one mined data-mining result, read from JSON.

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "oak/error.hpp"
#include "oak/kmap.hpp"

namespace oak {

struct StateInput {
  std::variant<double, std::string> value;
  std::string unit;
  bool operator==(const StateInput&) const = default;
};

/// A condition or target: a concept term with an optional transformation
/// term and an optional observed state.
struct RoleSpec {
  std::string concept_term;
  std::optional<std::string> transformation;
  std::optional<StateInput> state;
  bool operator==(const RoleSpec&) const = default;
};

struct DatasetSpec {
  std::string name;
  std::optional<std::int64_t> size;
  bool operator==(const DatasetSpec&) const = default;
};

struct EvaluationSpec {
  std::string metric;
  double value = 0;
  bool operator==(const EvaluationSpec&) const = default;
};

struct SourceSpec {
  std::string id;
  std::optional<std::string> title;
  std::optional<std::int64_t> year;
  bool operator==(const SourceSpec&) const = default;
};

struct Descriptor {
  std::optional<std::uint64_t> item;  // pins the instance suffix
  std::string task;
  std::vector<std::string> algorithms;
  std::vector<RoleSpec> conditions;
  std::vector<RoleSpec> targets;
  std::optional<DatasetSpec> dataset;
  std::vector<EvaluationSpec> evaluation;
  std::vector<std::string> locations;
  std::vector<std::string> context;
  std::optional<SourceSpec> source;

  bool operator==(const Descriptor&) const = default;
};

enum class PatternKind { classification, regression, clustering, association, process, fact };

constexpr std::string_view to_string(PatternKind k) {
  switch (k) {
    case PatternKind::classification: return "classification";
    case PatternKind::regression: return "regression";
    case PatternKind::clustering: return "clustering";
    case PatternKind::association: return "association";
    case PatternKind::process: return "process-knowledge";
    case PatternKind::fact: return "fact-knowledge";
  }
  return "";
}

/// Fact knowledge carries at least one observed condition or target state.
inline bool has_states(const Descriptor& d) {
  for (const auto* roles : {&d.conditions, &d.targets}) {
    for (const auto& r : *roles) {
      if (r.state) return true;
    }
  }
  return false;
}

inline PatternKind knowledge_kind(const Descriptor& d) {
  return has_states(d) ? PatternKind::fact : PatternKind::process;
}

namespace detail {

using nlohmann::json;

[[noreturn]] inline void bad(const std::string& msg) {
  throw Error(ErrorKind::invalid_descriptor, msg);
}

inline std::string req_string(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key) || !j.at(key).is_string()) bad(where + "." + key + " must be a string");
  return j.at(key).get<std::string>();
}

inline std::vector<std::string> string_list(const json& j, const char* key) {
  std::vector<std::string> out;
  if (!j.contains(key) || j.at(key).is_null()) return out;
  const auto& a = j.at(key);
  if (a.is_string()) return {a.get<std::string>()};
  if (!a.is_array()) bad(std::string(key) + " must be a list of strings");
  for (const auto& e : a) {
    if (!e.is_string()) bad(std::string(key) + " must be a list of strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

inline StateInput state_from(const json& s, const std::string& where) {
  if (s.is_number()) return {s.get<double>(), ""};
  if (s.is_string()) return {s.get<std::string>(), ""};
  if (s.is_object() && s.contains("value")) {
    StateInput out = state_from(s.at("value"), where);
    if (s.contains("unit")) out.unit = req_string(s, "unit", where + ".state");
    return out;
  }
  bad(where + ".state must be a number, a label or {value, unit}");
}

inline std::vector<RoleSpec> roles(const json& j, const char* key) {
  std::vector<RoleSpec> out;
  if (!j.contains(key) || j.at(key).is_null()) return out;
  if (!j.at(key).is_array()) bad(std::string(key) + " must be a list");
  std::size_t n = 0;
  for (const auto& e : j.at(key)) {
    const auto where = std::string(key) + "[" + std::to_string(n++) + "]";
    if (e.is_string()) {
      out.push_back({e.get<std::string>(), std::nullopt, std::nullopt});
      continue;
    }
    if (!e.is_object()) bad(where + " must be a term or an object");
    RoleSpec r;
    r.concept_term = req_string(e, "concept", where);
    if (e.contains("transformation") && !e.at("transformation").is_null()) {
      r.transformation = req_string(e, "transformation", where);
    }
    if (e.contains("state") && !e.at("state").is_null()) r.state = state_from(e.at("state"), where);
    out.push_back(std::move(r));
  }
  return out;
}

inline json state_json(const StateInput& s) {
  json v = std::holds_alternative<double>(s.value) ? json(std::get<double>(s.value))
                                                   : json(std::get<std::string>(s.value));
  if (s.unit.empty()) return v;
  return {{"value", v}, {"unit", s.unit}};
}

inline json roles_json(const std::vector<RoleSpec>& rs) {
  json a = json::array();
  for (const auto& r : rs) {
    json e{{"concept", r.concept_term}};
    if (r.transformation) e["transformation"] = *r.transformation;
    if (r.state) e["state"] = state_json(*r.state);
    a.push_back(std::move(e));
  }
  return a;
}

}  // namespace detail

inline Descriptor descriptor_from_json(const nlohmann::json& j) {
  using detail::bad;
  if (!j.is_object()) bad("descriptor must be a JSON object");
  Descriptor d;
  if (j.contains("item") && !j.at("item").is_null()) {
    if (!j.at("item").is_number_unsigned()) bad("item must be a non-negative integer");
    d.item = j.at("item").get<std::uint64_t>();
  }
  d.task = detail::req_string(j, "task", "descriptor");
  d.algorithms = detail::string_list(j, "algorithms");
  d.conditions = detail::roles(j, "conditions");
  d.targets = detail::roles(j, "targets");
  if (j.contains("dataset") && !j.at("dataset").is_null()) {
    const auto& ds = j.at("dataset");
    DatasetSpec spec;
    if (ds.is_string()) {
      spec.name = ds.get<std::string>();
    } else {
      spec.name = detail::req_string(ds, "name", "dataset");
      if (ds.contains("size") && !ds.at("size").is_null()) {
        if (!ds.at("size").is_number_integer()) bad("dataset.size must be an integer");
        spec.size = ds.at("size").get<std::int64_t>();
      }
    }
    d.dataset = spec;
  }
  if (j.contains("evaluation") && !j.at("evaluation").is_null()) {
    if (!j.at("evaluation").is_array()) bad("evaluation must be a list");
    for (const auto& e : j.at("evaluation")) {
      EvaluationSpec ev;
      ev.metric = detail::req_string(e, "metric", "evaluation");
      if (!e.contains("value") || !e.at("value").is_number()) bad("evaluation.value must be a number");
      ev.value = e.at("value").get<double>();
      d.evaluation.push_back(ev);
    }
  }
  d.locations = detail::string_list(j, "locations");
  d.context = detail::string_list(j, "context");
  if (j.contains("source") && !j.at("source").is_null()) {
    const auto& s = j.at("source");
    SourceSpec src;
    src.id = detail::req_string(s, "id", "source");
    if (s.contains("title") && !s.at("title").is_null()) src.title = detail::req_string(s, "title", "source");
    if (s.contains("year") && !s.at("year").is_null()) {
      if (!s.at("year").is_number_integer()) bad("source.year must be an integer");
      src.year = s.at("year").get<std::int64_t>();
    }
    d.source = src;
  }
  return d;
}

inline Descriptor parse_descriptor(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::invalid_descriptor, std::string("malformed JSON: ") + e.what());
  }
  return descriptor_from_json(j);
}

inline nlohmann::json to_json(const Descriptor& d) {
  nlohmann::json j;
  if (d.item) j["item"] = *d.item;
  j["task"] = d.task;
  j["algorithms"] = d.algorithms;
  j["conditions"] = detail::roles_json(d.conditions);
  j["targets"] = detail::roles_json(d.targets);
  if (d.dataset) {
    j["dataset"] = {{"name", d.dataset->name}};
    if (d.dataset->size) j["dataset"]["size"] = *d.dataset->size;
  }
  if (!d.evaluation.empty()) {
    j["evaluation"] = nlohmann::json::array();
    for (const auto& e : d.evaluation) j["evaluation"].push_back({{"metric", e.metric}, {"value", e.value}});
  }
  if (!d.locations.empty()) j["locations"] = d.locations;
  if (!d.context.empty()) j["context"] = d.context;
  if (d.source) {
    j["source"] = {{"id", d.source->id}};
    if (d.source->title) j["source"]["title"] = *d.source->title;
    if (d.source->year) j["source"]["year"] = *d.source->year;
  }
  return j;
}

}  // namespace oak
