#pragma once

// Knowledge cards: the browser's summary of one stored knowledge item,
// read straight from the triple store.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "oak/publish.hpp"

namespace oak::browser {

struct RoleEntry {
  std::string instance;
  std::string concept_name;
  std::string transformation;
  std::string state;  // display form, empty when unobserved

  bool operator==(const RoleEntry&) const = default;
};

struct KnowledgeCard {
  std::string id;
  std::string task;
  std::string label;
  std::vector<std::string> algorithms;
  std::vector<RoleEntry> conditions;
  std::vector<RoleEntry> targets;
  std::optional<std::string> dataset;
  std::optional<std::int64_t> dataset_size;
  std::vector<std::pair<std::string, std::string>> evaluation;  // metric, value
  std::vector<std::string> locations;
  std::vector<std::string> context;
  int grade = 0;
  std::optional<std::string> source;

  bool operator==(const KnowledgeCard&) const = default;
};

namespace card_detail {

using publish::kmap_iri;
using publish::onto_iri;
using rdf::Term;

inline std::optional<std::string> local(const Term& t) {
  if (auto l = publish::detail::local_in(t, vocab::kAgriKMaps)) return l;
  return publish::detail::local_in(t, vocab::kAgriComO);
}

inline std::vector<Term> objects(const rdf::TripleStore& s, const Term& subj, std::string_view pred) {
  std::vector<Term> out;
  for (const auto& t : s.match(subj, onto_iri(pred), std::nullopt)) out.push_back(t.o);
  return out;
}

inline std::optional<Term> object(const rdf::TripleStore& s, const Term& subj, std::string_view pred) {
  auto os = objects(s, subj, pred);
  if (os.empty()) return std::nullopt;
  return os.front();
}

inline std::string label_or_local(const rdf::TripleStore& s, const Term& t) {
  for (const auto& l : s.match(t, publish::label_iri(), std::nullopt)) return l.o.value;
  return local(t).value_or(t.value);
}

/// Most specific AgriComO type of an instance, skipping the knowledge-model marker.
inline std::string concept_of(const rdf::TripleStore& s, const Term& subj) {
  std::string out;
  for (const auto& t : s.match(subj, publish::type_iri(), std::nullopt)) {
    auto l = publish::detail::local_in(t.o, vocab::kAgriComO);
    if (l && *l != vocab::kKnowledgeModel) out = *l;
  }
  return out;
}

inline std::string state_text(const rdf::TripleStore& s, const Term& subj) {
  auto st = object(s, subj, vocab::kHasState);
  if (!st) return "";
  std::string out = st->value;
  if (auto unit = object(s, subj, vocab::kHasUnit)) out += " " + unit->value;
  return out;
}

inline RoleEntry role(const rdf::TripleStore& s, const Term& inst) {
  RoleEntry r;
  r.instance = local(inst).value_or(inst.value);
  r.concept_name = concept_of(s, inst);
  if (auto t = object(s, inst, vocab::kHasTransformation)) r.transformation = local(*t).value_or("");
  r.state = state_text(s, inst);
  return r;
}

inline std::vector<std::string> locals(const std::vector<Term>& ts) {
  std::vector<std::string> out;
  for (const auto& t : ts) out.push_back(local(t).value_or(t.value));
  return out;
}

}  // namespace card_detail

/// Throws not-found when `id` is not a stored knowledge model.
inline KnowledgeCard build_card(const rdf::TripleStore& s, const std::string& id) {
  using namespace card_detail;
  const auto k = kmap_iri(id);
  if (!s.contains({k, publish::type_iri(), onto_iri(vocab::kKnowledgeModel)})) {
    throw Error(ErrorKind::not_found, "no knowledge item " + id, id);
  }
  KnowledgeCard c;
  c.id = id;
  const auto model = concept_of(s, k);
  if (auto task = task_of_model_concept(model)) c.task = std::string(to_string(*task));
  for (const auto& l : s.match(k, publish::label_iri(), std::nullopt)) c.label = l.o.value;
  c.algorithms = locals(objects(s, k, vocab::kHasAlgorithm));
  for (const auto& i : objects(s, k, vocab::kHasCondition)) c.conditions.push_back(role(s, i));
  for (const auto& i : objects(s, k, vocab::kPredicts)) c.targets.push_back(role(s, i));
  if (auto ds = object(s, k, vocab::kHasDataset)) {
    c.dataset = label_or_local(s, *ds);
    if (auto size = object(s, *ds, vocab::kDatasetSize)) c.dataset_size = text::parse_int(size->value);
  }
  for (const auto& ev : objects(s, k, vocab::kEvaluatedBy)) {
    auto metric = object(s, ev, vocab::kHasEvaluationMetric);
    c.evaluation.emplace_back(metric ? local(*metric).value_or("") : "", state_text(s, ev));
  }
  c.locations = locals(objects(s, k, vocab::kHasLocation));
  c.context = locals(objects(s, k, vocab::kRelatedTo));
  if (auto g = object(s, k, vocab::kGrade)) c.grade = static_cast<int>(text::parse_int(g->value).value_or(0));
  if (auto art = object(s, k, vocab::kDefinedIn)) {
    if (auto ident = object(s, *art, vocab::kIdentifier)) c.source = ident->value;
    else c.source = local(*art);
  }
  return c;
}

inline void sort_cards(std::vector<KnowledgeCard>& cards) {
  std::sort(cards.begin(), cards.end(), [](const KnowledgeCard& a, const KnowledgeCard& b) {
    if (a.grade != b.grade) return a.grade > b.grade;
    return a.id < b.id;
  });
}

inline nlohmann::json to_json(const RoleEntry& r) {
  nlohmann::json j{{"instance", r.instance}, {"concept", r.concept_name}};
  if (!r.transformation.empty()) j["transformation"] = r.transformation;
  if (!r.state.empty()) j["state"] = r.state;
  return j;
}

inline nlohmann::json to_json(const KnowledgeCard& c) {
  auto roles = [](const std::vector<RoleEntry>& rs) {
    auto a = nlohmann::json::array();
    for (const auto& r : rs) a.push_back(to_json(r));
    return a;
  };
  nlohmann::json j{{"id", c.id},
                   {"task", c.task},
                   {"label", c.label},
                   {"algorithms", c.algorithms},
                   {"conditions", roles(c.conditions)},
                   {"targets", roles(c.targets)},
                   {"locations", c.locations},
                   {"context", c.context},
                   {"grade", c.grade}};
  if (c.dataset) {
    j["dataset"] = {{"name", *c.dataset}};
    if (c.dataset_size) j["dataset"]["size"] = *c.dataset_size;
  }
  auto ev = nlohmann::json::array();
  for (const auto& [m, v] : c.evaluation) ev.push_back({{"metric", m}, {"value", v}});
  j["evaluation"] = ev;
  j["source"] = c.source ? nlohmann::json(*c.source) : nlohmann::json(nullptr);
  return j;
}

inline nlohmann::json to_json(const std::vector<KnowledgeCard>& cards) {
  auto a = nlohmann::json::array();
  for (const auto& c : cards) a.push_back(to_json(c));
  return a;
}

}  // namespace oak::browser
