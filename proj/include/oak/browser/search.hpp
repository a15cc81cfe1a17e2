#pragma once

// Keyword search: free text -> SearchIntent -> SPARQL template -> cards.

#include <algorithm>
#include <optional>
#include <regex>
#include <set>
#include <string>
#include <vector>

#include "oak/browser/card.hpp"
#include "oak/kmap.hpp"
#include "oak/sparql/eval.hpp"

namespace oak::browser {

enum class Action { describe, find_models, find_relations, find_transformations, find_by_dataset };

constexpr std::string_view to_string(Action a) {
  switch (a) {
    case Action::describe: return "describe";
    case Action::find_models: return "find-models";
    case Action::find_relations: return "find-relations";
    case Action::find_transformations: return "find-transformations";
    case Action::find_by_dataset: return "find-by-dataset";
  }
  return "";
}

struct SearchIntent {
  Action action = Action::find_models;
  std::vector<std::string> conditions;
  std::vector<std::string> targets;
  std::vector<std::string> target_states;
  std::vector<std::string> locations;
  std::vector<std::string> context;
  std::vector<std::string> concepts;  // subjects of describe / relations / transformations
  std::optional<std::string> focus_instance;
  std::optional<std::string> focus_transformation;
  std::optional<std::string> dataset;

  bool empty() const {
    return conditions.empty() && targets.empty() && target_states.empty() && locations.empty() &&
           context.empty() && concepts.empty() && !focus_instance && !focus_transformation &&
           !dataset;
  }

  bool operator==(const SearchIntent&) const = default;
};

inline nlohmann::json to_json(const SearchIntent& i) {
  nlohmann::json j{{"action", std::string(to_string(i.action))},
                   {"conditions", i.conditions},
                   {"targets", i.targets},
                   {"target_states", i.target_states},
                   {"locations", i.locations},
                   {"context", i.context},
                   {"concepts", i.concepts}};
  if (i.focus_instance) j["focus_instance"] = *i.focus_instance;
  if (i.focus_transformation) j["focus_transformation"] = *i.focus_transformation;
  if (i.dataset) j["dataset"] = *i.dataset;
  return j;
}

// ---------------------------------------------------------------------------
// Step 1-2: finding concepts in the query

namespace search_detail {

struct Word {
  std::string raw;   // as typed, edge punctuation removed
  std::string norm;  // normalize_term(raw)
};

inline std::vector<Word> words_of(std::string_view q) {
  std::vector<Word> out;
  for (auto& tok : text::split_ws(q)) {
    auto is_edge = [](char c) { return c == '?' || c == '!' || c == ',' || c == '.' || c == ';' || c == ':' || c == '"' || c == '\''; };
    while (!tok.empty() && is_edge(tok.back())) tok.pop_back();
    while (!tok.empty() && is_edge(tok.front())) tok.erase(tok.begin());
    if (tok.empty()) continue;
    out.push_back({tok, text::normalize_term(tok)});
  }
  return out;
}

enum class Mode { none, targets, conditions, locations, context, dataset };

struct Trigger {
  std::vector<std::string_view> words;
  std::optional<Mode> mode;
  std::optional<Action> action;
};

// Longest triggers first so "based on" wins over a bare "on".
inline const std::vector<Trigger>& triggers() {
  static const std::vector<Trigger> t = {
      {{"information", "of"}, Mode::none, Action::describe},
      {{"information", "about"}, Mode::none, Action::describe},
      {{"what", "is"}, Mode::none, Action::describe},
      {{"what", "are"}, Mode::none, Action::describe},
      {{"tell", "me", "about"}, Mode::none, Action::describe},
      {{"based", "on"}, Mode::conditions, Action::find_models},
      {{"related", "to"}, Mode::context, std::nullopt},
      {{"trained", "on"}, Mode::dataset, Action::find_by_dataset},
      {{"predict"}, Mode::targets, Action::find_models},
      {{"predicts"}, Mode::targets, Action::find_models},
      {{"predicting"}, Mode::targets, Action::find_models},
      {{"prediction"}, Mode::targets, Action::find_models},
      {{"use"}, Mode::conditions, Action::find_models},
      {{"uses"}, Mode::conditions, Action::find_models},
      {{"using"}, Mode::conditions, Action::find_models},
      {{"in"}, Mode::locations, std::nullopt},
      {{"dataset"}, Mode::dataset, Action::find_by_dataset},
      {{"relationship"}, Mode::none, Action::find_relations},
      {{"relationships"}, Mode::none, Action::find_relations},
      {{"relation"}, Mode::none, Action::find_relations},
      {{"relations"}, Mode::none, Action::find_relations},
      {{"between"}, Mode::none, Action::find_relations},
      {{"transformation"}, Mode::none, Action::find_transformations},
      {{"transformations"}, Mode::none, Action::find_transformations},
      {{"process"}, Mode::none, Action::find_transformations},
      {{"methods"}, Mode::none, Action::find_transformations},
      {{"describe"}, Mode::none, Action::describe},
  };
  return t;
}

inline bool is_stopword(std::string_view w) {
  static const std::set<std::string, std::less<>> stop = {
      "the", "a", "an", "of", "for", "to", "on", "and", "or", "which", "what", "are", "is", "how",
      "with", "by", "from", "that", "can", "do", "does", "all", "find", "show", "me", "list",
      "model", "models", "knowledge", "items", "item", "condition", "conditions", "potential",
      "characteristics", "value", "values", "about", "information", "get", "give", "at", "there",
      "it", "its", "their", "used", "be", "as", "when", "where", "who", "any", "some",
  };
  return stop.count(w) > 0;
}

struct Match {
  ElementKind kind;
  std::string id;
  std::size_t length;
};

/// Longest lexicon span starting at `pos`; equal lengths go to the more
/// specific partition (state label, instance, concept, transformation, relation).
inline std::optional<Match> longest_span(const Lexicon& lex, const std::vector<Word>& words,
                                         std::size_t pos) {
  static constexpr ElementKind kPriority[] = {ElementKind::state_label, ElementKind::instance,
                                              ElementKind::concept_, ElementKind::transformation,
                                              ElementKind::relation};
  const auto max_len = std::min(lex.max_words(), words.size() - pos);
  for (std::size_t len = max_len; len >= 1; --len) {
    std::string surface;
    for (std::size_t k = pos; k < pos + len; ++k) surface += (k == pos ? "" : " ") + words[k].norm;
    for (auto kind : kPriority) {
      if (auto id = lex.find(kind, surface)) return Match{kind, *id, len};
    }
  }
  return std::nullopt;
}

inline void push_unique(std::vector<std::string>& v, const std::string& s) {
  if (std::find(v.begin(), v.end(), s) == v.end()) v.push_back(s);
}

inline bool is_kmap_id(const std::string& s) {
  static const std::regex re("(Classifier|Regressor|Clustering|Association)_[0-9]{3,}");
  return std::regex_match(s, re);
}

}  // namespace search_detail

/// Splits a keyword query into intent slots by trigger words and maximal
/// lexicon spans. Throws no-concepts-recognized when nothing resolves.
inline SearchIntent parse_search(std::string_view q, const Ontology& o) {
  using namespace search_detail;
  const auto words = words_of(q);
  if (words.empty()) throw Error(ErrorKind::no_concepts_recognized, "empty query");

  SearchIntent intent;
  std::optional<Action> action;
  Mode mode = Mode::none;
  std::vector<std::string> unknown;
  bool recognized = false;
  // More specific requests outrank generic ones.
  auto rank = [](Action a) {
    switch (a) {
      case Action::describe: return 0;
      case Action::find_models: return 1;
      case Action::find_relations:
      case Action::find_transformations: return 2;
      case Action::find_by_dataset: return 3;
    }
    return 0;
  };
  auto set_action = [&](Action a) {
    if (!action || rank(a) > rank(*action)) action = a;
  };

  for (std::size_t i = 0; i < words.size();) {
    if (is_kmap_id(words[i].raw)) {
      intent.focus_instance = words[i].raw;
      set_action(Action::describe);
      recognized = true;
      ++i;
      continue;
    }
    if (mode == Mode::dataset) {
      // Everything up to the next trigger names the dataset.
      std::string name;
      while (i < words.size() && !(words[i].norm == "in" || words[i].norm == "related")) {
        if (!name.empty() || !is_stopword(words[i].norm)) name += (name.empty() ? "" : " ") + words[i].raw;
        ++i;
      }
      if (!name.empty()) {
        intent.dataset = name;
        recognized = true;
      }
      mode = Mode::none;
      continue;
    }
    const Trigger* hit = nullptr;
    for (const auto& t : triggers()) {
      if (i + t.words.size() > words.size()) continue;
      bool ok = true;
      for (std::size_t k = 0; k < t.words.size() && ok; ++k) ok = words[i + k].norm == t.words[k];
      if (ok && (!hit || t.words.size() > hit->words.size())) hit = &t;
    }
    // A trigger word that is itself the start of a longer lexicon span
    // ("dataset" vs a concept) yields to the span.
    auto span = longest_span(o.lexicon, words, i);
    if (hit && (!span || span->length <= hit->words.size())) {
      if (hit->action) set_action(*hit->action);
      if (hit->mode) mode = *hit->mode;
      i += hit->words.size();
      continue;
    }
    if (!span) {
      if (!is_stopword(words[i].norm)) unknown.push_back(words[i].raw);
      ++i;
      continue;
    }
    recognized = true;
    i += span->length;
    switch (span->kind) {
      case ElementKind::state_label:
        push_unique(intent.target_states, span->id);
        set_action(Action::find_models);
        break;
      case ElementKind::instance:
        if (o.find_individual(span->id) && (mode == Mode::locations || mode == Mode::none ||
                                            mode == Mode::targets || mode == Mode::conditions)) {
          if (action == Action::describe && mode != Mode::locations) {
            push_unique(intent.concepts, span->id);
          } else {
            push_unique(intent.locations, span->id);
          }
        }
        break;
      case ElementKind::concept_: {
        const bool crop = o.is_subclass_of(span->id, "Crop");
        // "crops" in a model search means any crop, which constrains nothing.
        if (span->id == "Crop" && mode != Mode::none) break;
        if (mode == Mode::targets && crop) {
          push_unique(intent.context, span->id);
        } else if (mode == Mode::targets) {
          push_unique(intent.targets, span->id);
        } else if (mode == Mode::conditions) {
          push_unique(intent.conditions, span->id);
        } else if (mode == Mode::context) {
          push_unique(intent.context, span->id);
        } else {
          push_unique(intent.concepts, span->id);
        }
        break;
      }
      case ElementKind::transformation:
        if (!intent.focus_transformation) intent.focus_transformation = span->id;
        break;
      case ElementKind::relation:
        set_action(Action::find_relations);
        break;
    }
  }

  if (!recognized) {
    throw TermListError(ErrorKind::no_concepts_recognized,
                        unknown.empty() ? std::vector<std::string>{std::string(q)} : unknown);
  }
  intent.action = action.value_or(intent.concepts.empty() && !intent.focus_transformation
                                      ? Action::find_models
                                      : Action::describe);
  // Free concepts in a model search act as conditions.
  if (intent.action == Action::find_models) {
    for (const auto& c : intent.concepts) {
      if (c == "Crop") continue;
      if (o.is_subclass_of(c, "Crop")) push_unique(intent.context, c);
      else push_unique(intent.conditions, c);
    }
    intent.concepts.clear();
  }
  return intent;
}

// ---------------------------------------------------------------------------
// Step 3: generating SPARQL

struct CompiledQuery {
  std::string template_id;  // QF1..QF10
  std::string text;
  bool yields_items = false;  // rows bind knowledge-model ids in ?subject
};

namespace search_detail {

inline std::string header(bool with_rdfs = false) {
  std::string h = "PREFIX rdf: <" + std::string(vocab::kRdf) + ">\n";
  if (with_rdfs) h += "PREFIX rdfs: <" + std::string(vocab::kRdfs) + ">\n";
  h += "PREFIX AgriComO: <" + std::string(vocab::kAgriComO) + ">\n";
  h += "PREFIX AgriKMaps: <" + std::string(vocab::kAgriKMaps) + ">\n";
  return h;
}

inline std::string quote(const std::string& s) { return "\"" + rdf::escape_string(s) + "\""; }

inline std::string numbered(const std::string& stem, std::size_t i) {
  return i == 0 ? stem : stem + std::to_string(i + 1);
}

inline CompiledQuery select(std::string id, const std::string& projection,
                            const std::vector<std::string>& patterns, bool items,
                            bool with_rdfs = false) {
  std::string q = header(with_rdfs) + "SELECT " + projection + "\nWHERE {\n";
  for (const auto& p : patterns) q += "    " + p + " .\n";
  q += "}\n";
  return {std::move(id), std::move(q), items};
}

}  // namespace search_detail

inline CompiledQuery generate_sparql(const SearchIntent& in) {
  using namespace search_detail;
  if (in.focus_instance) {
    std::string q = header() + "SELECT *\nWHERE {\n    AgriKMaps:" + *in.focus_instance +
                    " ?predictive1 ?object1 .\n    ?object1 ?predictive2 ?object2\n}\n";
    return {"QF2", q, false};
  }
  if (in.action == Action::find_by_dataset && in.dataset) {
    return select("QF10", "?subject",
                  {"?subject AgriComO:hasDataset ?dataset", "?dataset rdfs:label " + quote(*in.dataset)},
                  true, true);
  }
  if (in.action == Action::find_relations && in.concepts.size() >= 2) {
    return select("QF6", "?relation",
                  {"AgriComO:" + in.concepts[0] + " ?relation AgriComO:" + in.concepts[1]}, false);
  }
  if (in.action == Action::find_transformations) {
    std::string c;
    if (!in.concepts.empty()) c = in.concepts.front();
    else if (!in.targets.empty()) c = in.targets.front();
    else if (!in.conditions.empty()) c = in.conditions.front();
    if (!c.empty()) {
      return select("QF5", "?transformation",
                    {"AgriComO:" + c + " AgriComO:hasTransformation ?transformation"}, false);
    }
  }
  if (in.action == Action::describe) {
    if (in.focus_transformation && in.concepts.empty()) {
      return select("QF9", "?predicate ?object",
                    {"AgriComO:" + *in.focus_transformation + " ?predicate ?object"}, false);
    }
    if (!in.concepts.empty()) {
      return select("QF1", "?p ?o", {"AgriComO:" + in.concepts.front() + " ?p ?o"}, false);
    }
  }

  const bool models = !in.conditions.empty() || !in.targets.empty() || !in.target_states.empty() ||
                      !in.locations.empty() || !in.context.empty();
  if (!models) throw Error(ErrorKind::no_template, "no query template fits the recognized terms");

  std::vector<std::string> patterns;
  std::string projection = "?subject";
  std::string id;
  for (std::size_t i = 0; i < in.conditions.size(); ++i) {
    const auto var = "?" + numbered("object", i);
    patterns.push_back("?subject AgriComO:hasCondition " + var);
    patterns.push_back(var + " rdf:type AgriComO:" + in.conditions[i]);
  }
  const std::size_t target_vars = std::max(in.targets.size(), in.target_states.size());
  for (std::size_t i = 0; i < target_vars; ++i) {
    const auto var = "?" + numbered("target", i);
    patterns.push_back("?subject AgriComO:predicts " + var);
    if (i < in.targets.size()) patterns.push_back(var + " rdf:type AgriComO:" + in.targets[i]);
    if (i < in.target_states.size()) patterns.push_back(var + " AgriComO:hasState " + quote(in.target_states[i]));
  }
  for (const auto& l : in.locations) patterns.push_back("?subject AgriComO:hasLocation AgriComO:" + l);
  for (const auto& c : in.context) patterns.push_back("?subject AgriComO:relatedTo AgriComO:" + c);

  if (!in.target_states.empty() && !in.locations.empty()) {
    id = "QF8";
  } else if (!in.target_states.empty()) {
    id = "QF7";
    if (in.conditions.empty()) {
      patterns.push_back("?subject AgriComO:hasCondition ?condition");
      projection = "?subject ?condition";
    }
  } else if (!in.conditions.empty()) {
    id = "QF3";
  } else {
    id = "QF4";
  }
  return select(id, projection, patterns, true);
}

// ---------------------------------------------------------------------------
// Step 4: regenerating results

/// Distinct knowledge items bound by the solutions, as cards sorted by grade
/// descending, then id.
inline std::vector<KnowledgeCard> assemble_results(const sparql::SolutionTable& t,
                                                   const rdf::TripleStore& store) {
  std::vector<KnowledgeCard> out;
  std::set<std::string> seen;
  const auto kmap_type = publish::onto_iri(vocab::kKnowledgeModel);
  for (const auto& row : t.rows) {
    for (const auto& term : row) {
      if (!term.is_iri()) continue;
      auto id = publish::detail::local_in(term, vocab::kAgriKMaps);
      if (!id || seen.count(*id)) continue;
      if (!store.contains({term, publish::type_iri(), kmap_type})) continue;
      seen.insert(*id);
      out.push_back(build_card(store, *id));
    }
  }
  sort_cards(out);
  return out;
}

struct SearchResult {
  SearchIntent intent;
  CompiledQuery query;
  sparql::SolutionTable table;
  std::vector<KnowledgeCard> cards;
};

/// The four browser steps end to end.
inline SearchResult search(std::string_view q, const Ontology& o, const rdf::TripleStore& store) {
  SearchResult r;
  r.intent = parse_search(q, o);
  r.query = generate_sparql(r.intent);
  const auto parsed = sparql::parse_query(r.query.text);
  r.table = sparql::evaluate(store, parsed);
  if (r.intent.focus_instance) {
    if (store.contains({publish::kmap_iri(*r.intent.focus_instance), publish::type_iri(),
                        publish::onto_iri(vocab::kKnowledgeModel)})) {
      r.cards.push_back(build_card(store, *r.intent.focus_instance));
    }
  } else if (r.query.yields_items) {
    r.cards = assemble_results(r.table, store);
  }
  return r;
}

}  // namespace oak::browser
