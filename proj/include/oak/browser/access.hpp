#pragma once

// Access instrumentation: which OAK element kinds and instance roles a
// browser query uses as input (pattern constants) or returns as output
// (matched triples plus the triples read to build its cards).

#include <array>
#include <set>
#include <string>
#include <vector>

#include "oak/browser/search.hpp"

namespace oak::browser {

enum class Element { concept_, instance, state, transformation, relation };
enum class Role { kmap, algorithm, condition, target, dataset, evaluation, location, context };

inline constexpr std::array<Element, 5> kAllElements = {
    Element::concept_, Element::instance, Element::state, Element::transformation, Element::relation};
inline constexpr std::array<Role, 8> kAllRoles = {Role::kmap,       Role::algorithm, Role::condition,
                                                  Role::target,     Role::dataset,   Role::evaluation,
                                                  Role::location,   Role::context};

constexpr std::string_view to_string(Element e) {
  switch (e) {
    case Element::concept_: return "Concept";
    case Element::instance: return "Instance";
    case Element::state: return "State";
    case Element::transformation: return "Transformation";
    case Element::relation: return "Relation";
  }
  return "";
}

constexpr std::string_view to_string(Role r) {
  switch (r) {
    case Role::kmap: return "KMap";
    case Role::algorithm: return "Algorithm";
    case Role::condition: return "Condition";
    case Role::target: return "Target";
    case Role::dataset: return "Dataset";
    case Role::evaluation: return "Evaluation";
    case Role::location: return "Location";
    case Role::context: return "Context";
  }
  return "";
}

struct Access {
  std::set<Element> input_elements, output_elements;
  std::set<Role> input_roles, output_roles;

  Access& operator|=(const Access& o) {
    input_elements.insert(o.input_elements.begin(), o.input_elements.end());
    output_elements.insert(o.output_elements.begin(), o.output_elements.end());
    input_roles.insert(o.input_roles.begin(), o.input_roles.end());
    output_roles.insert(o.output_roles.begin(), o.output_roles.end());
    return *this;
  }

  std::set<Element> elements() const {
    auto all = input_elements;
    all.insert(output_elements.begin(), output_elements.end());
    return all;
  }
  std::set<Role> roles() const {
    auto all = input_roles;
    all.insert(output_roles.begin(), output_roles.end());
    return all;
  }
};

namespace access_detail {

using publish::onto_iri;
using publish::type_iri;
using rdf::Term;

inline bool typed(const rdf::TripleStore& s, const Term& t, const Term& cls) {
  return t.is_iri() && s.contains({t, type_iri(), cls});
}

inline void classify_node(const rdf::TripleStore& s, const Term& t, std::set<Element>& el,
                          std::set<Role>& roles) {
  if (!t.is_iri()) return;
  if (typed(s, t, Term::iri(vocab::owl("Class")))) el.insert(Element::concept_);
  bool transformation = false;
  for (auto cls : {vocab::kDataTransformation, vocab::kComputingAlgorithm, vocab::kEvaluationMetric}) {
    transformation = transformation || typed(s, t, onto_iri(cls));
  }
  // Transformations are published as named individuals too; they count once.
  if (transformation) el.insert(Element::transformation);
  else if (typed(s, t, Term::iri(vocab::owl("NamedIndividual")))) el.insert(Element::instance);
  if (typed(s, t, onto_iri(vocab::kComputingAlgorithm))) roles.insert(Role::algorithm);
  if (typed(s, t, onto_iri(vocab::kKnowledgeModel))) roles.insert(Role::kmap);
}

inline std::optional<Role> role_of_predicate(const Term& p) {
  auto l = publish::detail::local_in(p, vocab::kAgriComO);
  if (!l) return std::nullopt;
  if (*l == vocab::kHasAlgorithm) return Role::algorithm;
  if (*l == vocab::kHasCondition) return Role::condition;
  if (*l == vocab::kPredicts) return Role::target;
  if (*l == vocab::kHasDataset) return Role::dataset;
  if (*l == vocab::kEvaluatedBy) return Role::evaluation;
  if (*l == vocab::kHasLocation) return Role::location;
  if (*l == vocab::kRelatedTo) return Role::context;
  return std::nullopt;
}

inline bool is_relation_predicate(const Term& p) {
  if (!p.is_iri()) return false;
  for (auto r : vocab::kRelationVocabulary) {
    if (p.value == vocab::relation_iri(r)) return true;
  }
  return false;
}

inline bool is_state_predicate(const Term& p) { return p == onto_iri(vocab::kHasState); }

inline void classify_triple(const rdf::TripleStore& s, const rdf::Triple& t, std::set<Element>& el,
                            std::set<Role>& roles) {
  classify_node(s, t.s, el, roles);
  classify_node(s, t.o, el, roles);
  if (is_relation_predicate(t.p)) el.insert(Element::relation);
  if (is_state_predicate(t.p) && t.o.is_literal()) el.insert(Element::state);
  if (auto r = role_of_predicate(t.p)) roles.insert(*r);
}

}  // namespace access_detail

/// Elements and roles a parsed query names as constants.
inline Access input_access(const sparql::Query& q, const rdf::TripleStore& s) {
  using namespace access_detail;
  Access a;
  for (const auto& tp : q.patterns) {
    for (const auto* pt : {&tp.s, &tp.o}) {
      if (const auto* t = sparql::as_term(*pt)) classify_node(s, *t, a.input_elements, a.input_roles);
    }
    if (const auto* p = sparql::as_term(tp.p)) {
      if (is_relation_predicate(*p)) a.input_elements.insert(Element::relation);
      if (auto r = role_of_predicate(*p)) a.input_roles.insert(*r);
      if (is_state_predicate(*p)) {
        if (const auto* o = sparql::as_term(tp.o); o && o->is_literal()) {
          a.input_elements.insert(Element::state);
        }
      }
    }
  }
  return a;
}

/// Triples matched by the solutions of `q`, every variable bound.
inline std::vector<rdf::Triple> matched_triples(const sparql::Query& q, const rdf::TripleStore& s) {
  auto full = q;
  full.select_all = true;
  full.projection.clear();
  full.limit.reset();
  const auto table = sparql::evaluate(s, full);
  std::vector<rdf::Triple> out;
  for (const auto& row : table.rows) {
    sparql::Binding b;
    for (std::size_t i = 0; i < table.header.size(); ++i) b.emplace(table.header[i], row[i]);
    for (const auto& tp : q.patterns) {
      auto get = [&](const sparql::PatternTerm& pt) {
        if (const auto* v = sparql::as_var(pt)) return b.at(v->name);
        return *sparql::as_term(pt);
      };
      out.push_back({get(tp.s), get(tp.p), get(tp.o)});
    }
  }
  return out;
}

/// Triples a card for `id` is built from: the item's own triples and those
/// of the knowledge-map instances it links to.
inline std::vector<rdf::Triple> card_triples(const rdf::TripleStore& s, const std::string& id) {
  std::vector<rdf::Triple> out;
  for (const auto& t : s.match(publish::kmap_iri(id), std::nullopt, std::nullopt)) {
    out.push_back(t);
    if (publish::detail::local_in(t.o, vocab::kAgriKMaps)) {
      for (const auto& u : s.match(t.o, std::nullopt, std::nullopt)) out.push_back(u);
    }
  }
  return out;
}

inline Access output_access(const SearchResult& r, const rdf::TripleStore& s) {
  Access a;
  std::vector<rdf::Triple> triples = matched_triples(sparql::parse_query(r.query.text), s);
  for (const auto& c : r.cards) {
    auto more = card_triples(s, c.id);
    triples.insert(triples.end(), more.begin(), more.end());
  }
  for (const auto& t : triples) access_detail::classify_triple(s, t, a.output_elements, a.output_roles);
  return a;
}

inline Access access_of(const SearchResult& r, const rdf::TripleStore& s) {
  auto a = input_access(sparql::parse_query(r.query.text), s);
  a |= output_access(r, s);
  return a;
}

}  // namespace oak::browser
