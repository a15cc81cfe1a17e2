#pragma once

#include <initializer_list>
#include <string>
#include <string_view>

#include "oak/kmap.hpp"

namespace oak {

/// Incremental construction of an Ontology with lexicon entries generated
/// from element ids, split identifiers, labels and extra synonyms.
class OntologyBuilder {
 public:
  OntologyBuilder() {
    for (auto r : vocab::kRelationVocabulary) {
      onto_.lexicon.add(ElementKind::relation, r, std::string(r));
      onto_.lexicon.add(ElementKind::relation, text::split_identifier(r), std::string(r));
    }
  }

  OntologyBuilder& concept_(std::string_view name, Namespace ns, std::string_view parent = {},
                            std::initializer_list<std::string_view> synonyms = {}) {
    auto id = ConceptId::make(std::string(name), ns);
    onto_.concepts.emplace(id.local_name, id);
    if (!parent.empty()) {
      onto_.relations.insert(Relation::link(id.local_name, vocab::kSubClassOf, std::string(parent)));
    }
    add_terms(ElementKind::concept_, id.local_name, synonyms);
    return *this;
  }

  OntologyBuilder& label(std::string_view id, std::string_view text) {
    onto_.labels[std::string(id)] = std::string(text);
    return *this;
  }

  OntologyBuilder& transformation(Transformation t,
                                  std::initializer_list<std::string_view> synonyms = {}) {
    const auto owner = t.subject.local_name;
    const auto id = t.id;
    onto_ = attach_transformation(onto_, owner, t);
    for (auto s : synonyms) onto_.lexicon.add(ElementKind::transformation, s, id);
    return *this;
  }

  OntologyBuilder& individual(std::string_view id, std::string_view concept_name,
                              std::initializer_list<std::string_view> synonyms = {}) {
    const auto* c = onto_.find_concept(concept_name);
    if (!c) {
      throw Error(ErrorKind::undeclared_concept, std::string(concept_name) + " is not declared",
                  std::string(concept_name));
    }
    Instance inst{std::string(id), *c, c->ns, {}, {}};
    inst.label = onto_.label_of(inst.id);
    onto_.individuals.emplace(inst.id, inst);
    add_terms(ElementKind::instance, inst.id, synonyms);
    return *this;
  }

  OntologyBuilder& relation(std::string_view subject, std::string_view predicate,
                            std::string_view object) {
    onto_.relations.insert(
        Relation::link(std::string(subject), predicate, std::string(object)));
    return *this;
  }

  /// Gives every domain concept without an identity transformation one
  /// named Transformation_<Concept>.
  OntologyBuilder& default_identities() {
    std::vector<ConceptId> missing;
    for (const auto& [name, c] : onto_.concepts) {
      if (c.ns == Namespace::domain && !onto_.identity_of(name)) missing.push_back(c);
    }
    for (const auto& c : missing) {
      transformation(Transformation::identity("Transformation_" + c.local_name, c));
    }
    return *this;
  }

  const Ontology& peek() const { return onto_; }
  Ontology build() const { return onto_; }

 private:
  void add_terms(ElementKind kind, const std::string& id,
                 std::initializer_list<std::string_view> synonyms) {
    onto_.lexicon.add(kind, id, id);
    onto_.lexicon.add(kind, text::split_identifier(id), id);
    if (auto it = onto_.labels.find(id); it != onto_.labels.end()) {
      onto_.lexicon.add(kind, it->second, id);
    }
    for (auto s : synonyms) onto_.lexicon.add(kind, s, id);
  }

  Ontology onto_;
};

}  // namespace oak
