#pragma once

// Mapping between the knowledge model and RDF: ontology elements publish
// under AgriComO, knowledge-map instances under AgriKMaps.

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "oak/kmap.hpp"
#include "oak/rdf/store.hpp"

namespace oak::publish {

using rdf::Term;
using rdf::Triple;

inline Term type_iri() { return Term::iri(vocab::rdf("type")); }
inline Term label_iri() { return Term::iri(vocab::rdfs("label")); }
inline Term onto_iri(std::string_view local) { return Term::iri(vocab::agricomo(local)); }
inline Term kmap_iri(std::string_view local) { return Term::iri(vocab::agrikmaps(local)); }

/// Literal-valued properties written on instances and transformations.
inline constexpr std::string_view kLiteralProperties[] = {
    vocab::kGrade,       vocab::kHasUnit,            vocab::kIdentifier,
    vocab::kTitle,       vocab::kYear,               vocab::kDatasetSize,
    vocab::kTransformationKind, vocab::kAlgorithmTask, vocab::kHasTier,
};

inline bool is_literal_property(std::string_view name) {
  return std::find(std::begin(kLiteralProperties), std::end(kLiteralProperties), name) !=
         std::end(kLiteralProperties);
}

inline Term scalar_literal(const Scalar& s) {
  if (const auto* q = std::get_if<Quantity>(&s)) return Term::decimal(q->value);
  return Term::literal(std::get<Label>(s).text);
}

inline Term attribute_literal(const Attribute& a) {
  return std::visit(
      [](const auto& v) -> Term {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, std::string>) return Term::literal(v);
        else if constexpr (std::is_same_v<V, std::int64_t>) return Term::integer(v);
        else return Term::decimal(v);
      },
      a.value);
}

inline std::string_view transformation_class(const Transformation& t) {
  if (t.kind == TransformKind::algorithm_ref) return vocab::kComputingAlgorithm;
  if (t.subject.local_name == "Evaluation") return vocab::kEvaluationMetric;
  return vocab::kDataTransformation;
}

/// Triples describing the ontology itself: classes, hierarchy,
/// transformations, named individuals, domain relations and properties.
inline std::vector<Triple> ontology_triples(const Ontology& o) {
  std::vector<Triple> out;
  const auto owl_class = Term::iri(vocab::owl("Class"));
  const auto named = Term::iri(vocab::owl("NamedIndividual"));
  for (const auto& [name, c] : o.concepts) {
    out.push_back({onto_iri(name), type_iri(), owl_class});
    out.push_back({onto_iri(name), label_iri(), Term::literal(o.label_of(name))});
  }
  for (const auto& r : o.relations) {
    const auto* obj = r.object_id();
    if (!obj) continue;
    out.push_back({onto_iri(r.subject), Term::iri(vocab::relation_iri(r.predicate)), onto_iri(*obj)});
  }
  for (const auto& [id, t] : o.transformations) {
    const auto s = onto_iri(id);
    out.push_back({s, type_iri(), named});
    out.push_back({s, type_iri(), onto_iri(transformation_class(t))});
    out.push_back({s, label_iri(), Term::literal(o.label_of(id))});
    out.push_back({s, onto_iri(vocab::kTransformationKind), Term::literal(std::string(to_string(t.kind)))});
    for (const auto& tier : t.tiers) {
      out.push_back({s, onto_iri(vocab::kHasTier), Term::literal(tier.label)});
    }
    if (t.algorithm_task) {
      out.push_back({s, onto_iri(vocab::kAlgorithmTask),
                     Term::literal(std::string(to_string(*t.algorithm_task)))});
    }
    if (!t.unit.empty()) out.push_back({s, onto_iri(vocab::kHasUnit), Term::literal(t.unit)});
  }
  for (const auto& [id, inst] : o.individuals) {
    out.push_back({onto_iri(id), type_iri(), named});
    out.push_back({onto_iri(id), type_iri(), onto_iri(inst.concept_id.local_name)});
    out.push_back({onto_iri(id), label_iri(), Term::literal(inst.label)});
  }
  for (auto r : vocab::kRelationVocabulary) {
    if (r == vocab::kIsA || r == vocab::kSubClassOf) continue;
    out.push_back({Term::iri(vocab::relation_iri(r)), type_iri(), Term::iri(vocab::owl("ObjectProperty"))});
  }
  return out;
}

/// IRI of an element referenced from a knowledge representation.
inline Term element_iri(const KnowledgeRepresentation& kr, const std::string& id) {
  return kr.find_instance(id) ? kmap_iri(id) : onto_iri(id);
}

/// RDF form of a knowledge representation.
inline std::vector<Triple> kr_triples(const KnowledgeRepresentation& kr) {
  std::vector<Triple> out;
  const auto named = Term::iri(vocab::owl("NamedIndividual"));
  for (const auto& inst : kr.instances) {
    const auto s = kmap_iri(inst.id);
    out.push_back({s, type_iri(), named});
    out.push_back({s, type_iri(), onto_iri(inst.concept_id.local_name)});
    if (inst.id == kr.id) out.push_back({s, type_iri(), onto_iri(vocab::kKnowledgeModel)});
    if (!inst.label.empty()) out.push_back({s, label_iri(), Term::literal(inst.label)});
    for (const auto& a : inst.attributes) {
      out.push_back({s, onto_iri(a.property), attribute_literal(a)});
    }
  }
  for (const auto& r : kr.relations) {
    const auto s = kmap_iri(r.subject);
    const auto p = Term::iri(vocab::relation_iri(r.predicate));
    if (const auto* o = r.object_id()) {
      out.push_back({s, p, element_iri(kr, *o)});
    } else {
      const auto& value = std::get<Scalar>(r.object);
      out.push_back({s, p, scalar_literal(value)});
      if (const auto* q = std::get_if<Quantity>(&value); q && !q->unit.empty()) {
        out.push_back({s, onto_iri(vocab::kHasUnit), Term::literal(q->unit)});
      }
    }
  }
  out.push_back({kmap_iri(kr.id), onto_iri(vocab::kGrade), Term::integer(kr.grade)});
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline std::string kr_turtle(const KnowledgeRepresentation& kr) {
  return rdf::to_turtle(kr_triples(kr), vocab::standard_prefixes());
}

namespace detail {

inline std::optional<std::string> local_in(const Term& t, std::string_view ns) {
  if (!t.is_iri() || t.value.size() <= ns.size() || t.value.compare(0, ns.size(), ns) != 0) {
    return std::nullopt;
  }
  return t.value.substr(ns.size());
}

}  // namespace detail

/// Rebuilds the knowledge representation rooted at `kmap_id` from the store:
/// the knowledge-model instance, every AgriKMaps instance it links to, and
/// the instances those link to in turn. Throws not-found when the id has no
/// triples.
inline KnowledgeRepresentation extract_representation(const rdf::TripleStore& store,
                                                      const std::string& kmap_id,
                                                      const Ontology& ontology) {
  KnowledgeRepresentation kr;
  kr.id = kmap_id;
  if (store.count(kmap_iri(kmap_id), std::nullopt, std::nullopt) == 0) {
    throw Error(ErrorKind::not_found, "no knowledge item " + kmap_id, kmap_id);
  }

  std::vector<std::string> queue{kmap_id};
  std::set<std::string> seen{kmap_id};
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    for (const auto& t : store.match(kmap_iri(queue[qi]), std::nullopt, std::nullopt)) {
      if (auto local = detail::local_in(t.o, vocab::kAgriKMaps); local && seen.insert(*local).second) {
        queue.push_back(*local);
      }
    }
  }

  std::set<std::string> all_ids(queue.begin(), queue.end());
  for (const auto& id : all_ids) {
    Instance inst;
    inst.id = id;
    std::vector<std::string> types;
    std::optional<Quantity> quantity;
    std::string unit;
    std::optional<std::string> label_state;
    for (const auto& t : store.match(kmap_iri(id), std::nullopt, std::nullopt)) {
      if (t.p == type_iri()) {
        if (auto c = detail::local_in(t.o, vocab::kAgriComO)) types.push_back(*c);
        continue;
      }
      if (t.p == label_iri()) {
        inst.label = t.o.value;
        continue;
      }
      const auto pred = detail::local_in(t.p, vocab::kAgriComO);
      if (!pred) continue;
      if (*pred == vocab::kGrade && id == kmap_id) {
        kr.grade = static_cast<int>(text::parse_int(t.o.value).value_or(0));
        continue;
      }
      if (*pred == vocab::kHasUnit) {
        unit = t.o.value;
        continue;
      }
      if (*pred == vocab::kHasState) {
        if (t.o.datatype == rdf::Datatype::string) {
          label_state = t.o.value;
        } else {
          quantity = Quantity{t.o.number().value_or(0), ""};
        }
        continue;
      }
      if (is_literal_property(*pred) && t.o.is_literal()) {
        Attribute a{*pred, std::string()};
        if (t.o.datatype == rdf::Datatype::integer) a.value = text::parse_int(t.o.value).value_or(0);
        else if (t.o.datatype == rdf::Datatype::decimal) a.value = t.o.number().value_or(0);
        else a.value = t.o.value;
        inst.attributes.push_back(std::move(a));
        continue;
      }
      if (!vocab::is_relation(*pred) || !t.o.is_iri()) continue;
      std::string obj;
      if (auto l = detail::local_in(t.o, vocab::kAgriKMaps)) obj = *l;
      else if (auto l2 = detail::local_in(t.o, vocab::kAgriComO)) obj = *l2;
      else continue;
      kr.relations.insert(Relation::link(id, *pred, obj));
    }
    std::sort(inst.attributes.begin(), inst.attributes.end());
    // The concept is the most specific AgriComO type that is not the
    // knowledge-model marker.
    std::string concept_name;
    for (const auto& t : types) {
      if (t == vocab::kKnowledgeModel && types.size() > 1) continue;
      concept_name = t;
    }
    if (const auto* c = ontology.find_concept(concept_name)) {
      inst.concept_id = *c;
      inst.ns = c->ns;
    } else {
      inst.concept_id = ConceptId{concept_name, Namespace::domain};
    }
    kr.relations.insert(Relation::link(id, vocab::kIsA, concept_name));
    if (quantity) {
      quantity->unit = unit;
      kr.relations.insert(Relation::state(id, *quantity));
    } else if (label_state) {
      kr.relations.insert(Relation::state(id, Label{*label_state}));
    }
    kr.instances.push_back(std::move(inst));
  }

  for (const auto& r : kr.relations) {
    const auto* o = r.object_id();
    if (!o) continue;
    if (r.predicate == vocab::kHasAlgorithm || is_transformation_link(r.predicate)) {
      kr.transformations.insert(*o);
    }
  }
  for (const auto& r : kr.relations) {
    if (r.predicate != vocab::kHasState) continue;
    for (const auto& link : kr.relations) {
      if (link.subject == r.subject && is_transformation_link(link.predicate)) {
        kr.states.push_back({r.subject, *link.object_id(), std::get<Scalar>(r.object)});
      }
    }
  }
  std::sort(kr.states.begin(), kr.states.end());
  return kr;
}

/// Ids of the knowledge-model instances in the store, in term order.
inline std::vector<std::string> kmap_ids(const rdf::TripleStore& store) {
  std::vector<std::string> out;
  for (const auto& t : store.match(std::nullopt, type_iri(), onto_iri(vocab::kKnowledgeModel))) {
    if (auto l = detail::local_in(t.s, vocab::kAgriKMaps)) out.push_back(*l);
  }
  return out;
}

}  // namespace oak::publish
