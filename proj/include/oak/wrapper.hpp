#pragma once

// The knowledge wrapper: descriptor -> knowledge representation -> Turtle.
//
//   1. identify the model (task concept, algorithms)
//   2. identify the concepts of conditions, targets and context
//   3. generate one instance per concept, sharing the item suffix
//   4. link each instance to its transformation (identity by default)
//   5. turn descriptor values into states
//   6. attach dataset, evaluation, location, context and source, grade it

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "oak/assessment.hpp"
#include "oak/descriptor.hpp"
#include "oak/kmap.hpp"
#include "oak/publish.hpp"

namespace oak {

struct ModelStep {
  Task task;
  Instance kmap;
  std::vector<std::string> algorithms;  // transformation ids
};

struct ConceptBindings {
  std::vector<std::string> conditions;  // concept local names, descriptor order
  std::vector<std::string> targets;
  std::vector<std::string> context;
  std::vector<std::string> locations;  // named individuals
};

/// One condition or target instance as it moves through steps 3-5.
struct RoleInstance {
  Instance instance;
  const RoleSpec* spec = nullptr;  // null for generated cluster outputs
  bool is_target = false;
  std::string transformation;      // filled by step 4
};

struct WrapResult {
  KnowledgeRepresentation kr;
  Ontology ontology;  // input ontology plus any identity transformation created
  PatternKind pattern;
  PatternKind knowledge;
  GradeBreakdown grade;
};

namespace wrap_detail {

inline Instance make_instance(const Ontology& o, const std::string& concept_name,
                              const std::string& suffix, std::string id_stem = {}) {
  const auto* c = o.find_concept(concept_name);
  if (!c) throw Error(ErrorKind::undeclared_concept, concept_name + " is not declared", concept_name);
  Instance i;
  i.id = (id_stem.empty() ? concept_name : id_stem) + "_" + suffix;
  i.concept_id = *c;
  i.ns = c->ns;
  i.label = o.label_of(concept_name) + " " + suffix;
  return i;
}

inline PatternKind pattern_of(Task t) {
  switch (t) {
    case Task::classification: return PatternKind::classification;
    case Task::regression: return PatternKind::regression;
    case Task::clustering: return PatternKind::clustering;
    case Task::association: return PatternKind::association;
  }
  return PatternKind::classification;
}

}  // namespace wrap_detail

/// Checks the descriptor-level invariants before any lookup.
inline void check_descriptor(const Descriptor& d) {
  const auto task = parse_task(d.task);
  if (!task) throw Error(ErrorKind::invalid_task, "unknown task '" + d.task + "'", d.task);
  if (d.algorithms.empty()) throw Error(ErrorKind::invalid_descriptor, "at least one algorithm is required");
  if (d.conditions.empty()) throw Error(ErrorKind::invalid_descriptor, "at least one condition is required");
  if (*task == Task::clustering) {
    for (const auto& t : d.targets) {
      if (text::normalize_term(t.concept_term) != "cluster" || t.transformation || t.state) {
        throw Error(ErrorKind::invalid_descriptor,
                    "a clustering result predicts clusters and takes no target concepts or states");
      }
    }
  } else if (d.targets.empty()) {
    throw Error(ErrorKind::invalid_descriptor, "at least one target is required for " + d.task);
  }
}

/// Step 1.
inline ModelStep identify_model(const Descriptor& d, const Ontology& o, const std::string& suffix) {
  check_descriptor(d);
  ModelStep m;
  m.task = *parse_task(d.task);
  m.kmap = wrap_detail::make_instance(o, std::string(model_concept(m.task)), suffix);
  std::vector<std::string> unknown;
  for (const auto& name : d.algorithms) {
    auto id = o.lexicon.find(ElementKind::transformation, name);
    const auto* t = id ? o.find_transformation(*id) : nullptr;
    if (!t || t->kind != TransformKind::algorithm_ref || t->algorithm_task != m.task) {
      unknown.push_back(name);
      continue;
    }
    if (std::find(m.algorithms.begin(), m.algorithms.end(), *id) == m.algorithms.end()) {
      m.algorithms.push_back(*id);
    }
  }
  if (!unknown.empty()) throw TermListError(ErrorKind::unknown_algorithm, unknown);
  return m;
}

/// Step 2. Every unresolved term is reported in one error.
inline ConceptBindings identify_concepts(const Descriptor& d, const Ontology& o) {
  ConceptBindings b;
  std::vector<std::string> unresolved;
  auto concept_of = [&](const std::string& term, std::vector<std::string>& out) {
    auto id = o.lexicon.find(ElementKind::concept_, term);
    if (!id) {
      unresolved.push_back(term);
      return;
    }
    if (std::find(out.begin(), out.end(), *id) != out.end()) {
      throw Error(ErrorKind::invalid_descriptor, "concept " + *id + " is listed twice", *id);
    }
    out.push_back(*id);
  };
  for (const auto& c : d.conditions) concept_of(c.concept_term, b.conditions);
  if (parse_task(d.task) != Task::clustering) {
    for (const auto& t : d.targets) concept_of(t.concept_term, b.targets);
  }
  for (const auto& c : d.context) concept_of(c, b.context);
  for (const auto& l : d.locations) {
    auto id = o.lexicon.find(ElementKind::instance, l);
    if (!id || !o.find_individual(*id)) {
      unresolved.push_back(l);
    } else if (std::find(b.locations.begin(), b.locations.end(), *id) == b.locations.end()) {
      b.locations.push_back(*id);
    }
  }
  if (!unresolved.empty()) throw TermListError(ErrorKind::unresolved_concepts, unresolved);
  for (const auto& t : b.targets) {
    if (std::find(b.conditions.begin(), b.conditions.end(), t) != b.conditions.end()) {
      throw Error(ErrorKind::invalid_descriptor, t + " is both a condition and a target", t);
    }
  }
  for (const auto* group : {&b.conditions, &b.targets}) {
    for (const auto& c : *group) {
      if (o.find_concept(c)->ns != Namespace::domain) {
        throw Error(ErrorKind::invalid_descriptor, c + " is not a domain concept", c);
      }
    }
  }
  return b;
}

/// Step 3.
inline std::vector<RoleInstance> generate_instances(const Descriptor& d, const ConceptBindings& b,
                                                    const ModelStep& m, const Ontology& o,
                                                    std::set<Relation>& relations) {
  const auto suffix = instance_suffix(m.kmap.id);
  std::vector<RoleInstance> out;
  for (std::size_t i = 0; i < b.conditions.size(); ++i) {
    RoleInstance r{wrap_detail::make_instance(o, b.conditions[i], suffix), &d.conditions[i], false, {}};
    relations.insert(Relation::link(m.kmap.id, vocab::kHasCondition, r.instance.id));
    out.push_back(std::move(r));
  }
  if (m.task == Task::clustering) {
    RoleInstance r{wrap_detail::make_instance(o, "Cluster", suffix), nullptr, true, {}};
    relations.insert(Relation::link(m.kmap.id, vocab::kPredicts, r.instance.id));
    out.push_back(std::move(r));
  } else {
    for (std::size_t i = 0; i < b.targets.size(); ++i) {
      RoleInstance r{wrap_detail::make_instance(o, b.targets[i], suffix), &d.targets[i], true, {}};
      relations.insert(Relation::link(m.kmap.id, vocab::kPredicts, r.instance.id));
      out.push_back(std::move(r));
    }
  }
  for (const auto& r : out) {
    relations.insert(Relation::link(r.instance.id, vocab::kIsA, r.instance.concept_id.local_name));
  }
  return out;
}

/// Step 4. Returns the ontology extended with any identity transformation
/// that had to be created.
inline Ontology identify_transformations(std::vector<RoleInstance>& roles, const ModelStep& m,
                                         Ontology o, std::set<Relation>& relations) {
  std::vector<std::string> unresolved;
  for (auto& r : roles) {
    const auto& concept_name = r.instance.concept_id.local_name;
    if (!r.spec) continue;  // cluster outputs carry no transformation
    // Association rules only carry a transformation when one is named.
    if (m.task == Task::association && r.is_target && !r.spec->transformation) continue;
    if (r.spec->transformation) {
      auto id = o.lexicon.find(ElementKind::transformation, *r.spec->transformation);
      if (!id) {
        // Accept the short "Tier3" style relative to the concept.
        id = o.lexicon.find(ElementKind::transformation, concept_name + "_" + *r.spec->transformation);
      }
      if (!id || !o.has_transformation_link(concept_name, *id)) {
        unresolved.push_back(*r.spec->transformation);
        continue;
      }
      r.transformation = *id;
    } else if (auto ident = o.identity_of(concept_name)) {
      r.transformation = *ident;
    } else {
      auto t = Transformation::identity("Transformation_" + concept_name, r.instance.concept_id);
      o = attach_transformation(o, concept_name, t);
      r.transformation = t.id;
    }
    relations.insert(Relation::link(r.instance.id, vocab::kHasTransformation, r.transformation));
  }
  if (!unresolved.empty()) throw TermListError(ErrorKind::unresolved_transformation, unresolved);
  return o;
}

/// Value a descriptor state takes under a transformation.
inline Scalar state_value(const Transformation& t, const StateInput& s, const std::string& owner) {
  if (const auto* label = std::get_if<std::string>(&s.value)) {
    if (t.kind == TransformKind::piecewise_tiers) {
      for (const auto& tier : t.tiers) {
        if (text::normalize_term(tier.label) == text::normalize_term(*label)) return Label{tier.label};
      }
    }
    // A number written as text is still a number.
    if (auto x = text::parse_double(*label)) return state_value(t, StateInput{*x, s.unit}, owner);
    throw Error(ErrorKind::invalid_state,
                "'" + *label + "' is not a state of " + t.id + " for " + owner, *label);
  }
  const double x = std::get<double>(s.value);
  Scalar v;
  try {
    v = apply_transformation(t, x);
  } catch (const Error& e) {
    throw Error(ErrorKind::invalid_state, std::string(e.what()) + " (" + owner + ")", owner);
  }
  if (auto* q = std::get_if<Quantity>(&v); q && !s.unit.empty()) {
    if (!q->unit.empty() && q->unit != s.unit) {
      throw Error(ErrorKind::invalid_state,
                  owner + " is measured in " + q->unit + ", not " + s.unit, owner);
    }
    q->unit = s.unit;
  }
  return v;
}

/// Step 5.
inline std::vector<StateValue> generate_states(const std::vector<RoleInstance>& roles,
                                               const Ontology& o, std::set<Relation>& relations) {
  std::vector<StateValue> out;
  for (const auto& r : roles) {
    if (!r.spec || !r.spec->state) continue;
    if (r.transformation.empty()) {
      throw Error(ErrorKind::invalid_state, r.instance.id + " has a state but no transformation",
                  r.instance.id);
    }
    const auto* t = o.find_transformation(r.transformation);
    auto value = state_value(*t, *r.spec->state, r.instance.id);
    relations.insert(Relation::state(r.instance.id, value));
    out.push_back({r.instance.id, r.transformation, value});
  }
  return out;
}

/// Steps 1-6 without the import threshold.
inline WrapResult assemble(const Descriptor& d, const Ontology& ontology, std::uint64_t item) {
  const auto suffix = item_suffix(d.item.value_or(item));
  WrapResult res;
  auto& kr = res.kr;

  const auto model = identify_model(d, ontology, suffix);
  const auto bindings = identify_concepts(d, ontology);
  kr.id = model.kmap.id;
  res.pattern = wrap_detail::pattern_of(model.task);
  res.knowledge = knowledge_kind(d);

  std::vector<Instance> instances{model.kmap};
  kr.relations.insert(Relation::link(model.kmap.id, vocab::kIsA, model.kmap.concept_id.local_name));
  for (const auto& a : model.algorithms) {
    kr.relations.insert(Relation::link(model.kmap.id, vocab::kHasAlgorithm, a));
    kr.transformations.insert(a);
  }

  auto roles = generate_instances(d, bindings, model, ontology, kr.relations);
  res.ontology = identify_transformations(roles, model, ontology, kr.relations);
  const auto& o = res.ontology;
  kr.states = generate_states(roles, o, kr.relations);
  for (const auto& r : roles) {
    instances.push_back(r.instance);
    if (!r.transformation.empty()) kr.transformations.insert(r.transformation);
  }

  // Step 6: extended roles.
  if (d.dataset) {
    auto ds = wrap_detail::make_instance(o, "Dataset", suffix);
    ds.label = d.dataset->name;
    if (d.dataset->size) ds.attributes.push_back({std::string(vocab::kDatasetSize), *d.dataset->size});
    kr.relations.insert(Relation::link(kr.id, vocab::kHasDataset, ds.id));
    kr.relations.insert(Relation::link(ds.id, vocab::kIsA, "Dataset"));
    instances.push_back(ds);
  }
  std::vector<std::string> unknown_metrics;
  for (std::size_t i = 0; i < d.evaluation.size(); ++i) {
    const auto& e = d.evaluation[i];
    auto id = o.lexicon.find(ElementKind::transformation, e.metric);
    if (!id || !o.has_transformation_link("Evaluation", *id)) {
      unknown_metrics.push_back(e.metric);
      continue;
    }
    auto ev = wrap_detail::make_instance(o, "Evaluation", suffix,
                                         i == 0 ? "Evaluation" : "Evaluation" + std::to_string(i + 1));
    const auto value = state_value(*o.find_transformation(*id), StateInput{e.value, ""}, ev.id);
    kr.relations.insert(Relation::link(kr.id, vocab::kEvaluatedBy, ev.id));
    kr.relations.insert(Relation::link(ev.id, vocab::kIsA, "Evaluation"));
    kr.relations.insert(Relation::link(ev.id, vocab::kHasEvaluationMetric, *id));
    kr.relations.insert(Relation::state(ev.id, value));
    kr.transformations.insert(*id);
    kr.states.push_back({ev.id, *id, value});
    instances.push_back(ev);
  }
  if (!unknown_metrics.empty()) throw TermListError(ErrorKind::unresolved_transformation, unknown_metrics);
  for (const auto& l : bindings.locations) kr.relations.insert(Relation::link(kr.id, vocab::kHasLocation, l));
  for (const auto& c : bindings.context) kr.relations.insert(Relation::link(kr.id, vocab::kRelatedTo, c));
  if (d.source) {
    auto art = wrap_detail::make_instance(o, "Article", suffix);
    art.attributes.push_back({std::string(vocab::kIdentifier), d.source->id});
    if (d.source->title) art.attributes.push_back({std::string(vocab::kTitle), *d.source->title});
    if (d.source->year) art.attributes.push_back({std::string(vocab::kYear), *d.source->year});
    std::sort(art.attributes.begin(), art.attributes.end());
    kr.relations.insert(Relation::link(kr.id, vocab::kDefinedIn, art.id));
    kr.relations.insert(Relation::link(art.id, vocab::kIsA, "Article"));
    instances.push_back(art);
  }

  std::sort(instances.begin(), instances.end(),
            [](const Instance& a, const Instance& b) { return a.id < b.id; });
  kr.instances = std::move(instances);
  std::sort(kr.states.begin(), kr.states.end());

  res.grade = grade(d);
  kr.grade = res.grade.total;

  if (auto problems = validate_representation(kr, o); !problems.empty()) {
    throw Error(ErrorKind::inconsistent_input, problems.front());
  }
  return res;
}

/// Full wrapper: assemble and refuse items graded below the import threshold.
inline WrapResult wrap(const Descriptor& d, const Ontology& ontology, std::uint64_t item) {
  auto res = assemble(d, ontology, item);
  if (!res.grade.accepted) {
    throw Error(ErrorKind::below_threshold,
                res.kr.id + " grades " + std::to_string(res.grade.total) + ", below " +
                    std::to_string(kImportThreshold),
                std::to_string(res.grade.total));
  }
  return res;
}

/// Step 6 output.
inline std::string to_turtle(const KnowledgeRepresentation& kr) { return publish::kr_turtle(kr); }

}  // namespace oak
