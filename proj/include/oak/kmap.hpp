#pragma once

// Knowledge map core: concepts, transformations, instances, states,
// relations, ontology, lexicon and knowledge representations.

#include <algorithm>
#include <array>
#include <cmath>
#include <compare>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <fmt/format.h>

#include "oak/error.hpp"
#include "oak/text.hpp"
#include "oak/vocabulary.hpp"

namespace oak {

enum class Namespace { domain, computing };

constexpr std::string_view to_string(Namespace ns) {
  return ns == Namespace::domain ? "domain" : "computing";
}

/// Both concept namespaces publish under AgriComO; knowledge-map instances
/// publish under AgriKMaps.
inline std::string_view prefix_for(Namespace) { return "AgriComO"; }

enum class Task { classification, regression, clustering, association };

constexpr std::string_view to_string(Task task) {
  switch (task) {
    case Task::classification: return "classification";
    case Task::regression: return "regression";
    case Task::clustering: return "clustering";
    case Task::association: return "association";
  }
  return "";
}

inline std::optional<Task> parse_task(std::string_view s) {
  const auto n = text::normalize_term(s);
  if (n == "classification") return Task::classification;
  if (n == "regression") return Task::regression;
  if (n == "clustering") return Task::clustering;
  if (n == "association" || n == "association rule") return Task::association;
  return std::nullopt;
}

/// Computing concept whose instances carry a mined model of the given task.
constexpr std::string_view model_concept(Task task) {
  switch (task) {
    case Task::classification: return "Classifier";
    case Task::regression: return "Regressor";
    case Task::clustering: return "Clustering";
    case Task::association: return "Association";
  }
  return "";
}

inline std::optional<Task> task_of_model_concept(std::string_view concept_name) {
  for (auto t : {Task::classification, Task::regression, Task::clustering, Task::association}) {
    if (model_concept(t) == concept_name) return t;
  }
  return std::nullopt;
}

struct ConceptId {
  std::string local_name;
  Namespace ns = Namespace::domain;

  static ConceptId make(std::string local_name, Namespace ns) {
    if (!text::is_identifier(local_name)) {
      throw Error(ErrorKind::invalid_element, "invalid concept name '" + local_name + "'",
                  local_name);
    }
    return ConceptId{std::move(local_name), ns};
  }

  auto operator<=>(const ConceptId&) const = default;
};

// ---------------------------------------------------------------------------
// Transformations

/// Real interval with explicit openness per bound. Infinite bounds are open.
struct Interval {
  double lower = -std::numeric_limits<double>::infinity();
  double upper = std::numeric_limits<double>::infinity();
  bool lower_closed = false;
  bool upper_closed = false;

  static Interval all() { return {}; }
  static Interval closed(double lo, double hi) { return {lo, hi, true, true}; }
  static Interval point(double v) { return {v, v, true, true}; }

  bool contains(double x) const {
    if (std::isnan(x)) return false;
    const bool above = lower_closed ? x >= lower : x > lower;
    const bool below = upper_closed ? x <= upper : x < upper;
    return above && below;
  }

  bool empty() const {
    if (lower > upper) return true;
    if (lower == upper) return !(lower_closed && upper_closed);
    return false;
  }

  auto operator<=>(const Interval&) const = default;
};

struct Tier {
  Interval range;
  std::string label;
  auto operator<=>(const Tier&) const = default;
};

struct Rescale {
  Interval source;
  Interval target;
  auto operator<=>(const Rescale&) const = default;
};

enum class TransformKind { identity, piecewise_tiers, linear_rescale, algorithm_ref };

constexpr std::string_view to_string(TransformKind kind) {
  switch (kind) {
    case TransformKind::identity: return "identity";
    case TransformKind::piecewise_tiers: return "piecewise-tiers";
    case TransformKind::linear_rescale: return "linear-rescale";
    case TransformKind::algorithm_ref: return "algorithm-ref";
  }
  return "";
}

struct Transformation {
  std::string id;
  TransformKind kind = TransformKind::identity;
  ConceptId subject;
  std::vector<Tier> tiers;
  std::optional<Rescale> rescale;
  std::optional<Task> algorithm_task;
  Interval domain;    // accepted inputs of an identity transformation
  std::string unit;   // unit of identity outputs, may be empty
  std::string label;  // human-readable name, may be empty

  static Transformation identity(std::string id, ConceptId subject, Interval domain = {},
                                 std::string unit = {}) {
    Transformation t;
    t.id = std::move(id);
    t.kind = TransformKind::identity;
    t.subject = std::move(subject);
    t.domain = domain;
    t.unit = std::move(unit);
    return t;
  }

  static Transformation piecewise(std::string id, ConceptId subject, std::vector<Tier> tiers) {
    Transformation t;
    t.id = std::move(id);
    t.kind = TransformKind::piecewise_tiers;
    t.subject = std::move(subject);
    t.tiers = std::move(tiers);
    return t;
  }

  static Transformation linear(std::string id, ConceptId subject, Interval source,
                               Interval target) {
    Transformation t;
    t.id = std::move(id);
    t.kind = TransformKind::linear_rescale;
    t.subject = std::move(subject);
    t.rescale = Rescale{source, target};
    return t;
  }

  static Transformation algorithm(std::string id, ConceptId subject, Task task) {
    Transformation t;
    t.id = std::move(id);
    t.kind = TransformKind::algorithm_ref;
    t.subject = std::move(subject);
    t.algorithm_task = task;
    return t;
  }

  /// Interval of inputs the transformation accepts.
  Interval declared_domain() const {
    switch (kind) {
      case TransformKind::piecewise_tiers:
        if (tiers.empty()) return Interval{0, 0, false, false};
        return Interval{tiers.front().range.lower, tiers.back().range.upper,
                        tiers.front().range.lower_closed, tiers.back().range.upper_closed};
      case TransformKind::linear_rescale:
        return rescale ? rescale->source : Interval{};
      default:
        return domain;
    }
  }

  std::vector<std::string> tier_labels() const {
    std::vector<std::string> out;
    for (const auto& t : tiers) out.push_back(t.label);
    return out;
  }

  bool has_tier_label(std::string_view label) const {
    return std::any_of(tiers.begin(), tiers.end(),
                       [&](const Tier& t) { return t.label == label; });
  }

  /// Structural problems; empty when the transformation is well formed.
  std::vector<std::string> violations() const {
    std::vector<std::string> out;
    if (!text::is_identifier(id)) out.push_back("invalid transformation id '" + id + "'");
    const bool want_tiers = kind == TransformKind::piecewise_tiers;
    if (want_tiers != !tiers.empty()) out.push_back(id + ": tiers present iff piecewise-tiers");
    if ((kind == TransformKind::linear_rescale) != rescale.has_value()) {
      out.push_back(id + ": rescale present iff linear-rescale");
    }
    if ((kind == TransformKind::algorithm_ref) != algorithm_task.has_value()) {
      out.push_back(id + ": algorithm task present iff algorithm-ref");
    }
    if (kind == TransformKind::algorithm_ref && subject.ns != Namespace::computing) {
      out.push_back(id + ": algorithm transformations attach to computing concepts");
    }
    for (std::size_t i = 0; i < tiers.size(); ++i) {
      const auto& r = tiers[i].range;
      if (r.empty()) out.push_back(id + ": tier '" + tiers[i].label + "' is empty");
      if ((std::isinf(r.lower) && r.lower_closed) || (std::isinf(r.upper) && r.upper_closed)) {
        out.push_back(id + ": infinite tier bounds must be open");
      }
      if (i == 0) continue;
      const auto& prev = tiers[i - 1].range;
      // Adjacent tiers must meet at one point owned by exactly one side.
      if (prev.upper != r.lower || prev.upper_closed == r.lower_closed) {
        out.push_back(id + ": tiers '" + tiers[i - 1].label + "' and '" + tiers[i].label +
                      "' are not contiguous and disjoint");
      }
    }
    if (rescale && (rescale->source.empty() || rescale->source.lower == rescale->source.upper ||
                    std::isinf(rescale->source.lower) || std::isinf(rescale->source.upper) ||
                    std::isinf(rescale->target.lower) || std::isinf(rescale->target.upper))) {
      out.push_back(id + ": rescale ranges must be finite and non-degenerate");
    }
    return out;
  }

  bool operator==(const Transformation&) const = default;
};

// ---------------------------------------------------------------------------
// States and relations

struct Quantity {
  double value = 0;
  std::string unit;
  auto operator<=>(const Quantity&) const = default;
};

struct Label {
  std::string text;
  auto operator<=>(const Label&) const = default;
};

using Scalar = std::variant<Quantity, Label>;

inline std::string to_string(const Scalar& s) {
  if (const auto* q = std::get_if<Quantity>(&s)) {
    auto out = text::format_decimal(q->value);
    if (!q->unit.empty()) out += " " + q->unit;
    return out;
  }
  return std::get<Label>(s).text;
}

/// Value a transformation produces for `x`.
inline Scalar apply_transformation(const Transformation& t, double x) {
  switch (t.kind) {
    case TransformKind::identity:
      if (!t.domain.contains(x)) {
        throw Error(ErrorKind::out_of_domain, fmt::format("{} outside the domain of {}", x, t.id));
      }
      return Quantity{x, t.unit};
    case TransformKind::piecewise_tiers:
      for (const auto& tier : t.tiers) {
        if (tier.range.contains(x)) return Label{tier.label};
      }
      throw Error(ErrorKind::out_of_domain, fmt::format("{} falls in no tier of {}", x, t.id));
    case TransformKind::linear_rescale: {
      const auto& r = *t.rescale;
      if (!r.source.contains(x)) {
        throw Error(ErrorKind::out_of_domain, fmt::format("{} outside the source range of {}", x, t.id));
      }
      const double u = (x - r.source.lower) / (r.source.upper - r.source.lower);
      return Quantity{r.target.lower + u * (r.target.upper - r.target.lower), ""};
    }
    case TransformKind::algorithm_ref:
      break;
  }
  throw Error(ErrorKind::invalid_state, t.id + " is an algorithm and maps no values");
}

struct StateValue {
  std::string owner;  // instance id
  std::string via;    // transformation id
  Scalar value;
  auto operator<=>(const StateValue&) const = default;
};

using RelationObject = std::variant<std::string, Scalar>;

struct Relation {
  std::string subject;
  std::string predicate;
  RelationObject object;

  static Relation link(std::string s, std::string_view p, std::string o) {
    return Relation{std::move(s), std::string(p), RelationObject{std::move(o)}};
  }
  static Relation state(std::string s, Scalar value) {
    return Relation{std::move(s), std::string(vocab::kHasState), RelationObject{std::move(value)}};
  }

  const std::string* object_id() const { return std::get_if<std::string>(&object); }

  auto operator<=>(const Relation&) const = default;
};

/// Literal-valued annotation on an instance (title, year, dataset size...).
struct Attribute {
  std::string property;
  std::variant<std::string, std::int64_t, double> value;
  auto operator<=>(const Attribute&) const = default;
};

struct Instance {
  std::string id;
  ConceptId concept_id;
  Namespace ns = Namespace::domain;
  std::string label;
  std::vector<Attribute> attributes;

  bool operator==(const Instance&) const = default;
};

/// "010" for 10; at least three digits.
inline std::string item_suffix(std::uint64_t n) { return fmt::format("{:03}", n); }

/// ConceptLocalName_nnn with a zero-padded 3+ digit counter.
inline bool is_instance_id(std::string_view id) {
  const auto us = id.rfind('_');
  if (us == std::string_view::npos || us == 0) return false;
  const auto digits = id.substr(us + 1);
  if (digits.size() < 3) return false;
  if (!std::all_of(digits.begin(), digits.end(), text::is_ascii_digit)) return false;
  return text::is_identifier(id.substr(0, us));
}

inline std::string instance_suffix(std::string_view id) {
  const auto us = id.rfind('_');
  return us == std::string_view::npos ? std::string() : std::string(id.substr(us + 1));
}

// ---------------------------------------------------------------------------
// Lexicon

enum class ElementKind { concept_, instance, relation, transformation, state_label };

constexpr std::string_view to_string(ElementKind k) {
  switch (k) {
    case ElementKind::concept_: return "concept";
    case ElementKind::instance: return "instance";
    case ElementKind::relation: return "relation";
    case ElementKind::transformation: return "transformation";
    case ElementKind::state_label: return "state-label";
  }
  return "";
}

inline constexpr std::array<ElementKind, 5> kElementKinds = {
    ElementKind::concept_, ElementKind::instance, ElementKind::relation,
    ElementKind::transformation, ElementKind::state_label};

/// Surface terms to element ids, one table per element kind. A normalized
/// term maps to at most one element within a partition.
class Lexicon {
 public:
  void add(ElementKind kind, std::string_view surface, const std::string& id) {
    const auto key = text::normalize_term(surface);
    if (key.empty()) return;
    auto& part = partitions_[index(kind)];
    auto [it, inserted] = part.emplace(key, id);
    if (!inserted && it->second != id) {
      throw Error(ErrorKind::invalid_element,
                  fmt::format("lexicon term '{}' already maps to {} ({})", key, it->second,
                              to_string(kind)),
                  key);
    }
    words_ = std::max(words_, 1 + static_cast<std::size_t>(std::count(key.begin(), key.end(), ' ')));
  }

  std::optional<std::string> find(ElementKind kind, std::string_view surface) const {
    const auto& part = partitions_[index(kind)];
    auto it = part.find(text::normalize_term(surface));
    if (it == part.end()) return std::nullopt;
    return it->second;
  }

  const std::map<std::string, std::string>& entries(ElementKind kind) const {
    return partitions_[index(kind)];
  }

  std::vector<std::string> terms_of(ElementKind kind, std::string_view id) const {
    std::vector<std::string> out;
    for (const auto& [term, target] : partitions_[index(kind)]) {
      if (target == id) out.push_back(term);
    }
    return out;
  }

  /// Longest entry length in words, bounds span search.
  std::size_t max_words() const { return words_; }

 private:
  static std::size_t index(ElementKind k) { return static_cast<std::size_t>(k); }

  std::array<std::map<std::string, std::string>, 5> partitions_;
  std::size_t words_ = 0;
};

inline std::string resolve_term(const Lexicon& lexicon, std::string_view surface,
                                ElementKind kind) {
  if (text::normalize_term(surface).empty()) {
    throw Error(ErrorKind::no_match, "empty term");
  }
  auto hit = lexicon.find(kind, surface);
  if (!hit) {
    throw Error(ErrorKind::no_match,
                fmt::format("'{}' is not a known {}", surface, to_string(kind)),
                std::string(surface));
  }
  return *hit;
}

// ---------------------------------------------------------------------------
// Ontology

struct Ontology {
  std::map<std::string, ConceptId> concepts;  // by local name
  std::set<Relation> relations;
  std::map<std::string, Transformation> transformations;
  std::map<std::string, Instance> individuals;  // named individuals (countries...)
  Lexicon lexicon;
  std::map<std::string, std::string> prefixes = vocab::standard_prefixes();
  std::map<std::string, std::string> labels;  // display label per element id

  const ConceptId* find_concept(std::string_view local) const {
    auto it = concepts.find(std::string(local));
    return it == concepts.end() ? nullptr : &it->second;
  }

  const Transformation* find_transformation(std::string_view id) const {
    auto it = transformations.find(std::string(id));
    return it == transformations.end() ? nullptr : &it->second;
  }

  const Instance* find_individual(std::string_view id) const {
    auto it = individuals.find(std::string(id));
    return it == individuals.end() ? nullptr : &it->second;
  }

  std::optional<std::string> parent_of(std::string_view concept_name) const {
    for (const auto& r : relations) {
      if (r.predicate == vocab::kSubClassOf && r.subject == concept_name) {
        if (const auto* o = r.object_id()) return *o;
      }
    }
    return std::nullopt;
  }

  /// Reflexive-transitive subClassOf. Stops on cycles.
  bool is_subclass_of(std::string_view concept_name, std::string_view ancestor) const {
    std::string cur(concept_name);
    for (std::size_t steps = 0; steps <= concepts.size(); ++steps) {
      if (cur == ancestor) return true;
      auto p = parent_of(cur);
      if (!p) return false;
      cur = *p;
    }
    return false;
  }

  bool has_transformation_link(std::string_view concept_name, std::string_view t) const {
    return relations.count(Relation::link(std::string(concept_name), vocab::kHasTransformation,
                                          std::string(t))) > 0;
  }

  std::vector<std::string> transformations_of(std::string_view concept_name) const {
    std::vector<std::string> out;
    for (const auto& r : relations) {
      if (r.subject == concept_name && r.predicate == vocab::kHasTransformation) {
        if (const auto* o = r.object_id()) out.push_back(*o);
      }
    }
    return out;
  }

  /// First identity transformation attached to the concept.
  std::optional<std::string> identity_of(std::string_view concept_name) const {
    for (const auto& id : transformations_of(concept_name)) {
      const auto* t = find_transformation(id);
      if (t && t->kind == TransformKind::identity) return id;
    }
    return std::nullopt;
  }

  std::string label_of(const std::string& id) const {
    auto it = labels.find(id);
    return it == labels.end() ? text::split_identifier(id) : it->second;
  }
};

/// Adds `t` to the ontology and links it from `concept_name`. Repeating an
/// identical attachment leaves the ontology unchanged.
inline Ontology attach_transformation(const Ontology& ontology, std::string_view concept_name,
                                      const Transformation& t) {
  const auto* c = ontology.find_concept(concept_name);
  if (!c) {
    throw Error(ErrorKind::undeclared_concept,
                fmt::format("concept {} is not declared", concept_name), std::string(concept_name));
  }
  if (t.subject != *c) {
    throw Error(ErrorKind::subject_mismatch,
                fmt::format("{} belongs to {}, not {}", t.id, t.subject.local_name, concept_name),
                t.id);
  }
  if (auto problems = t.violations(); !problems.empty()) {
    throw Error(ErrorKind::invalid_element, problems.front(), t.id);
  }
  if (const auto* existing = ontology.find_transformation(t.id); existing && !(*existing == t)) {
    throw Error(ErrorKind::inconsistent_input, t.id + " is already defined differently", t.id);
  }
  Ontology out = ontology;
  out.transformations.insert_or_assign(t.id, t);
  out.relations.insert(Relation::link(std::string(concept_name), vocab::kHasTransformation, t.id));

  out.lexicon.add(ElementKind::transformation, t.id, t.id);
  out.lexicon.add(ElementKind::transformation, text::split_identifier(t.id), t.id);
  for (std::string_view prefix : {"Transformation_", "Algorithm_", "Metric_"}) {
    if (t.id.rfind(prefix, 0) == 0 && t.id.size() > prefix.size()) {
      const auto rest = t.id.substr(prefix.size());
      out.lexicon.add(ElementKind::transformation, rest, t.id);
      out.lexicon.add(ElementKind::transformation, text::split_identifier(rest), t.id);
    }
  }
  if (!t.label.empty()) {
    out.lexicon.add(ElementKind::transformation, t.label, t.id);
    out.labels[t.id] = t.label;
  }
  for (const auto& tier : t.tiers) {
    out.lexicon.add(ElementKind::state_label, tier.label, tier.label);
    out.lexicon.add(ElementKind::state_label, text::split_identifier(tier.label), tier.label);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Hierarchy validation

struct HierarchyViolation {
  enum class Kind { cycle, dangling, not_in_ontology, multiple_parents, multiple_roots, cross_namespace };
  Kind kind;
  std::vector<std::string> elements;

  bool operator==(const HierarchyViolation&) const = default;
};

inline std::string to_string(const HierarchyViolation& v) {
  static constexpr std::string_view names[] = {"cycle",            "dangling",
                                               "not-in-ontology",  "multiple-parents",
                                               "multiple-roots",   "cross-namespace"};
  std::string out(names[static_cast<int>(v.kind)]);
  out += ":";
  for (std::size_t i = 0; i < v.elements.size(); ++i) {
    out += (i == 0 ? " " : (v.kind == HierarchyViolation::Kind::cycle ? "<->" : ", "));
    out += v.elements[i];
  }
  return out;
}

struct SubClassEdge {
  std::string child;
  std::string parent;
  auto operator<=>(const SubClassEdge&) const = default;
};

/// The subClassOf subset of the ontology's relations.
inline std::vector<SubClassEdge> hierarchy_of(const Ontology& ontology) {
  std::vector<SubClassEdge> out;
  for (const auto& r : ontology.relations) {
    if (r.predicate != vocab::kSubClassOf) continue;
    if (const auto* o = r.object_id()) out.push_back({r.subject, *o});
  }
  return out;
}

/// Checks that `hierarchy` is a concept forest inside `ontology`: declared
/// endpoints, no cycles, one parent per concept, one root per namespace and
/// every edge present in the ontology's relation set.
inline std::vector<HierarchyViolation> validate_hierarchy(const Ontology& ontology,
                                                          const std::vector<SubClassEdge>& hierarchy) {
  using Kind = HierarchyViolation::Kind;
  std::vector<HierarchyViolation> report;

  std::set<std::string> dangling;
  std::map<std::string, std::vector<std::string>> parents;
  for (const auto& e : hierarchy) {
    for (const auto* end : {&e.child, &e.parent}) {
      if (!ontology.find_concept(*end)) dangling.insert(*end);
    }
    if (!ontology.relations.count(Relation::link(e.child, vocab::kSubClassOf, e.parent))) {
      report.push_back({Kind::not_in_ontology, {e.child, e.parent}});
    }
    auto& ps = parents[e.child];
    if (std::find(ps.begin(), ps.end(), e.parent) == ps.end()) ps.push_back(e.parent);
  }
  for (const auto& d : dangling) report.push_back({Kind::dangling, {d}});

  for (const auto& [child, ps] : parents) {
    if (ps.size() > 1) {
      std::vector<std::string> els{child};
      els.insert(els.end(), ps.begin(), ps.end());
      report.push_back({Kind::multiple_parents, els});
    }
    const auto* c = ontology.find_concept(child);
    for (const auto& p : ps) {
      const auto* pc = ontology.find_concept(p);
      if (c && pc && c->ns != pc->ns) report.push_back({Kind::cross_namespace, {child, p}});
    }
  }

  // Depth-first search; a back edge to a node on the current path is a cycle.
  enum class Mark { unseen, on_path, done };
  std::map<std::string, Mark> mark;
  std::set<std::set<std::string>> seen_cycles;
  std::vector<std::string> path;
  std::function<void(const std::string&)> visit = [&](const std::string& node) {
    mark[node] = Mark::on_path;
    path.push_back(node);
    if (auto it = parents.find(node); it != parents.end()) {
      for (const auto& next : it->second) {
        const auto m = mark.count(next) ? mark[next] : Mark::unseen;
        if (m == Mark::on_path) {
          auto start = std::find(path.begin(), path.end(), next);
          std::vector<std::string> cycle(start, path.end());
          std::set<std::string> key(cycle.begin(), cycle.end());
          if (seen_cycles.insert(key).second) report.push_back({Kind::cycle, cycle});
        } else if (m == Mark::unseen) {
          visit(next);
        }
      }
    }
    path.pop_back();
    mark[node] = Mark::done;
  };
  for (const auto& [child, ps] : parents) {
    if (!mark.count(child)) visit(child);
  }

  if (seen_cycles.empty()) {
    std::map<Namespace, std::vector<std::string>> roots;
    for (const auto& [name, c] : ontology.concepts) {
      if (!parents.count(name)) roots[c.ns].push_back(name);
    }
    for (const auto& [ns, rs] : roots) {
      if (rs.size() > 1) report.push_back({Kind::multiple_roots, rs});
    }
  }
  return report;
}

inline std::vector<HierarchyViolation> validate_hierarchy(const Ontology& ontology) {
  return validate_hierarchy(ontology, hierarchy_of(ontology));
}

// ---------------------------------------------------------------------------
// Knowledge representation

struct KnowledgeRepresentation {
  std::string id;  // id of the knowledge-model instance
  std::vector<Instance> instances;
  std::set<Relation> relations;
  std::set<std::string> transformations;
  std::vector<StateValue> states;
  int grade = 0;

  const Instance* find_instance(std::string_view iid) const {
    for (const auto& i : instances) {
      if (i.id == iid) return &i;
    }
    return nullptr;
  }

  std::vector<std::string> objects_of(std::string_view subject, std::string_view predicate) const {
    std::vector<std::string> out;
    for (const auto& r : relations) {
      if (r.subject == subject && r.predicate == predicate) {
        if (const auto* o = r.object_id()) out.push_back(*o);
      }
    }
    return out;
  }

  bool operator==(const KnowledgeRepresentation&) const = default;
};

/// Predicates that link an instance to the transformation its states go through.
inline bool is_transformation_link(std::string_view predicate) {
  return predicate == vocab::kHasTransformation || predicate == vocab::kHasEvaluationMetric;
}

/// Closure and state-chain violations of `kr` against `ontology`.
inline std::vector<std::string> validate_representation(const KnowledgeRepresentation& kr,
                                                        const Ontology& ontology) {
  std::vector<std::string> out;
  std::set<std::string> ids;
  for (const auto& inst : kr.instances) {
    if (!ids.insert(inst.id).second) out.push_back("duplicate instance " + inst.id);
    if (!is_instance_id(inst.id)) out.push_back("instance id " + inst.id + " breaks Concept_nnn");
    if (!ontology.find_concept(inst.concept_id.local_name)) {
      out.push_back(inst.id + " isA undeclared concept " + inst.concept_id.local_name);
    }
    std::size_t isa = 0;
    for (const auto& r : kr.relations) {
      if (r.subject == inst.id && r.predicate == vocab::kIsA) ++isa;
    }
    if (isa != 1) out.push_back(inst.id + " must have exactly one isA link");
  }
  if (!kr.find_instance(kr.id)) out.push_back("knowledge-model instance " + kr.id + " missing");

  auto resolves = [&](const std::string& e) {
    return ids.count(e) || kr.transformations.count(e) || ontology.find_concept(e) ||
           ontology.find_individual(e);
  };
  for (const auto& r : kr.relations) {
    if (!vocab::is_relation(r.predicate)) out.push_back("unknown relation " + r.predicate);
    if (!ids.count(r.subject)) out.push_back("relation subject " + r.subject + " not an instance");
    if (const auto* o = r.object_id()) {
      if (!resolves(*o)) out.push_back("relation object " + *o + " does not resolve");
      if (r.predicate == vocab::kIsA) {
        const auto* inst = kr.find_instance(r.subject);
        if (inst && inst->concept_id.local_name != *o) {
          out.push_back(r.subject + " isA " + *o + " disagrees with its concept");
        }
      }
      if (is_transformation_link(r.predicate)) {
        const auto* inst = kr.find_instance(r.subject);
        if (!kr.transformations.count(*o)) out.push_back(*o + " missing from transformations");
        // Instances inherit transformations from their concept; no overrides.
        if (inst && !ontology.has_transformation_link(inst->concept_id.local_name, *o)) {
          out.push_back(r.subject + " uses " + *o + " which its concept does not carry");
        }
      }
    } else if (r.predicate != vocab::kHasState) {
      out.push_back("only hasState may point at a value");
    }
  }
  for (const auto& t : kr.transformations) {
    if (!ontology.find_transformation(t)) out.push_back("transformation " + t + " not in ontology");
  }
  for (const auto& s : kr.states) {
    const auto* owner = kr.find_instance(s.owner);
    if (!owner) {
      out.push_back("state owner " + s.owner + " not an instance");
      continue;
    }
    const bool chain =
        kr.relations.count(Relation::link(s.owner, vocab::kIsA, owner->concept_id.local_name)) &&
        (kr.relations.count(Relation::link(s.owner, vocab::kHasTransformation, s.via)) ||
         kr.relations.count(Relation::link(s.owner, vocab::kHasEvaluationMetric, s.via))) &&
        kr.relations.count(Relation::state(s.owner, s.value));
    if (!chain) out.push_back("state of " + s.owner + " lacks the isA/hasTransformation/hasState chain");
    if (const auto* t = ontology.find_transformation(s.via)) {
      if (const auto* l = std::get_if<Label>(&s.value);
          l && t->kind == TransformKind::piecewise_tiers && !t->has_tier_label(l->text)) {
        out.push_back("state '" + l->text + "' is not a tier of " + s.via);
      }
    }
  }
  if (kr.grade < 0 || kr.grade > 100) out.push_back("grade outside 0..100");
  return out;
}

}  // namespace oak
