#pragma once

// Grading of knowledge items (basic 20, principal 40, subordinal 40),
// repository coverage and the FOCA total-quality score.

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "oak/descriptor.hpp"
#include "oak/publish.hpp"

namespace oak {

inline constexpr int kImportThreshold = 50;

struct GradeBreakdown {
  int basic = 0;       // 0..20
  int principal = 0;   // 0..40
  int subordinal = 0;  // 0..40
  int total = 0;
  bool accepted = false;

  bool operator==(const GradeBreakdown&) const = default;
};

/// Presence of each graded sub-item.
struct FeaturePresence {
  std::array<bool, 3> basic{};       // source id, title, year
  std::array<bool, 5> principal{};   // algorithms, conditions, target,
                                     // condition transformations, target transformations
  std::array<bool, 4> subordinal{};  // dataset, evaluation, locations, context
};

inline int count_present(const auto& flags) {
  int n = 0;
  for (bool f : flags) n += f ? 1 : 0;
  return n;
}

/// Integer group scores: basic floors 20*k/3, the others are exact.
inline GradeBreakdown grade_from(const FeaturePresence& p) {
  GradeBreakdown g;
  g.basic = 20 * count_present(p.basic) / 3;
  g.principal = 8 * count_present(p.principal);
  g.subordinal = 10 * count_present(p.subordinal);
  g.total = g.basic + g.principal + g.subordinal;
  g.accepted = g.total >= kImportThreshold;
  return g;
}

inline FeaturePresence features_of(const Descriptor& d) {
  FeaturePresence p;
  if (d.source) {
    p.basic = {!d.source->id.empty(), d.source->title.has_value() && !d.source->title->empty(),
               d.source->year.has_value()};
  }
  const bool clustering = parse_task(d.task) == Task::clustering;
  auto any_transformation = [](const std::vector<RoleSpec>& rs) {
    for (const auto& r : rs) {
      if (r.transformation) return true;
    }
    return false;
  };
  // A clustering result's output is its clusters, which carry no
  // transformation, so target-side items count as present.
  p.principal = {!d.algorithms.empty(), !d.conditions.empty(), clustering || !d.targets.empty(),
                 any_transformation(d.conditions), clustering || any_transformation(d.targets)};
  p.subordinal = {d.dataset.has_value(), !d.evaluation.empty(), !d.locations.empty(),
                  !d.context.empty()};
  return p;
}

inline GradeBreakdown grade(const Descriptor& d) { return grade_from(features_of(d)); }

inline nlohmann::json to_json(const GradeBreakdown& g) {
  return {{"basic", g.basic},
          {"principal", g.principal},
          {"subordinal", g.subordinal},
          {"total", g.total},
          {"accepted", g.accepted}};
}

// ---------------------------------------------------------------------------
// Repository report

struct ItemAssessment {
  std::string id;
  int grade = 0;
  int basic = 0;
  int principal = 0;
  int subordinal = 0;
};

struct RepositoryReport {
  std::size_t items = 0;
  double basic_pct = 0;       // share of items with every basic sub-item
  double principal_pct = 0;
  double subordinal_pct = 0;
  double rate = 0;            // mean grade
  std::vector<ItemAssessment> per_item;

  bool empty() const { return items == 0; }
};

/// Group scores of a stored item. Basic and subordinal presence are read
/// from the triples; principal is what remains of the stored grade.
inline ItemAssessment assess_stored(const rdf::TripleStore& store, const std::string& id) {
  using publish::kmap_iri;
  using publish::onto_iri;
  ItemAssessment a;
  a.id = id;
  const auto s = kmap_iri(id);
  for (const auto& t : store.match(s, onto_iri(vocab::kGrade), std::nullopt)) {
    a.grade = static_cast<int>(text::parse_int(t.o.value).value_or(0));
  }
  FeaturePresence p;
  for (const auto& art : store.match(s, onto_iri(vocab::kDefinedIn), std::nullopt)) {
    auto has = [&](std::string_view prop) {
      return store.count(art.o, onto_iri(prop), std::nullopt) > 0;
    };
    p.basic = {has(vocab::kIdentifier), has(vocab::kTitle), has(vocab::kYear)};
  }
  auto linked = [&](std::string_view pred) { return store.count(s, onto_iri(pred), std::nullopt) > 0; };
  p.subordinal = {linked(vocab::kHasDataset), linked(vocab::kEvaluatedBy),
                  linked(vocab::kHasLocation), linked(vocab::kRelatedTo)};
  const auto g = grade_from(p);
  a.basic = g.basic;
  a.subordinal = g.subordinal;
  a.principal = a.grade - a.basic - a.subordinal;
  return a;
}

inline RepositoryReport repository_report(const rdf::TripleStore& store) {
  RepositoryReport r;
  long total = 0;
  std::size_t basic_full = 0, principal_full = 0, subordinal_full = 0;
  for (const auto& id : publish::kmap_ids(store)) {
    auto a = assess_stored(store, id);
    total += a.grade;
    basic_full += a.basic == 20;
    principal_full += a.principal == 40;
    subordinal_full += a.subordinal == 40;
    r.per_item.push_back(a);
  }
  r.items = r.per_item.size();
  if (r.items) {
    const double n = static_cast<double>(r.items);
    r.basic_pct = 100.0 * basic_full / n;
    r.principal_pct = 100.0 * principal_full / n;
    r.subordinal_pct = 100.0 * subordinal_full / n;
    r.rate = static_cast<double>(total) / n;
  }
  return r;
}

inline nlohmann::json to_json(const RepositoryReport& r) {
  nlohmann::json items = nlohmann::json::array();
  for (const auto& a : r.per_item) {
    items.push_back({{"id", a.id},
                     {"grade", a.grade},
                     {"basic", a.basic},
                     {"principal", a.principal},
                     {"subordinal", a.subordinal}});
  }
  return {{"items", r.items},
          {"empty", r.empty()},
          {"basic", r.basic_pct},
          {"principal", r.principal_pct},
          {"subordinal", r.subordinal_pct},
          {"rate", r.rate},
          {"per_item", items}};
}

// ---------------------------------------------------------------------------
// FOCA

using Grade = std::optional<double>;  // nullopt = question not answered

struct FocaInput {
  std::array<std::vector<Grade>, 5> goals;  // G1..G5
  int lexp = 0;
  int nl = 0;
  int sb = 1, co = 1, re = 1, cp = 1;
};

struct FocaResult {
  std::array<std::optional<double>, 5> means;  // G5 reported only
  double z = 0;
  double mu = 0;
};

/// Mean of the answered grades, nullopt when none were answered.
inline std::optional<double> answered_mean(const std::vector<Grade>& grades) {
  double sum = 0;
  int n = 0;
  for (const auto& g : grades) {
    if (g) {
      sum += *g;
      ++n;
    }
  }
  if (n == 0) return std::nullopt;
  return sum / n;
}

inline double logistic(double z) { return 1.0 / (1.0 + std::exp(-z)); }

inline FocaResult foca_score(const FocaInput& in) {
  auto flag = [](int v, const char* name) {
    if (v != 0 && v != 1) throw Error(ErrorKind::inconsistent_input, std::string(name) + " must be 0 or 1");
    return v;
  };
  const int flags[4] = {flag(in.sb, "Sb"), flag(in.co, "Co"), flag(in.re, "Re"), flag(in.cp, "Cp")};
  flag(in.lexp, "LExp");
  flag(in.nl, "Nl");

  FocaResult r;
  for (std::size_t g = 0; g < 5; ++g) {
    for (const auto& v : in.goals[g]) {
      if (v && (*v < 0 || *v > 100 || std::isnan(*v))) {
        throw Error(ErrorKind::inconsistent_input, "grades must lie in 0..100");
      }
    }
    r.means[g] = answered_mean(in.goals[g]);
  }
  static constexpr double kWeights[4] = {0.03, 0.02, 0.01, 0.02};
  r.z = -0.44;
  for (std::size_t g = 0; g < 4; ++g) {
    if (flags[g] && !r.means[g] && in.nl == 0) {
      throw Error(ErrorKind::inconsistent_input,
                  "goal G" + std::to_string(g + 1) + " has no answered questions but Nl = 0");
    }
    r.z += kWeights[g] * r.means[g].value_or(0.0) * flags[g];
  }
  r.z += -0.66 * in.lexp - 2.5 * in.nl;
  r.mu = logistic(r.z);
  return r;
}

/// {"goals": {"G1": [100, null, ...], ...}, "LExp": 1, "Nl": 0, "Sb": 1, ...}
inline FocaInput foca_from_json(const nlohmann::json& j) {
  FocaInput in;
  const auto& goals = j.at("goals");
  for (std::size_t g = 0; g < 5; ++g) {
    const auto key = "G" + std::to_string(g + 1);
    if (!goals.contains(key)) continue;
    for (const auto& v : goals.at(key)) {
      if (v.is_null() || (v.is_string() && v.get<std::string>() == "-")) {
        in.goals[g].push_back(std::nullopt);
      } else if (v.is_number()) {
        in.goals[g].push_back(v.get<double>());
      } else {
        throw Error(ErrorKind::inconsistent_input, key + " grades must be numbers, null or \"-\"");
      }
    }
  }
  in.lexp = j.value("LExp", 0);
  in.nl = j.value("Nl", 0);
  in.sb = j.value("Sb", 1);
  in.co = j.value("Co", 1);
  in.re = j.value("Re", 1);
  in.cp = j.value("Cp", 1);
  return in;
}

}  // namespace oak
