#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <random>
#include <set>

#include "oak/agri_ontology.hpp"
#include "oak/ontology_builder.hpp"

using namespace oak;

namespace {

const Ontology& onto() {
  static const Ontology o = agri::mini_ontology();
  return o;
}

std::string label_of(const Scalar& s) { return std::get<Label>(s).text; }

bool has_kind(const std::vector<HierarchyViolation>& r, HierarchyViolation::Kind k) {
  return std::any_of(r.begin(), r.end(), [&](const auto& v) { return v.kind == k; });
}

}  // namespace

TEST(Text, NormalizeTerm) {
  EXPECT_EQ(text::normalize_term("  Soil   pH "), "soil ph");
  EXPECT_EQ(text::normalize_term("NITROGEN"), "nitrogen");
  EXPECT_EQ(text::normalize_term("Algorithm_CPANN"), "algorithm cpann");
  EXPECT_EQ(text::normalize_term("K-Means."), "k means");
  EXPECT_EQ(text::normalize_term("?!"), "");
}

TEST(Text, SplitIdentifier) {
  EXPECT_EQ(text::split_identifier("SoilPH"), "Soil PH");
  EXPECT_EQ(text::split_identifier("OrganicCarbon"), "Organic Carbon");
  EXPECT_EQ(text::split_identifier("Algorithm_CPANN"), "Algorithm CPANN");
  EXPECT_EQ(text::split_identifier("CEC"), "CEC");
}

TEST(Text, Identifiers) {
  EXPECT_TRUE(text::is_identifier("SoilPH_010"));
  EXPECT_TRUE(text::is_identifier("_x"));
  EXPECT_FALSE(text::is_identifier("9lives"));
  EXPECT_FALSE(text::is_identifier(""));
  EXPECT_FALSE(text::is_identifier("a-b"));
  EXPECT_THROW(ConceptId::make("bad name", Namespace::domain), Error);
}

TEST(Text, Numbers) {
  EXPECT_EQ(text::format_decimal(0.9), "0.9");
  EXPECT_EQ(text::format_decimal(60), "60.0");
  EXPECT_EQ(text::parse_double("+2.5"), 2.5);
  EXPECT_FALSE(text::parse_double("2.5x"));
  EXPECT_EQ(text::parse_int("-12"), -12);
  EXPECT_FALSE(text::parse_int("1.0"));
}

TEST(InstanceIds, SuffixConvention) {
  EXPECT_EQ(item_suffix(10), "010");
  EXPECT_EQ(item_suffix(1234), "1234");
  EXPECT_TRUE(is_instance_id("SoilPH_010"));
  EXPECT_FALSE(is_instance_id("SoilPH_10"));
  EXPECT_FALSE(is_instance_id("SoilPH"));
  EXPECT_EQ(instance_suffix("Classifier_010"), "010");
}

TEST(Interval, Openness) {
  Interval half{5, 7, false, true};
  EXPECT_FALSE(half.contains(5));
  EXPECT_TRUE(half.contains(7));
  EXPECT_TRUE(Interval::point(7).contains(7));
  EXPECT_FALSE(Interval::point(7).contains(7.0000001));
  EXPECT_TRUE(Interval::all().contains(-1e300));
  EXPECT_FALSE(Interval::all().contains(std::nan("")));
  EXPECT_TRUE((Interval{3, 3, true, false}).empty());
  EXPECT_FALSE(Interval::point(3).empty());
}

TEST(ApplyTransformation, SoilPhTierTable) {
  const auto* t = onto().find_transformation("Transformation_SoilPH_Tier5");
  ASSERT_NE(t, nullptr);
  const std::vector<std::pair<double, std::string>> table = {
      {4.5, "Strongly acidic"}, {5.0, "Strongly acidic"}, {6.0, "Acidic"},
      {7.0, "Neutral"},         {8.0, "Alkaline"},        {12.0, "Strongly alkaline"},
  };
  for (const auto& [x, want] : table) EXPECT_EQ(label_of(apply_transformation(*t, x)), want) << x;
}

TEST(ApplyTransformation, OutOfDomain) {
  const auto* t = onto().find_transformation("Transformation_SoilPH_Tier5");
  for (double x : {-0.1, 14.5}) {
    try {
      apply_transformation(*t, x);
      FAIL() << x;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::out_of_domain);
    }
  }
}

TEST(ApplyTransformation, IdentityAndRescale) {
  const auto* id = onto().find_transformation("Transformation_SoilPH");
  const auto q = std::get<Quantity>(apply_transformation(*id, 7.2));
  EXPECT_EQ(q.value, 7.2);
  EXPECT_EQ(q.unit, "pH");

  const auto* norm = onto().find_transformation("Transformation_Temperature_Normalised");
  EXPECT_DOUBLE_EQ(std::get<Quantity>(apply_transformation(*norm, -30)).value, 0.0);
  EXPECT_DOUBLE_EQ(std::get<Quantity>(apply_transformation(*norm, 10)).value, 0.5);
  EXPECT_DOUBLE_EQ(std::get<Quantity>(apply_transformation(*norm, 50)).value, 1.0);
  EXPECT_THROW(apply_transformation(*norm, 51), Error);

  const auto* algo = onto().find_transformation("Algorithm_CPANN");
  EXPECT_THROW(apply_transformation(*algo, 1), Error);
}

// Every sampled real in the declared domain of each piecewise transformation
// lies in exactly one tier.
TEST(TierProperties, TotalityAndDisjointness) {
  std::mt19937_64 rng(7);
  int checked = 0;
  for (const auto& [id, t] : onto().transformations) {
    if (t.kind != TransformKind::piecewise_tiers) continue;
    EXPECT_TRUE(t.violations().empty()) << id;
    const auto dom = t.declared_domain();
    const double lo = std::isinf(dom.lower) ? -1e4 : dom.lower;
    const double hi = std::isinf(dom.upper) ? 1e4 : dom.upper;
    std::vector<double> xs;
    std::uniform_real_distribution<double> u(lo, hi);
    for (int i = 0; i < 10000; ++i) xs.push_back(u(rng));
    for (const auto& tier : t.tiers) {
      for (double b : {tier.range.lower, tier.range.upper}) {
        if (!std::isinf(b)) xs.push_back(b);
      }
    }
    for (double x : xs) {
      if (!dom.contains(x)) continue;
      const auto hits = std::count_if(t.tiers.begin(), t.tiers.end(),
                                      [&](const Tier& tier) { return tier.range.contains(x); });
      ASSERT_EQ(hits, 1) << id << " at " << x;
      ++checked;
    }
  }
  EXPECT_GT(checked, 40000);
}

TEST(TierProperties, MalformedTiersAreReported) {
  auto c = ConceptId::make("SoilPH", Namespace::domain);
  auto gap = Transformation::piecewise("T_gap", c, {{{0, 5, true, false}, "a"}, {{6, 7, true, true}, "b"}});
  EXPECT_FALSE(gap.violations().empty());
  auto overlap =
      Transformation::piecewise("T_overlap", c, {{{0, 5, true, true}, "a"}, {{5, 7, true, true}, "b"}});
  EXPECT_FALSE(overlap.violations().empty());
  auto algo = Transformation::algorithm("Algorithm_X", c, Task::classification);
  EXPECT_FALSE(algo.violations().empty());
}

TEST(Lexicon, ResolveTerm) {
  const auto& lex = onto().lexicon;
  EXPECT_EQ(resolve_term(lex, "Soil pH", ElementKind::concept_), "SoilPH");
  EXPECT_EQ(resolve_term(lex, "NITROGEN", ElementKind::concept_), "Nitrogen");
  try {
    resolve_term(lex, "unobtainium", ElementKind::concept_);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::no_match);
    EXPECT_EQ(e.detail(), "unobtainium");
  }
  EXPECT_THROW(resolve_term(lex, "  ", ElementKind::concept_), Error);
}

TEST(Lexicon, ConflictingEntryRejected) {
  Lexicon lex;
  lex.add(ElementKind::concept_, "Soil pH", "SoilPH");
  lex.add(ElementKind::concept_, "soil  PH", "SoilPH");
  EXPECT_THROW(lex.add(ElementKind::concept_, "soil ph", "Other"), Error);
  lex.add(ElementKind::instance, "soil ph", "Other");  // other partition
  EXPECT_EQ(lex.max_words(), 2u);
}

TEST(Lexicon, RoundTripOverEveryElement) {
  const auto& o = onto();
  for (auto kind : kElementKinds) {
    for (const auto& [term, id] : o.lexicon.entries(kind)) {
      EXPECT_EQ(resolve_term(o.lexicon, term, kind), id);
    }
  }
  for (const auto& [name, c] : o.concepts) {
    EXPECT_FALSE(o.lexicon.terms_of(ElementKind::concept_, name).empty()) << name;
  }
  for (const auto& [id, t] : o.transformations) {
    EXPECT_FALSE(o.lexicon.terms_of(ElementKind::transformation, id).empty()) << id;
    for (const auto& l : t.tier_labels()) {
      EXPECT_EQ(o.lexicon.find(ElementKind::state_label, l), l);
    }
  }
  for (const auto& [id, i] : o.individuals) {
    EXPECT_FALSE(o.lexicon.terms_of(ElementKind::instance, id).empty()) << id;
  }
  for (auto r : vocab::kRelationVocabulary) {
    EXPECT_EQ(resolve_term(o.lexicon, r, ElementKind::relation), r);
  }
}

TEST(AttachTransformation, AddsLinkAndIsIdempotent) {
  OntologyBuilder b;
  b.concept_("SoilPH", Namespace::domain).concept_("Yield", Namespace::domain);
  const auto o = b.build();
  const auto tier5 = *onto().find_transformation("Transformation_SoilPH_Tier5");
  const auto o1 = attach_transformation(o, "SoilPH", tier5);
  EXPECT_TRUE(o1.relations.count(
      Relation::link("SoilPH", vocab::kHasTransformation, "Transformation_SoilPH_Tier5")));
  EXPECT_TRUE(o1.has_transformation_link("SoilPH", "Transformation_SoilPH_Tier5"));
  const auto o2 = attach_transformation(o1, "SoilPH", tier5);
  EXPECT_EQ(o2.relations, o1.relations);
  EXPECT_EQ(o2.transformations, o1.transformations);

  try {
    attach_transformation(o, "Yield", tier5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::subject_mismatch);
  }
  try {
    attach_transformation(o, "Ghost", tier5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::undeclared_concept);
  }
}

TEST(Hierarchy, Examples) {
  using K = HierarchyViolation::Kind;
  {
    OntologyBuilder b;
    b.concept_("B", Namespace::domain).concept_("A", Namespace::domain, "B");
    EXPECT_TRUE(validate_hierarchy(b.build()).empty());
  }
  {
    OntologyBuilder b;
    b.concept_("A", Namespace::domain, "B").concept_("B", Namespace::domain, "A");
    const auto r = validate_hierarchy(b.build());
    ASSERT_TRUE(has_kind(r, K::cycle));
    for (const auto& v : r) {
      if (v.kind == K::cycle) {
        EXPECT_EQ(std::set<std::string>(v.elements.begin(), v.elements.end()),
                  (std::set<std::string>{"A", "B"}));
      }
    }
  }
  {
    OntologyBuilder b;
    b.concept_("A", Namespace::domain, "Ghost");
    const auto r = validate_hierarchy(b.build());
    ASSERT_EQ(r.size(), 1u);
    EXPECT_EQ(r[0], (HierarchyViolation{K::dangling, {"Ghost"}}));
    EXPECT_EQ(to_string(r[0]), "dangling: Ghost");
  }
}

TEST(Hierarchy, EdgesOutsideOntology) {
  OntologyBuilder b;
  b.concept_("B", Namespace::domain).concept_("A", Namespace::domain);
  const auto r = validate_hierarchy(b.build(), {{"A", "B"}});
  EXPECT_TRUE(has_kind(r, HierarchyViolation::Kind::not_in_ontology));
}

TEST(Hierarchy, MiniOntologyIsAForest) {
  const auto r = validate_hierarchy(onto());
  for (const auto& v : r) ADD_FAILURE() << to_string(v);
  EXPECT_TRUE(onto().is_subclass_of("Wheat", "Crop"));
  EXPECT_TRUE(onto().is_subclass_of("Classifier", "Classifier"));
  EXPECT_FALSE(onto().is_subclass_of("Crop", "Wheat"));
}

// Cycle detection agrees with Kahn's algorithm on random subClassOf graphs.
TEST(Hierarchy, CycleDetectionMatchesKahn) {
  std::mt19937 rng(42);
  for (int round = 0; round < 500; ++round) {
    const int n = 2 + static_cast<int>(rng() % 8);
    const int m = static_cast<int>(rng() % (2 * n));
    std::set<std::pair<int, int>> edges;
    for (int i = 0; i < m; ++i) {
      int a = static_cast<int>(rng() % n), b = static_cast<int>(rng() % n);
      if (a != b) edges.insert({a, b});
    }
    auto name = [](int i) { return "C" + std::to_string(i); };
    OntologyBuilder builder;
    for (int i = 0; i < n; ++i) builder.concept_(name(i), Namespace::domain);
    for (auto [a, b] : edges) builder.relation(name(a), vocab::kSubClassOf, name(b));
    const auto report = validate_hierarchy(builder.build());

    std::vector<int> indeg(n, 0);
    for (auto [a, b] : edges) ++indeg[b];
    std::deque<int> q;
    for (int i = 0; i < n; ++i) {
      if (indeg[i] == 0) q.push_back(i);
    }
    int removed = 0;
    while (!q.empty()) {
      const int v = q.front();
      q.pop_front();
      ++removed;
      for (auto [a, b] : edges) {
        if (a == v && --indeg[b] == 0) q.push_back(b);
      }
    }
    const bool cyclic = removed < n;
    ASSERT_EQ(has_kind(report, HierarchyViolation::Kind::cycle), cyclic) << "round " << round;

    std::map<int, int> outdeg;
    for (auto [a, b] : edges) ++outdeg[a];
    const bool multi = std::any_of(outdeg.begin(), outdeg.end(), [](auto& kv) { return kv.second > 1; });
    ASSERT_EQ(has_kind(report, HierarchyViolation::Kind::multiple_parents), multi);
    if (!cyclic) {
      const int roots = n - static_cast<int>(outdeg.size());
      ASSERT_EQ(has_kind(report, HierarchyViolation::Kind::multiple_roots), roots > 1);
    }
  }
}

TEST(Hierarchy, CrossNamespaceEdge) {
  OntologyBuilder b;
  b.concept_("Thing", Namespace::domain).concept_("Model", Namespace::computing, "Thing");
  EXPECT_TRUE(has_kind(validate_hierarchy(b.build()), HierarchyViolation::Kind::cross_namespace));
}

namespace {

// SoilPH_010 isA SoilPH hasTransformation Tier5 hasState "Acidic" inside a
// knowledge map rooted at Classifier_010.
KnowledgeRepresentation small_kr() {
  const auto& o = onto();
  KnowledgeRepresentation kr;
  kr.id = "Classifier_010";
  kr.instances = {{"Classifier_010", *o.find_concept("Classifier"), Namespace::computing, {}, {}},
                  {"SoilPH_010", *o.find_concept("SoilPH"), Namespace::domain, {}, {}}};
  kr.relations = {Relation::link("Classifier_010", vocab::kIsA, "Classifier"),
                  Relation::link("SoilPH_010", vocab::kIsA, "SoilPH"),
                  Relation::link("Classifier_010", vocab::kHasAlgorithm, "Algorithm_CPANN"),
                  Relation::link("Classifier_010", vocab::kHasCondition, "SoilPH_010"),
                  Relation::link("SoilPH_010", vocab::kHasTransformation, "Transformation_SoilPH_Tier5"),
                  Relation::state("SoilPH_010", Label{"Acidic"})};
  kr.transformations = {"Algorithm_CPANN", "Transformation_SoilPH_Tier5"};
  kr.states = {{"SoilPH_010", "Transformation_SoilPH_Tier5", Label{"Acidic"}}};
  return kr;
}

}  // namespace

TEST(Representation, ValidClosure) {
  const auto problems = validate_representation(small_kr(), onto());
  for (const auto& p : problems) ADD_FAILURE() << p;
}

TEST(Representation, BrokenStateChain) {
  auto kr = small_kr();
  kr.relations.erase(Relation::link("SoilPH_010", vocab::kHasTransformation, "Transformation_SoilPH_Tier5"));
  EXPECT_FALSE(validate_representation(kr, onto()).empty());
}

TEST(Representation, LabelOutsideTiers) {
  auto kr = small_kr();
  kr.relations.erase(Relation::state("SoilPH_010", Label{"Acidic"}));
  kr.relations.insert(Relation::state("SoilPH_010", Label{"Medium"}));
  kr.states = {{"SoilPH_010", "Transformation_SoilPH_Tier5", Label{"Medium"}}};
  EXPECT_FALSE(validate_representation(kr, onto()).empty());
}

TEST(Representation, InstanceLevelOverrideRejected) {
  auto kr = small_kr();
  kr.relations.insert(Relation::link("SoilPH_010", vocab::kHasTransformation, "Transformation_Yield_Tier3"));
  kr.transformations.insert("Transformation_Yield_Tier3");
  EXPECT_FALSE(validate_representation(kr, onto()).empty());
}

TEST(Representation, DanglingObjectAndBadPredicate) {
  auto kr = small_kr();
  kr.relations.insert(Relation::link("Classifier_010", vocab::kHasCondition, "Nowhere_010"));
  kr.relations.insert(Relation::link("Classifier_010", "likes", "SoilPH_010"));
  EXPECT_GE(validate_representation(kr, onto()).size(), 2u);
}
