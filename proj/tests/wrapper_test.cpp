#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <thread>

#include "oak/wrapper.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace oak;
using oak::testing::classifier_010;
using oak::testing::fixture_descriptor;
using oak::testing::read_fixture;
using oak::testing::TempDir;
using oak::testing::core_of;
using oak::testing::prescribed_core;

namespace {

const Ontology& onto() {
  static const Ontology o = agri::mini_ontology();
  return o;
}

template <class F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::io_error;
}

std::vector<std::string> terms_of(auto&& f) {
  try {
    f();
  } catch (const TermListError& e) {
    return e.terms();
  }
  ADD_FAILURE() << "no term-list error raised";
  return {};
}

Descriptor minimal(const std::string& task) {
  Descriptor d;
  d.item = 500;
  d.task = task;
  if (task == "classification") d.algorithms = {"SVM"};
  if (task == "regression") d.algorithms = {"MLR"};
  if (task == "clustering") d.algorithms = {"KMeans"};
  if (task == "association") d.algorithms = {"Apriori"};
  d.conditions = {{"SoilPH", std::nullopt, std::nullopt}};
  if (task == "classification" || task == "regression") d.targets = {{"Yield", std::nullopt, std::nullopt}};
  if (task == "association") d.targets = {{"LeafRust", std::nullopt, std::nullopt}};
  return d;
}

std::set<rdf::Triple> subject_triples(const std::vector<rdf::Triple>& ts, const rdf::Term& s) {
  std::set<rdf::Triple> out;
  for (const auto& t : ts) {
    if (t.s == s) out.insert(t);
  }
  return out;
}

}  // namespace

TEST(Descriptor, ParsesReferenceFixture) {
  const auto d = classifier_010();
  EXPECT_EQ(d.item, 10u);
  EXPECT_EQ(d.task, "classification");
  EXPECT_EQ(d.algorithms, (std::vector<std::string>{"CPANN", "SKN", "XYF"}));
  EXPECT_EQ(d.conditions.size(), 7u);
  EXPECT_EQ(d.targets.size(), 1u);
  EXPECT_FALSE(d.dataset);
  EXPECT_EQ(d.evaluation.size(), 1u);
  ASSERT_TRUE(d.source);
  EXPECT_FALSE(d.source->title);
  EXPECT_EQ(knowledge_kind(d), PatternKind::process);
}

TEST(Descriptor, JsonRoundTrip) {
  for (int n = 1; n <= oak::testing::kFixtureItems; ++n) {
    const auto d = fixture_descriptor(n);
    EXPECT_EQ(descriptor_from_json(to_json(d)), d) << n;
  }
}

TEST(Descriptor, ObjectForms) {
  const auto d = parse_descriptor(R"({
    "task": "regression", "algorithms": ["MLR"],
    "conditions": [{"concept": "Rainfall", "transformation": "Tier3", "state": {"value": 650, "unit": "mm"}},
                   {"concept": "SoilPH", "state": "Acidic"}],
    "targets": ["Yield"],
    "dataset": "Field trial", "source": {"id": "a1", "title": "T", "year": 2019}})");
  ASSERT_EQ(d.conditions.size(), 2u);
  EXPECT_EQ(d.conditions[0].transformation, "Tier3");
  EXPECT_EQ(d.conditions[0].state, (StateInput{650.0, "mm"}));
  EXPECT_EQ(d.conditions[1].state, (StateInput{std::string("Acidic"), ""}));
  EXPECT_EQ(d.dataset->name, "Field trial");
  EXPECT_EQ(d.source->year, 2019);
  EXPECT_EQ(knowledge_kind(d), PatternKind::fact);
}

TEST(Descriptor, MalformedInput) {
  for (const char* text : {"[1]", "{", R"({"algorithms": []})", R"({"task": 3})",
                           R"({"task": "regression", "conditions": "SoilPH"})",
                           R"({"task": "regression", "conditions": [{"state": 1}]})",
                           R"({"task": "regression", "evaluation": [{"metric": "RMSE"}]})",
                           R"({"task": "regression", "item": -1})",
                           R"({"task": "regression", "source": {"year": 2019}})"}) {
    EXPECT_EQ(kind_of([&] { parse_descriptor(text); }), ErrorKind::invalid_descriptor) << text;
  }
}

TEST(IdentifyModel, Examples) {
  auto d = classifier_010();
  const auto m = identify_model(d, onto(), "010");
  EXPECT_EQ(m.kmap.id, "Classifier_010");
  EXPECT_EQ(m.algorithms,
            (std::vector<std::string>{"Algorithm_CPANN", "Algorithm_SKN", "Algorithm_XYF"}));

  Descriptor r = minimal("regression");
  r.algorithms = {"PCA"};
  EXPECT_EQ(identify_model(r, onto(), "004").kmap.id, "Regressor_004");

  r.algorithms = {};
  EXPECT_EQ(kind_of([&] { identify_model(r, onto(), "004"); }), ErrorKind::invalid_descriptor);
  r.algorithms = {"PCA", "Quantum Annealing", "KMeans"};
  EXPECT_EQ(terms_of([&] { identify_model(r, onto(), "004"); }),
            (std::vector<std::string>{"Quantum Annealing", "KMeans"}));
  r.task = "forecasting";
  EXPECT_EQ(kind_of([&] { identify_model(r, onto(), "004"); }), ErrorKind::invalid_task);
}

TEST(IdentifyConcepts, ResolvesAndReportsAllUnknowns) {
  Descriptor d = minimal("classification");
  d.conditions = {{"SoilPH", {}, {}}, {"SeedRate", {}, {}}, {"Nitrogen", {}, {}}};
  const auto b = identify_concepts(d, onto());
  EXPECT_EQ(b.conditions, (std::vector<std::string>{"SoilPH", "SeedRate", "Nitrogen"}));

  d.conditions = {{"SoilPH", {}, {}}, {"xyz", {}, {}}};
  d.locations = {"Atlantis"};
  EXPECT_EQ(terms_of([&] { identify_concepts(d, onto()); }), (std::vector<std::string>{"xyz", "Atlantis"}));
}

TEST(IdentifyConcepts, RejectsDuplicatesAndRoleClashes) {
  Descriptor d = minimal("classification");
  d.conditions = {{"SoilPH", {}, {}}, {"soil pH", {}, {}}};
  EXPECT_EQ(kind_of([&] { identify_concepts(d, onto()); }), ErrorKind::invalid_descriptor);
  d.conditions = {{"Yield", {}, {}}};
  EXPECT_EQ(kind_of([&] { identify_concepts(d, onto()); }), ErrorKind::invalid_descriptor);
  d.conditions = {{"Classifier", {}, {}}};
  EXPECT_EQ(kind_of([&] { identify_concepts(d, onto()); }), ErrorKind::invalid_descriptor);
}

TEST(Wrap, ReferenceItemMatchesFixtureTriples) {
  const auto res = wrap(classifier_010(), onto(), 1);
  EXPECT_EQ(res.kr.id, "Classifier_010");
  EXPECT_EQ(res.grade.total, 60);
  EXPECT_EQ(res.kr.grade, 60);
  EXPECT_TRUE(res.grade.accepted);
  EXPECT_EQ(res.pattern, PatternKind::classification);
  EXPECT_EQ(res.knowledge, PatternKind::process);
  EXPECT_TRUE(res.kr.states.size() == 1 && res.kr.states[0].owner == "Evaluation_010");

  const auto id = publish::kmap_iri("Classifier_010");
  const auto fixture = rdf::load_turtle(read_fixture("classifier_010.ttl")).triples();
  const auto mine = subject_triples(publish::kr_triples(res.kr), id);
  EXPECT_EQ(mine.size(), 20u);
  EXPECT_EQ(mine, std::set<rdf::Triple>(fixture.begin(), fixture.end()));

  const auto reparsed = rdf::load_turtle(to_turtle(res.kr)).triples();
  EXPECT_EQ(subject_triples(reparsed, id), mine);
}

TEST(Wrap, InstancesShareTheItemSuffix) {
  const auto kr = wrap(classifier_010(), onto(), 1).kr;
  std::set<std::string> ids;
  for (const auto& i : kr.instances) {
    EXPECT_EQ(instance_suffix(i.id), "010") << i.id;
    ids.insert(i.id);
  }
  for (const char* want : {"SoilPH_010", "Nitrogen_010", "CEC_010", "Yield_010", "Evaluation_010",
                           "Article_010", "Classifier_010"}) {
    EXPECT_TRUE(ids.count(want)) << want;
  }
  EXPECT_EQ(kr.objects_of("Classifier_010", vocab::kHasCondition).size(), 7u);
  EXPECT_EQ(kr.objects_of("SoilPH_010", vocab::kHasTransformation),
            std::vector<std::string>{"Transformation_SoilPH"});
}

TEST(Wrap, CoreRelationsFollowTheTaskPattern) {
  int per_task[4] = {};
  for (int n = 1; n <= oak::testing::kFixtureItems; ++n) {
    const auto d = fixture_descriptor(n);
    const auto res = wrap(d, onto(), 1);
    ASSERT_EQ(core_of(res.kr), prescribed_core(d, 1, onto())) << "item " << n << " (" << d.task << ")";
    ++per_task[static_cast<int>(*parse_task(d.task))];
  }
  for (int c : per_task) EXPECT_GE(c, 7);
}

TEST(Wrap, ClusteringHasNoTargetSideTransformations) {
  for (int n = 2; n <= oak::testing::kFixtureItems; n += 4) {
    if (n == 10) continue;
    const auto kr = wrap(fixture_descriptor(n), onto(), 1).kr;
    const auto cluster = kr.objects_of(kr.id, vocab::kPredicts);
    ASSERT_EQ(cluster.size(), 1u);
    EXPECT_EQ(cluster[0].rfind("Cluster_", 0), 0u);
    for (const auto& r : kr.relations) {
      if (r.subject == cluster[0]) EXPECT_TRUE(r.predicate != vocab::kHasTransformation && r.predicate != vocab::kHasState);
    }
  }
  Descriptor d = minimal("clustering");
  d.targets = {{"Yield", std::nullopt, std::nullopt}};
  EXPECT_EQ(kind_of([&] { wrap(d, onto(), 1); }), ErrorKind::invalid_descriptor);
}

TEST(Wrap, StatesIffFactKnowledge) {
  int facts = 0;
  for (int n = 1; n <= oak::testing::kFixtureItems; ++n) {
    const auto d = fixture_descriptor(n);
    const auto res = wrap(d, onto(), 1);
    bool role_states = false;
    for (const auto& s : res.kr.states) role_states |= s.owner.rfind("Evaluation", 0) != 0;
    EXPECT_EQ(role_states, res.knowledge == PatternKind::fact) << n;
    facts += res.knowledge == PatternKind::fact;
  }
  EXPECT_GE(facts, 3);
}

TEST(Wrap, FactStatesGoThroughTheirTransformation) {
  Descriptor d = minimal("regression");
  d.conditions = {{"SoilPH", "Tier5", StateInput{4.5, ""}}, {"Temperature", std::nullopt, StateInput{18.0, "oC"}}};
  d.targets = {{"Yield_Tier3", std::nullopt, std::nullopt}};
  d.targets = {{"Yield", "Yield_Tier3", StateInput{std::string("HighYield"), ""}}};
  const auto kr = assemble(d, onto(), 1).kr;
  EXPECT_TRUE(kr.relations.count(Relation::state("SoilPH_500", Label{"Strongly acidic"})));
  EXPECT_TRUE(kr.relations.count(Relation::state("Temperature_500", Quantity{18.0, "oC"})));
  EXPECT_TRUE(kr.relations.count(Relation::state("Yield_500", Label{"HighYield"})));
  EXPECT_TRUE(kr.relations.count(
      Relation::link("Yield_500", vocab::kHasTransformation, "Transformation_Yield_Tier3")));
  EXPECT_TRUE(validate_representation(kr, onto()).empty());
}

TEST(Wrap, StateAndTransformationErrors) {
  Descriptor d = minimal("classification");
  d.conditions = {{"SoilPH", "Tier5", StateInput{std::string("Medium"), ""}}};
  EXPECT_EQ(kind_of([&] { assemble(d, onto(), 1); }), ErrorKind::invalid_state);
  d.conditions = {{"SoilPH", "Tier5", StateInput{15.0, ""}}};
  EXPECT_EQ(kind_of([&] { assemble(d, onto(), 1); }), ErrorKind::invalid_state);
  d.conditions = {{"SoilPH", std::nullopt, StateInput{7.0, "kg"}}};
  EXPECT_EQ(kind_of([&] { assemble(d, onto(), 1); }), ErrorKind::invalid_state);
  d.conditions = {{"SoilPH", "Tier9", std::nullopt}};
  EXPECT_EQ(terms_of([&] { assemble(d, onto(), 1); }), std::vector<std::string>{"Tier9"});
  d.conditions = {{"SoilPH", "Yield_Tier3", std::nullopt}};
  EXPECT_EQ(kind_of([&] { assemble(d, onto(), 1); }), ErrorKind::unresolved_transformation);
  d.conditions = {{"SoilPH", std::nullopt, std::nullopt}};
  d.evaluation = {{"Accuracy", 1.5}};
  EXPECT_EQ(kind_of([&] { assemble(d, onto(), 1); }), ErrorKind::invalid_state);
  d.evaluation = {{"Happiness", 0.5}};
  EXPECT_EQ(kind_of([&] { assemble(d, onto(), 1); }), ErrorKind::unresolved_transformation);
}

TEST(Wrap, MissingIdentityIsCreated) {
  OntologyBuilder b;
  b.concept_("Thing", Namespace::domain)
      .concept_("Soil", Namespace::domain, "Thing")
      .concept_("Yield", Namespace::domain, "Thing")
      .concept_("Classifier", Namespace::computing);
  b.transformation(Transformation::algorithm("Algorithm_SVM", *b.peek().find_concept("Classifier"),
                                             Task::classification));
  const auto o = b.build();
  Descriptor d;
  d.task = "classification";
  d.algorithms = {"SVM"};
  d.conditions = {{"Soil", std::nullopt, std::nullopt}};
  d.targets = {{"Yield", std::nullopt, std::nullopt}};
  const auto res = assemble(d, o, 7);
  EXPECT_EQ(res.kr.id, "Classifier_007");
  EXPECT_TRUE(res.ontology.find_transformation("Transformation_Soil"));
  EXPECT_TRUE(res.ontology.has_transformation_link("Yield", "Transformation_Yield"));
  EXPECT_FALSE(o.find_transformation("Transformation_Soil"));
}

TEST(Wrap, MinimalItemGradesBelowThreshold) {
  const auto d = minimal("classification");
  const auto res = assemble(d, onto(), 1);
  EXPECT_EQ(res.grade.total, 24);
  EXPECT_EQ(res.grade.principal, 24);
  EXPECT_FALSE(res.grade.accepted);

  const auto id = publish::kmap_iri("Classifier_500");
  std::set<std::string> predicates;
  for (const auto& t : subject_triples(publish::kr_triples(res.kr), id)) {
    predicates.insert(rdf::local_name(t.p.value));
  }
  EXPECT_EQ(predicates, (std::set<std::string>{"type", "label", "hasAlgorithm", "hasCondition", "predicts", "grade"}));
  const auto all = publish::kr_triples(res.kr);
  for (const char* inst : {"SoilPH_500", "Yield_500"}) {
    EXPECT_TRUE(std::count(all.begin(), all.end(),
                           rdf::Triple{publish::kmap_iri(inst), publish::type_iri(),
                                       publish::onto_iri(std::string(inst).substr(0, std::string(inst).find('_')))}));
  }
  for (const auto& t : all) EXPECT_NE(rdf::local_name(t.p.value), "hasState");

  try {
    wrap(d, onto(), 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::below_threshold);
    EXPECT_EQ(e.detail(), "24");
  }
}

TEST(Wrap, MissingPrincipalDataIsRejected) {
  auto d = classifier_010();
  d.algorithms.clear();
  EXPECT_EQ(kind_of([&] { wrap(d, onto(), 1); }), ErrorKind::invalid_descriptor);
  d = classifier_010();
  d.conditions.clear();
  EXPECT_EQ(kind_of([&] { wrap(d, onto(), 1); }), ErrorKind::invalid_descriptor);
  d = classifier_010();
  d.targets.clear();
  EXPECT_EQ(kind_of([&] { wrap(d, onto(), 1); }), ErrorKind::invalid_descriptor);
}

TEST(Wrap, FullDescriptorGradesHundred) {
  Descriptor d = minimal("regression");
  d.conditions = {{"SoilPH", "Tier5", std::nullopt}};
  d.targets = {{"Yield", "Tier3", std::nullopt}};
  d.dataset = DatasetSpec{"Field trial", 120};
  d.evaluation = {{"RMSE", 0.4}};
  d.locations = {"Ireland"};
  d.context = {"Barley"};
  d.source = SourceSpec{"a-1", "Title", 2018};
  const auto res = wrap(d, onto(), 1);
  EXPECT_EQ(res.grade.total, 100);
  EXPECT_TRUE(validate_representation(res.kr, res.ontology).empty());
}

TEST(Wrap, IsDeterministic) {
  for (int n : {3, 10, 15, 22}) {
    const auto d = fixture_descriptor(n);
    EXPECT_EQ(to_turtle(wrap(d, onto(), 40).kr), to_turtle(wrap(d, onto(), 40).kr));
  }
  auto d = fixture_descriptor(3);
  d.item.reset();
  EXPECT_EQ(wrap(d, onto(), 41).kr.id, "Regressor_041");
}

TEST(Wrap, ExtractRoundTrip) {
  const auto repo = oak::testing::fixture_repository();
  const auto snap = repo->snapshot();
  for (int n = 1; n <= oak::testing::kFixtureItems; ++n) {
    const auto res = wrap(fixture_descriptor(n), *repo->ontology(), 1);
    const auto back = publish::extract_representation(*snap, res.kr.id, *repo->ontology());
    EXPECT_EQ(back, res.kr) << res.kr.id;
  }
  EXPECT_EQ(kind_of([&] { publish::extract_representation(*snap, "Classifier_999", *repo->ontology()); }),
            ErrorKind::not_found);
}

TEST(Repository, AllocatesItemNumbers) {
  Repository repo(agri::mini_ontology());
  EXPECT_EQ(repo.next_item(), 1u);
  auto d = fixture_descriptor(4);
  d.item.reset();
  EXPECT_EQ(repo.add(d).kr.id, "Association_001");
  EXPECT_EQ(repo.add(classifier_010()).kr.id, "Classifier_010");
  EXPECT_EQ(repo.next_item(), 11u);
  EXPECT_EQ(repo.add(d).kr.id, "Association_011");
  EXPECT_EQ(kind_of([&] { repo.add(classifier_010()); }), ErrorKind::inconsistent_input);
  EXPECT_EQ(publish::kmap_ids(*repo.snapshot()).size(), 3u);
}

TEST(Repository, ConcurrentAddsGetDistinctIds) {
  Repository repo(agri::mini_ontology());
  constexpr int kThreads = 4, kEach = 5;
  std::vector<std::vector<std::string>> got(kThreads);
  std::vector<std::thread> ts;
  for (int t = 0; t < kThreads; ++t) {
    ts.emplace_back([&, t] {
      for (int i = 0; i < kEach; ++i) {
        auto d = fixture_descriptor(1 + (t * kEach + i) % 9);
        d.item.reset();
        got[t].push_back(repo.add(d).kr.id);
      }
    });
  }
  for (auto& t : ts) t.join();
  std::set<std::string> suffixes;
  for (const auto& ids : got) {
    for (const auto& id : ids) suffixes.insert(instance_suffix(id));
  }
  EXPECT_EQ(suffixes.size(), static_cast<std::size_t>(kThreads * kEach));
  EXPECT_EQ(repo.next_item(), static_cast<std::uint64_t>(kThreads * kEach + 1));
}

TEST(Repository, PersistsAndReopens) {
  TempDir dir;
  const auto path = dir / "store.ttl";
  std::size_t size = 0;
  {
    Repository repo(agri::mini_ontology(), path);
    repo.add(classifier_010());
    size = repo.snapshot()->size();
  }
  Repository again(agri::mini_ontology(), path);
  EXPECT_EQ(again.snapshot()->size(), size);
  EXPECT_EQ(again.next_item(), 11u);
  EXPECT_EQ(publish::kmap_ids(*again.snapshot()), std::vector<std::string>{"Classifier_010"});

  EXPECT_EQ(again.import_turtle("AgriKMaps:X_001 AgriComO:grade 70 ."), 1u);
  EXPECT_EQ(again.import_turtle("AgriKMaps:X_001 AgriComO:grade 70 ."), 0u);
  EXPECT_EQ(kind_of([&] { again.import_turtle("nope:x nope:y nope:z ."); }), ErrorKind::unknown_prefix);
  EXPECT_EQ(rdf::load_snapshot(path).size(), size + 1);
}
