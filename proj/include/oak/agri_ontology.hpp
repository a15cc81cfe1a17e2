#pragma once

// A compact crop-farming ontology: enough domain and data-mining concepts,
// transformations and named individuals to wrap and query mined knowledge.

#include <limits>

#include "oak/ontology_builder.hpp"

namespace oak::agri {

inline Ontology mini_ontology() {
  constexpr double inf = std::numeric_limits<double>::infinity();
  constexpr auto D = Namespace::domain;
  constexpr auto C = Namespace::computing;

  OntologyBuilder b;

  b.concept_("AgriConcept", D, {}, {"agriculture concept"});
  b.concept_("Crop", D, "AgriConcept", {"crops"});
  for (auto crop : {"Wheat", "Barley", "Maize", "Oats", "Rice"}) b.concept_(crop, D, "Crop");
  b.concept_("Soil", D, "AgriConcept");
  b.label("SoilPH", "Soil pH").concept_("SoilPH", D, "Soil", {"ph"});
  b.label("SoilCa", "Soil calcium").concept_("SoilCa", D, "Soil", {"calcium"});
  b.label("SoilMG", "Soil magnesium").concept_("SoilMG", D, "Soil", {"magnesium", "soilmg"});
  b.concept_("SoilMoisture", D, "Soil");
  b.concept_("Nitrogen", D, "Soil", {"soil n", "soiln", "soil nitrogen"});
  b.concept_("OrganicCarbon", D, "Soil");
  b.label("CEC", "Cation exchange capacity").concept_("CEC", D, "Soil");
  b.concept_("Weather", D, "AgriConcept");
  b.concept_("Temperature", D, "Weather", {"air temperature"});
  b.concept_("Rainfall", D, "Weather", {"precipitation"});
  b.concept_("SolarRadiation", D, "Weather");
  b.concept_("Management", D, "AgriConcept");
  b.concept_("SeedRate", D, "Management", {"seeding rate"});
  b.concept_("Fertiliser", D, "Management", {"fertilizer"});
  b.concept_("Irrigation", D, "Management");
  b.concept_("Yield", D, "AgriConcept", {"crop yield", "grain yield", "mean yield", "meanyield"});
  b.concept_("Disease", D, "AgriConcept");
  b.concept_("LeafRust", D, "Disease");
  b.concept_("Septoria", D, "Disease");
  b.concept_("Location", D, "AgriConcept");
  b.concept_("Country", D, "Location");

  b.concept_("ComputingConcept", C, {}, {"computing concept"});
  b.concept_("KnowledgeModel", C, "ComputingConcept", {"knowledge item"});
  b.concept_("DataMining", C, "KnowledgeModel");
  b.concept_("Classifier", C, "DataMining", {"classification"});
  b.concept_("Regressor", C, "DataMining", {"regression"});
  b.concept_("Clustering", C, "DataMining");
  b.concept_("Association", C, "DataMining", {"association rule"});
  b.concept_("Cluster", C, "ComputingConcept");
  b.concept_("Dataset", C, "ComputingConcept");
  b.concept_("Evaluation", C, "ComputingConcept");
  b.concept_("Article", C, "ComputingConcept", {"paper"});
  b.concept_("DataTransformation", C, "ComputingConcept");
  b.concept_("ComputingAlgorithm", C, "ComputingConcept", {"algorithm"});
  b.concept_("EvaluationMetric", C, "ComputingConcept", {"metric"});

  auto domain_of = [&](std::string_view name) { return *b.peek().find_concept(name); };

  // Data transformations.
  b.transformation(Transformation::identity("Transformation_SoilPH", domain_of("SoilPH"),
                                            Interval::closed(0, 14), "pH"));
  auto tier5 = Transformation::piecewise(
      "Transformation_SoilPH_Tier5", domain_of("SoilPH"),
      {
          {{0, 5, true, true}, "Strongly acidic"},
          {{5, 7, false, false}, "Acidic"},
          {Interval::point(7), "Neutral"},
          {{7, 10, false, true}, "Alkaline"},
          {{10, 14, false, true}, "Strongly alkaline"},
      });
  b.transformation(tier5);
  b.transformation(Transformation::identity("Transformation_Yield", domain_of("Yield"),
                                            {0, inf, true, false}, "t/ha"));
  b.transformation(Transformation::piecewise("Transformation_Yield_Tier3", domain_of("Yield"),
                                             {
                                                 {{0, 6, true, false}, "LowYield"},
                                                 {{6, 9, true, false}, "MediumYield"},
                                                 {{9, inf, true, false}, "HighYield"},
                                             }));
  b.transformation(Transformation::identity("Transformation_Temperature", domain_of("Temperature"),
                                            Interval::closed(-60, 60), "oC"));
  auto temp_norm = Transformation::linear("Transformation_Temperature_Normalised",
                                          domain_of("Temperature"), Interval::closed(-30, 50),
                                          Interval::closed(0, 1));
  b.transformation(temp_norm, {"normalised temperature", "normalized temperature"});
  b.transformation(Transformation::identity("Transformation_Rainfall", domain_of("Rainfall"),
                                            {0, inf, true, false}, "mm"));
  b.transformation(Transformation::piecewise("Transformation_Rainfall_Tier3", domain_of("Rainfall"),
                                             {
                                                 {{0, 300, true, false}, "LowRainfall"},
                                                 {{300, 800, true, false}, "MediumRainfall"},
                                                 {{800, inf, true, false}, "HighRainfall"},
                                             }));
  b.transformation(Transformation::identity("Transformation_SeedRate", domain_of("SeedRate"),
                                            {0, inf, true, false}, "seeds/m2"));
  b.transformation(Transformation::identity("Transformation_Nitrogen", domain_of("Nitrogen"),
                                            {0, inf, true, false}, "kg/ha"));
  b.transformation(Transformation::piecewise("Transformation_Nitrogen_Tier3", domain_of("Nitrogen"),
                                             {
                                                 {{0, 50, true, false}, "LowNitrogen"},
                                                 {{50, 150, true, false}, "MediumNitrogen"},
                                                 {{150, inf, true, false}, "HighNitrogen"},
                                             }));
  b.default_identities();

  // Computing algorithms.
  struct Algo {
    const char* id;
    const char* owner;
    Task task;
    const char* label;
  };
  const Algo algorithms[] = {
      {"Algorithm_CPANN", "Classifier", Task::classification,
       "Counter-propagation Artificial Neural Network"},
      {"Algorithm_SKN", "Classifier", Task::classification, "Supervised Kohonen Network"},
      {"Algorithm_XYF", "Classifier", Task::classification, "XY-fusion network"},
      {"Algorithm_DecisionTree", "Classifier", Task::classification, "Decision Tree"},
      {"Algorithm_RandomForest", "Classifier", Task::classification, "Random Forest"},
      {"Algorithm_SVM", "Classifier", Task::classification, "Support Vector Machine"},
      {"Algorithm_NeuralNetwork", "Classifier", Task::classification, "Neural Networks"},
      {"Algorithm_PCA", "Regressor", Task::regression, "Principal Component Analysis"},
      {"Algorithm_MLR", "Regressor", Task::regression, "Multi-Linear Regression"},
      {"Algorithm_RegressionTree", "Regressor", Task::regression, "Regression Tree"},
      {"Algorithm_KMeans", "Clustering", Task::clustering, "K-Means"},
      {"Algorithm_Hierarchical", "Clustering", Task::clustering, "Hierarchical Clustering"},
      {"Algorithm_Apriori", "Association", Task::association, "Apriori"},
      {"Algorithm_FPGrowth", "Association", Task::association, "FP-growth"},
  };
  for (const auto& a : algorithms) {
    auto t = Transformation::algorithm(a.id, domain_of(a.owner), a.task);
    t.label = a.label;
    b.transformation(t);
  }

  // Evaluation metrics.
  struct Metric {
    const char* id;
    Interval range;
    const char* label;
  };
  const Metric metrics[] = {
      {"Metric_Accuracy", Interval::closed(0, 1), "Accuracy"},
      {"Metric_RMSE", {0, inf, true, false}, "Root Mean Square Error"},
      {"Metric_R2", {-inf, 1, false, true}, "Coefficient of Determination"},
      {"Metric_Silhouette", Interval::closed(-1, 1), "Silhouette"},
      {"Metric_Confidence", Interval::closed(0, 1), "Confidence"},
  };
  for (const auto& m : metrics) {
    auto t = Transformation::identity(m.id, domain_of("Evaluation"), m.range);
    t.label = m.label;
    b.transformation(t);
  }

  b.label("United_Kingdom", "United Kingdom").individual("United_Kingdom", "Country", {"uk", "u k", "britain"});
  b.individual("Ireland", "Country");
  b.individual("France", "Country");
  b.individual("Greece", "Country");
  b.individual("India", "Country");
  b.individual("Australia", "Country");

  b.relation("LeafRust", vocab::kAffects, "Wheat");
  b.relation("Wheat", vocab::kSusceptibleTo, "LeafRust");
  b.relation("Septoria", vocab::kAffects, "Wheat");
  b.relation("Wheat", vocab::kSusceptibleTo, "Septoria");

  return b.build();
}

}  // namespace oak::agri
