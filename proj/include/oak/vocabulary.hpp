#pragma once

#include <array>
#include <map>
#include <string>
#include <string_view>

namespace oak::vocab {

inline constexpr std::string_view kRdf = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr std::string_view kRdfs = "http://www.w3.org/2000/01/rdf-schema#";
inline constexpr std::string_view kOwl = "http://www.w3.org/2002/07/owl#";
inline constexpr std::string_view kXsd = "http://www.w3.org/2001/XMLSchema#";
inline constexpr std::string_view kAgriComO = "http://www.ucd.ie/consus/AgriComO#";
inline constexpr std::string_view kAgriKMaps = "http://www.ucd.ie/consus/AgriKMaps#";

inline std::map<std::string, std::string> standard_prefixes() {
  return {
      {"rdf", std::string(kRdf)},
      {"rdfs", std::string(kRdfs)},
      {"owl", std::string(kOwl)},
      {"AgriComO", std::string(kAgriComO)},
      {"AgriKMaps", std::string(kAgriKMaps)},
  };
}

inline std::string rdf(std::string_view local) { return std::string(kRdf) + std::string(local); }
inline std::string rdfs(std::string_view local) { return std::string(kRdfs) + std::string(local); }
inline std::string owl(std::string_view local) { return std::string(kOwl) + std::string(local); }
inline std::string agricomo(std::string_view local) {
  return std::string(kAgriComO) + std::string(local);
}
inline std::string agrikmaps(std::string_view local) {
  return std::string(kAgriKMaps) + std::string(local);
}

// Relation names as they appear in the knowledge model. `isA` and
// `subClassOf` publish as rdf:type and rdfs:subClassOf; the rest live in the
// AgriComO namespace under the same local name.
inline constexpr std::string_view kSubClassOf = "subClassOf";
inline constexpr std::string_view kIsA = "isA";
inline constexpr std::string_view kHasTransformation = "hasTransformation";
inline constexpr std::string_view kHasState = "hasState";
inline constexpr std::string_view kHasAlgorithm = "hasAlgorithm";
inline constexpr std::string_view kHasCondition = "hasCondition";
inline constexpr std::string_view kPredicts = "predicts";
inline constexpr std::string_view kHasDataset = "hasDataset";
inline constexpr std::string_view kEvaluatedBy = "evaluatedBy";
inline constexpr std::string_view kHasEvaluationMetric = "hasEvaluationMetric";
inline constexpr std::string_view kHasLocation = "hasLocation";
inline constexpr std::string_view kRelatedTo = "relatedTo";
inline constexpr std::string_view kDefinedIn = "definedIn";
inline constexpr std::string_view kAffects = "affects";
inline constexpr std::string_view kSusceptibleTo = "susceptibleTo";
inline constexpr std::string_view kPartOf = "partOf";

inline constexpr std::array<std::string_view, 16> kRelationVocabulary = {
    kSubClassOf,  kIsA,           kHasTransformation,   kHasState,
    kHasAlgorithm, kHasCondition, kPredicts,            kHasDataset,
    kEvaluatedBy, kHasEvaluationMetric, kHasLocation,   kRelatedTo,
    kDefinedIn,   kAffects,       kSusceptibleTo,       kPartOf,
};

inline bool is_relation(std::string_view name) {
  for (auto r : kRelationVocabulary) {
    if (r == name) return true;
  }
  return false;
}

/// IRI of a relation name from the vocabulary above.
inline std::string relation_iri(std::string_view name) {
  if (name == kIsA) return rdf("type");
  if (name == kSubClassOf) return rdfs("subClassOf");
  return agricomo(name);
}

// Literal-valued properties (never relations between elements).
inline constexpr std::string_view kGrade = "grade";
inline constexpr std::string_view kHasUnit = "hasUnit";
inline constexpr std::string_view kIdentifier = "identifier";
inline constexpr std::string_view kTitle = "title";
inline constexpr std::string_view kYear = "year";
inline constexpr std::string_view kDatasetSize = "datasetSize";
inline constexpr std::string_view kTransformationKind = "transformationKind";
inline constexpr std::string_view kAlgorithmTask = "algorithmTask";
inline constexpr std::string_view kHasTier = "hasTier";

// Class names used for typing published elements.
inline constexpr std::string_view kKnowledgeModel = "KnowledgeModel";
inline constexpr std::string_view kDataTransformation = "DataTransformation";
inline constexpr std::string_view kComputingAlgorithm = "ComputingAlgorithm";
inline constexpr std::string_view kEvaluationMetric = "EvaluationMetric";

}  // namespace oak::vocab
