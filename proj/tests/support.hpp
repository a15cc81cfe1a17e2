#pragma once

// Shared test helpers: fixture paths, the 30-item fixture repository and
// scratch directories.

#include <algorithm>
#include <atomic>
#include <memory>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include <unistd.h>

#include "oak/agri_ontology.hpp"
#include "oak/repository.hpp"

namespace oak::testing {

inline std::filesystem::path fixture(const std::string& name) {
  return std::filesystem::path(OAK_FIXTURES) / name;
}

inline std::string read_fixture(const std::string& name) { return rdf::read_file(fixture(name)); }

inline Descriptor classifier_010() { return parse_descriptor(read_fixture("classifier_010.json")); }

/// Descriptor of fixture item `n` (1..30). Item 10 is the reference
/// classifier; the rest cycle through tasks, conditions, states and roles so
/// that every query template has something to find.
inline Descriptor fixture_descriptor(int n) {
  if (n == 10) return classifier_010();
  std::mt19937 rng(1000 + n);
  auto pick = [&](const std::vector<std::string>& pool) {
    return pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
  };

  Descriptor d;
  d.item = static_cast<std::uint64_t>(n);
  static const char* tasks[] = {"association", "classification", "clustering", "regression"};
  d.task = tasks[n % 4];
  const auto task = *parse_task(d.task);

  switch (task) {
    case Task::classification:
      d.algorithms = {pick({"DecisionTree", "RandomForest", "SVM", "NeuralNetwork"}), "CPANN"};
      break;
    case Task::regression: d.algorithms = {pick({"MLR", "PCA", "RegressionTree"})}; break;
    case Task::clustering: d.algorithms = {pick({"KMeans", "Hierarchical"})}; break;
    case Task::association: d.algorithms = {pick({"Apriori", "FPGrowth"})}; break;
  }

  // Conditions with their optional tier transformation and an in-range value.
  struct Pool {
    const char* concept_name;
    const char* transformation;
    double value;
  };
  static const Pool pool[] = {
      {"SoilPH", "Tier5", 6.5},         {"Nitrogen", "Tier3", 120},     {"Temperature", "Normalised", 18},
      {"Rainfall", "Tier3", 650},       {"SeedRate", nullptr, 300},     {"SoilMoisture", nullptr, 0.3},
      {"OrganicCarbon", nullptr, 2.1},  {"SolarRadiation", nullptr, 15}, {"Fertiliser", nullptr, 80},
  };
  const bool tiered = n % 3 == 0;
  const bool fact = n % 5 == 0;
  std::vector<std::size_t> order(std::size(pool));
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  const std::size_t k = 2 + static_cast<std::size_t>(n % 3);
  // Every fourth item is guaranteed a Nitrogen condition.
  if (n % 4 == 1 && std::find(order.begin(), order.begin() + k, 1) == order.begin() + k) order[0] = 1;
  for (std::size_t i = 0; i < k; ++i) {
    const auto& p = pool[order[i]];
    RoleSpec r{p.concept_name, std::nullopt, std::nullopt};
    if (tiered && p.transformation) r.transformation = p.transformation;
    if (fact && r.transformation) r.state = StateInput{p.value, ""};
    d.conditions.push_back(r);
  }

  if (task == Task::classification || task == Task::regression) {
    RoleSpec y{"Yield", std::nullopt, std::nullopt};
    if (tiered || fact) y.transformation = "Tier3";
    if (fact) y.state = StateInput{9.5, ""};
    d.targets.push_back(y);
  } else if (task == Task::association) {
    d.targets.push_back({n % 8 == 0 ? "Septoria" : "LeafRust", std::nullopt, std::nullopt});
  }

  if (n % 2 == 0) {
    d.dataset = DatasetSpec{n % 6 == 0 ? "PlantVillage" : "Field trial " + std::to_string(n), 100 + 10 * n};
  }
  static const std::pair<Task, const char*> metric[] = {{Task::classification, "Accuracy"},
                                                        {Task::regression, "RMSE"},
                                                        {Task::clustering, "Silhouette"},
                                                        {Task::association, "Confidence"}};
  for (const auto& [t, m] : metric) {
    if (t == task && n % 7 != 0) d.evaluation.push_back({m, task == Task::regression ? 0.8 : 0.75});
  }
  static const char* countries[] = {"United Kingdom", "Ireland", "France", "Greece", "India", "Australia"};
  if (n % 4 == 1 || n % 4 == 3) d.locations = {"United Kingdom"};
  else if (n % 5 != 4) d.locations = {countries[n % 6]};
  static const char* crops[] = {"Wheat", "Barley", "Maize", "Oats", "Rice"};
  if (n % 9 != 8) d.context = {n % 2 == 1 ? "Wheat" : crops[n % 5]};
  d.source = SourceSpec{"article-" + std::to_string(n), "Study " + std::to_string(n), 2000 + n % 20};
  return d;
}

inline constexpr int kFixtureItems = 30;

/// In-memory repository holding the ontology and all fixture items.
inline std::unique_ptr<Repository> fixture_repository() {
  auto repo = std::make_unique<Repository>(agri::mini_ontology());
  for (int n = 1; n <= kFixtureItems; ++n) repo->add(fixture_descriptor(n));
  return repo;
}

/// Scratch directory removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("oak_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

}  // namespace oak::testing
