#pragma once

#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "deodata/baselines.hpp"
#include "deodata/dataset.hpp"
#include "deodata/impurity.hpp"
#include "deodata/predictors.hpp"

namespace deodata {

enum class AlgorithmKind { delanga, varsate, rasturnat, id3, random_tree, uniform_random };

/// Parameters picked up by the generic ids "deodata_delanga" (tie_break),
/// "deodata_varsate" (measure) and "deodata_rasturnat" (base).
struct AlgorithmParams {
  bool tie_break = false;
  Impurity measure = Impurity::entropy;
  double base = 2.0;
};

struct AlgorithmSpec {
  std::string id;
  AlgorithmKind kind = AlgorithmKind::delanga;
  bool tie_break = false;
  Impurity measure = Impurity::entropy;
  double base = 2.0;
};

/// Resolves an algorithm id. Recognized ids:
///   deodata_delanga, deodata_tbreak_delanga,
///   deodata_varsate, deodata_varsate_{entropy,gini,energy},
///   deodata_rasturnat, deodata_rasturnat_pow_{e,<number>},
///   decision_tree_id3, random_tree, uniform_random.
/// Throws std::invalid_argument for anything else.
AlgorithmSpec parse_algorithm(std::string_view id, const AlgorithmParams& params = {});

/// The seven accuracy-table ids, best-known first.
std::vector<std::string> default_algorithms();

/// A fitted classifier. Lazy predictors keep a reference to the training
/// set, which must outlive the classifier.
class Classifier {
 public:
  /// Trees are grown here; `rng` is used by random_tree only.
  static Classifier fit(const AlgorithmSpec& spec, const CategoricalDataset& train, std::mt19937_64& rng);

  /// `rng` is used by uniform_random only.
  LikelihoodData predict(const QueryEntry& query, std::mt19937_64& rng) const;

  const AlgorithmSpec& spec() const noexcept { return spec_; }
  const DecisionTree* tree() const noexcept { return tree_ ? &*tree_ : nullptr; }

 private:
  Classifier(AlgorithmSpec spec, const CategoricalDataset& train) : spec_(std::move(spec)), train_(&train) {}

  AlgorithmSpec spec_;
  const CategoricalDataset* train_;
  std::optional<DecisionTree> tree_;
  std::vector<Symbol> outcomes_;  // sorted, for uniform_random
};

}  // namespace deodata
