#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <random>
#include <variant>
#include <vector>

#include "deodata/dataset.hpp"
#include "deodata/predictors.hpp"

namespace deodata {

using OutcomeCounts = std::vector<std::uint32_t>;  // indexed by outcome id

/// Unpruned categorical decision tree. Nodes live in a flat arena; index 0
/// is the root.
class DecisionTree {
 public:
  struct Leaf {
    OutcomeCounts counts;
  };
  struct Internal {
    std::size_t attribute = 0;
    std::map<Symbol, std::size_t> children;  // value -> node index
    OutcomeCounts fallback_counts;           // outcomes of rows reaching this node
  };
  using Node = std::variant<Internal, Leaf>;

  const std::vector<Node>& nodes() const noexcept { return nodes_; }
  const Node& root() const { return nodes_.front(); }
  std::size_t depth() const;

  const std::vector<Symbol>& outcome_labels() const noexcept { return labels_; }

 private:
  friend class TreeBuilder;
  friend LikelihoodData predict_tree(const DecisionTree& tree, const QueryEntry& query);

  std::vector<Node> nodes_;
  std::vector<Symbol> labels_;
  std::vector<std::uint32_t> fallback_rank_;
  std::size_t num_attributes_ = 0;
};

/// ID3: split on the unused attribute with the lowest weighted child entropy
/// (lowest index on ties). Stops when the node is pure or no attribute is left.
DecisionTree train_id3(const CategoricalDataset& train);

/// As train_id3, but the split attribute is drawn uniformly from the unused ones.
DecisionTree train_random_tree(const CategoricalDataset& train, std::mt19937_64& rng);

/// Majority vote at the reached leaf, or at the deepest node whose split has
/// no branch for the query value. Ties use the training fallback rule.
LikelihoodData predict_tree(const DecisionTree& tree, const QueryEntry& query);

/// Uniform draw over the given distinct outcomes. Throws on an empty set.
Symbol predict_uniform_random(const std::vector<Symbol>& outcomes, std::mt19937_64& rng);

}  // namespace deodata
