#include "deodata/baselines.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "deodata/impurity.hpp"

namespace deodata {

class TreeBuilder {
 public:
  using Chooser = std::function<std::size_t(const std::vector<std::size_t>& rows,
                                            const std::vector<std::size_t>& candidates)>;

  TreeBuilder(const CategoricalDataset& train, Chooser choose) : train_(train), choose_(std::move(choose)) {}

  DecisionTree build() {
    if (train_.num_rows() == 0) throw std::invalid_argument("cannot train a tree on an empty dataset");
    tree_.labels_ = train_.outcome_labels();
    tree_.num_attributes_ = train_.num_attributes();
    for (OutcomeId id = 0; id < train_.num_outcomes(); ++id) tree_.fallback_rank_.push_back(train_.fallback_rank(id));

    std::vector<std::size_t> rows(train_.num_rows());
    std::iota(rows.begin(), rows.end(), std::size_t{0});
    std::vector<std::size_t> unused(train_.num_attributes());
    std::iota(unused.begin(), unused.end(), std::size_t{0});
    grow(rows, unused);
    return std::move(tree_);
  }

 private:
  OutcomeCounts count(const std::vector<std::size_t>& rows) const {
    OutcomeCounts c(train_.num_outcomes(), 0);
    for (auto r : rows) ++c[train_.outcome_id(r)];
    return c;
  }

  std::size_t grow(const std::vector<std::size_t>& rows, std::vector<std::size_t> unused) {
    auto counts = count(rows);
    const std::size_t index = tree_.nodes_.size();
    const bool pure = std::count_if(counts.begin(), counts.end(), [](auto c) { return c > 0; }) <= 1;
    if (pure || unused.empty()) {
      tree_.nodes_.emplace_back(DecisionTree::Leaf{std::move(counts)});
      return index;
    }

    const std::size_t attribute = choose_(rows, unused);
    std::erase(unused, attribute);

    // Partition rows by the attribute value.
    const auto column = train_.column(attribute);
    std::map<SymbolCode, std::vector<std::size_t>> parts;
    for (auto r : rows) parts[column[r]].push_back(r);

    tree_.nodes_.emplace_back(DecisionTree::Internal{attribute, {}, std::move(counts)});
    for (const auto& [code, subset] : parts) {
      const std::size_t child = grow(subset, unused);
      std::get<DecisionTree::Internal>(tree_.nodes_[index])
          .children.emplace(train_.dictionary(attribute).symbol(code), child);
    }
    return index;
  }

  const CategoricalDataset& train_;
  Chooser choose_;
  DecisionTree tree_;
};

namespace {

double split_entropy(const CategoricalDataset& train, const std::vector<std::size_t>& rows, std::size_t attribute) {
  const auto column = train.column(attribute);
  std::map<SymbolCode, OutcomeCounts> parts;
  for (auto r : rows) {
    auto& c = parts[column[r]];
    if (c.empty()) c.assign(train.num_outcomes(), 0);
    ++c[train.outcome_id(r)];
  }
  // Terms are summed in sorted order so that attributes inducing the same
  // partition score identically and the lowest-index rule decides.
  std::vector<double> terms;
  for (const auto& [code, c] : parts) terms.push_back(std::accumulate(c.begin(), c.end(), 0.0) * entropy(c));
  std::sort(terms.begin(), terms.end());
  return std::accumulate(terms.begin(), terms.end(), 0.0) / static_cast<double>(rows.size());
}

}  // namespace

DecisionTree train_id3(const CategoricalDataset& train) {
  TreeBuilder builder(train, [&](const std::vector<std::size_t>& rows, const std::vector<std::size_t>& candidates) {
    std::size_t best = candidates.front();
    double best_h = std::numeric_limits<double>::infinity();
    for (auto a : candidates) {  // ascending, so strict < keeps the lowest index
      const double h = split_entropy(train, rows, a);
      if (h < best_h) {
        best_h = h;
        best = a;
      }
    }
    return best;
  });
  return builder.build();
}

DecisionTree train_random_tree(const CategoricalDataset& train, std::mt19937_64& rng) {
  TreeBuilder builder(train, [&](const std::vector<std::size_t>&, const std::vector<std::size_t>& candidates) {
    std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
    return candidates[pick(rng)];
  });
  return builder.build();
}

std::size_t DecisionTree::depth() const {
  std::function<std::size_t(std::size_t)> walk = [&](std::size_t i) -> std::size_t {
    if (const auto* node = std::get_if<Internal>(&nodes_[i])) {
      std::size_t d = 0;
      for (const auto& [value, child] : node->children) d = std::max(d, walk(child));
      return d + 1;
    }
    return 0;
  };
  return nodes_.empty() ? 0 : walk(0);
}

LikelihoodData predict_tree(const DecisionTree& tree, const QueryEntry& query) {
  if (query.size() != tree.num_attributes_) {
    throw std::invalid_argument("query has " + std::to_string(query.size()) + " values, tree expects " +
                                std::to_string(tree.num_attributes_));
  }
  std::size_t index = 0;
  const OutcomeCounts* counts = nullptr;
  while (counts == nullptr) {
    const auto& node = tree.nodes_[index];
    if (const auto* leaf = std::get_if<DecisionTree::Leaf>(&node)) {
      counts = &leaf->counts;
    } else {
      const auto& internal = std::get<DecisionTree::Internal>(node);
      auto it = internal.children.find(query[internal.attribute]);
      if (it == internal.children.end()) {
        counts = &internal.fallback_counts;
      } else {
        index = it->second;
      }
    }
  }

  std::vector<OutcomeId> order;
  for (OutcomeId id = 0; id < counts->size(); ++id) {
    if ((*counts)[id] > 0) order.push_back(id);
  }
  std::sort(order.begin(), order.end(), [&](OutcomeId a, OutcomeId b) {
    if ((*counts)[a] != (*counts)[b]) return (*counts)[a] > (*counts)[b];
    return tree.fallback_rank_[a] < tree.fallback_rank_[b];
  });
  LikelihoodData out;
  for (auto id : order) out.entries.push_back({tree.labels_[id], static_cast<double>((*counts)[id])});
  out.tie_broken = out.entries.size() > 1 && out.entries[0].score == out.entries[1].score;
  return out;
}

Symbol predict_uniform_random(const std::vector<Symbol>& outcomes, std::mt19937_64& rng) {
  if (outcomes.empty()) throw std::invalid_argument("uniform random prediction over an empty outcome set");
  std::uniform_int_distribution<std::size_t> pick(0, outcomes.size() - 1);
  return outcomes[pick(rng)];
}

}  // namespace deodata
