#include "deodata/algorithms.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace deodata {

namespace {

constexpr std::string_view kVarsatePrefix = "deodata_varsate_";
constexpr std::string_view kPowPrefix = "deodata_rasturnat_pow_";

[[noreturn]] void unknown(std::string_view id) {
  throw std::invalid_argument("unknown algorithm id '" + std::string(id) + "'");
}

}  // namespace

AlgorithmSpec parse_algorithm(std::string_view id, const AlgorithmParams& params) {
  AlgorithmSpec spec;
  spec.id = std::string(id);
  spec.measure = params.measure;
  spec.base = params.base;

  if (id == "deodata_delanga") {
    spec.kind = AlgorithmKind::delanga;
    spec.tie_break = params.tie_break;
  } else if (id == "deodata_tbreak_delanga") {
    spec.kind = AlgorithmKind::delanga;
    spec.tie_break = true;
  } else if (id == "deodata_varsate") {
    spec.kind = AlgorithmKind::varsate;
  } else if (id.starts_with(kVarsatePrefix)) {
    spec.kind = AlgorithmKind::varsate;
    try {
      spec.measure = parse_impurity(id.substr(kVarsatePrefix.size()));
    } catch (const std::invalid_argument&) {
      unknown(id);
    }
  } else if (id == "deodata_rasturnat") {
    spec.kind = AlgorithmKind::rasturnat;
  } else if (id.starts_with(kPowPrefix)) {
    spec.kind = AlgorithmKind::rasturnat;
    const auto text = id.substr(kPowPrefix.size());
    if (text == "e") {
      spec.base = std::numbers::e;
    } else {
      double base = 0;
      auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), base);
      if (ec != std::errc{} || ptr != text.data() + text.size()) unknown(id);
      spec.base = base;
    }
  } else if (id == "decision_tree_id3") {
    spec.kind = AlgorithmKind::id3;
  } else if (id == "random_tree") {
    spec.kind = AlgorithmKind::random_tree;
  } else if (id == "uniform_random") {
    spec.kind = AlgorithmKind::uniform_random;
  } else {
    unknown(id);
  }
  if (spec.kind == AlgorithmKind::rasturnat && !(spec.base > 1.0 && std::isfinite(spec.base))) {
    throw std::invalid_argument("exponent base must be finite and > 1 for '" + spec.id + "'");
  }
  return spec;
}

std::vector<std::string> default_algorithms() {
  return {"deodata_rasturnat_pow_e", "deodata_tbreak_delanga", "deodata_varsate_entropy", "deodata_delanga",
          "decision_tree_id3",       "random_tree",            "uniform_random"};
}

Classifier Classifier::fit(const AlgorithmSpec& spec, const CategoricalDataset& train, std::mt19937_64& rng) {
  if (train.num_rows() == 0) throw std::invalid_argument("cannot fit on an empty training set");
  Classifier c(spec, train);
  switch (spec.kind) {
    case AlgorithmKind::id3:
      c.tree_ = train_id3(train);
      break;
    case AlgorithmKind::random_tree:
      c.tree_ = train_random_tree(train, rng);
      break;
    case AlgorithmKind::uniform_random:
      c.outcomes_ = train.outcome_labels();
      std::sort(c.outcomes_.begin(), c.outcomes_.end());
      break;
    default:
      break;
  }
  return c;
}

LikelihoodData Classifier::predict(const QueryEntry& query, std::mt19937_64& rng) const {
  switch (spec_.kind) {
    case AlgorithmKind::delanga:
      return predict_delanga(*train_, query, spec_.tie_break);
    case AlgorithmKind::varsate:
      return predict_varsate(*train_, query, spec_.measure);
    case AlgorithmKind::rasturnat:
      return predict_rasturnat(*train_, query, spec_.base);
    case AlgorithmKind::id3:
    case AlgorithmKind::random_tree:
      return predict_tree(*tree_, query);
    case AlgorithmKind::uniform_random: {
      if (query.size() != train_->num_attributes()) throw std::invalid_argument("query arity mismatch");
      LikelihoodData out;
      out.entries.push_back({predict_uniform_random(outcomes_, rng), 1.0});
      return out;
    }
  }
  throw std::logic_error("unhandled algorithm kind");
}

}  // namespace deodata
