#include "deodata/predictors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "deodata/matching.hpp"

namespace deodata {

MatchScoreLists::MatchScoreLists(std::span<const MatchScore> row_scores, std::span<const OutcomeId> row_outcomes,
                                 std::size_t num_outcomes)
    : num_outcomes_(num_outcomes) {
  if (row_scores.size() != row_outcomes.size()) throw std::invalid_argument("score/outcome length mismatch");
  if (row_scores.empty()) return;
  const MatchScore top = *std::max_element(row_scores.begin(), row_scores.end());
  std::vector<std::vector<OutcomeId>> by_score(static_cast<std::size_t>(top) + 1);
  for (std::size_t r = 0; r < row_scores.size(); ++r) by_score[row_scores[r]].push_back(row_outcomes[r]);
  for (std::size_t s = by_score.size(); s-- > 0;) {
    if (!by_score[s].empty()) levels_.push_back({static_cast<MatchScore>(s), std::move(by_score[s])});
  }
}

std::size_t MatchScoreLists::total() const noexcept {
  std::size_t n = 0;
  for (const auto& l : levels_) n += l.outcomes.size();
  return n;
}

const MatchScoreLists::Level* MatchScoreLists::find(MatchScore score) const {
  for (const auto& l : levels_) {
    if (l.score == score) return &l;
  }
  return nullptr;
}

std::vector<std::uint32_t> MatchScoreLists::counts(std::size_t level) const {
  std::vector<std::uint32_t> c(num_outcomes_, 0);
  for (auto id : levels_.at(level).outcomes) ++c[id];
  return c;
}

namespace {

void require_nonempty(const CategoricalDataset& train) {
  if (train.num_rows() == 0) throw std::invalid_argument("prediction needs a nonempty training set");
}

}  // namespace

MatchScoreLists build_match_score_lists(const CategoricalDataset& train, const QueryEntry& query) {
  require_nonempty(train);
  const auto scores = entry_match_scores(train, query);
  return MatchScoreLists(scores, train.outcome_ids(), train.num_outcomes());
}

std::vector<OutcomeId> top_outcomes(std::span<const std::uint32_t> counts) {
  std::vector<OutcomeId> out;
  std::uint32_t best = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] == 0) continue;
    if (counts[i] > best) {
      best = counts[i];
      out.clear();
    }
    if (counts[i] == best) out.push_back(static_cast<OutcomeId>(i));
  }
  return out;
}

OutcomeId fallback_winner(const CategoricalDataset& train, std::span<const OutcomeId> tied) {
  if (tied.empty()) throw std::invalid_argument("fallback over an empty tie set");
  return *std::min_element(tied.begin(), tied.end(),
                           [&](OutcomeId a, OutcomeId b) { return train.fallback_rank(a) < train.fallback_rank(b); });
}

OutcomeId tie_break_descend(const MatchScoreLists& lists, std::vector<OutcomeId> tied, std::size_t start_level,
                            const CategoricalDataset& train) {
  if (tied.empty()) throw std::invalid_argument("tie_break_descend needs a tied set");
  std::vector<std::uint32_t> level_counts;
  for (std::size_t level = start_level + 1; level < lists.size() && tied.size() > 1; ++level) {
    level_counts.assign(lists.num_outcomes(), 0);
    for (auto id : lists.levels()[level].outcomes) ++level_counts[id];

    std::uint32_t best = 0;
    for (auto id : tied) best = std::max(best, level_counts[id]);
    if (best == 0) continue;  // none of the tied outcomes here
    std::erase_if(tied, [&](OutcomeId id) { return level_counts[id] != best; });
  }
  return tied.size() == 1 ? tied.front() : fallback_winner(train, tied);
}

std::vector<std::vector<std::uint32_t>> cascade_counts(const MatchScoreLists& lists) {
  std::vector<std::vector<std::uint32_t>> cascade;
  cascade.reserve(lists.size());
  std::vector<std::uint32_t> acc(lists.num_outcomes(), 0);
  for (const auto& level : lists.levels()) {
    for (auto id : level.outcomes) ++acc[id];
    cascade.push_back(acc);
  }
  return cascade;
}

std::vector<double> cascade_scores(const MatchScoreLists& lists, Impurity measure) {
  std::vector<double> scores;
  for (const auto& counts : cascade_counts(lists)) scores.push_back(preference_score(measure, counts));
  return scores;
}

LikelihoodData rank_outcomes(const CategoricalDataset& train, std::span<const double> scores,
                             const OutcomeId* winner) {
  std::vector<OutcomeId> order;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (scores[i] > 0.0) order.push_back(static_cast<OutcomeId>(i));
  }
  if (order.empty()) throw std::logic_error("no outcome has a positive score");
  std::sort(order.begin(), order.end(), [&](OutcomeId a, OutcomeId b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return train.fallback_rank(a) < train.fallback_rank(b);
  });
  if (winner != nullptr) {
    auto it = std::find(order.begin(), order.end(), *winner);
    if (it == order.end() || scores[*winner] != scores[order.front()]) {
      throw std::logic_error("tie winner is not among the top outcomes");
    }
    std::rotate(order.begin(), it, it + 1);
  }

  LikelihoodData out;
  out.entries.reserve(order.size());
  for (auto id : order) out.entries.push_back({train.label(id), scores[id]});
  out.tie_broken = out.entries.size() > 1 && out.entries[0].score == out.entries[1].score;
  return out;
}

namespace {

LikelihoodData vote(const CategoricalDataset& train, const MatchScoreLists& lists,
                    const std::vector<std::uint32_t>& counts, std::size_t level, bool tie_break) {
  const auto tied = top_outcomes(counts);
  OutcomeId winner = tied.size() > 1 && tie_break ? tie_break_descend(lists, tied, level, train)
                                                  : fallback_winner(train, tied);
  std::vector<double> scores(counts.begin(), counts.end());
  auto out = rank_outcomes(train, scores, &winner);
  out.selected_level = static_cast<int>(level);
  return out;
}

}  // namespace

LikelihoodData predict_delanga(const CategoricalDataset& train, const QueryEntry& query, bool tie_break) {
  const auto lists = build_match_score_lists(train, query);
  return vote(train, lists, lists.counts(0), 0, tie_break);
}

LikelihoodData predict_varsate(const CategoricalDataset& train, const QueryEntry& query, Impurity measure) {
  const auto lists = build_match_score_lists(train, query);
  const auto cascade = cascade_counts(lists);
  std::size_t best = 0;
  double best_score = preference_score(measure, cascade[0]);
  for (std::size_t level = 1; level < cascade.size(); ++level) {
    const double s = preference_score(measure, cascade[level]);
    if (s > best_score) {
      best_score = s;
      best = level;
    }
  }
  return vote(train, lists, cascade[best], best, true);
}

std::vector<double> rasturnat_scores(const CategoricalDataset& train, const QueryEntry& query, double base) {
  if (!(base > 1.0) || !std::isfinite(base)) throw std::invalid_argument("exponent base must be a finite value > 1");
  require_nonempty(train);
  const auto row_scores = entry_match_scores(train, query);

  // Histogram of (outcome, score), then a fixed-order weighted sum.
  const std::size_t width = train.num_attributes() + 1;
  std::vector<std::uint32_t> histogram(train.num_outcomes() * width, 0);
  const auto& outcomes = train.outcome_ids();
  for (std::size_t r = 0; r < row_scores.size(); ++r) ++histogram[outcomes[r] * width + row_scores[r]];

  std::vector<double> powers(width);
  for (std::size_t s = 0; s < width; ++s) powers[s] = std::pow(base, static_cast<double>(s));

  std::vector<double> totals(train.num_outcomes(), 0.0);
  for (std::size_t o = 0; o < totals.size(); ++o) {
    for (std::size_t s = 0; s < width; ++s) totals[o] += histogram[o * width + s] * powers[s];
  }
  return totals;
}

LikelihoodData predict_rasturnat(const CategoricalDataset& train, const QueryEntry& query, double base) {
  const auto totals = rasturnat_scores(train, query, base);
  return rank_outcomes(train, totals);
}

}  // namespace deodata
