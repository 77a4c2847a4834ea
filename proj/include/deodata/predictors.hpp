#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "deodata/dataset.hpp"
#include "deodata/impurity.hpp"
#include "deodata/types.hpp"

namespace deodata {

struct Likelihood {
  Symbol outcome;
  double score = 0.0;

  bool operator==(const Likelihood&) const = default;
};

/// Outcome likelihoods, nonincreasing by score. The head is the prediction.
struct LikelihoodData {
  std::vector<Likelihood> entries;
  /// Two or more outcomes shared the top score and a tie rule picked the head.
  bool tie_broken = false;
  /// Which match score list (delanga) or cascade level (varsate) produced the
  /// entries; -1 when not applicable.
  int selected_level = -1;

  const Symbol& prediction() const { return entries.front().outcome; }
  bool operator==(const LikelihoodData&) const = default;
};

/// Work data set of the proximity and cascading predictors: the outcomes of
/// all training rows grouped by entry match score, highest score first.
/// Only observed scores are present.
class MatchScoreLists {
 public:
  struct Level {
    MatchScore score = 0;
    std::vector<OutcomeId> outcomes;  // training row order
  };

  MatchScoreLists(std::span<const MatchScore> row_scores, std::span<const OutcomeId> row_outcomes,
                  std::size_t num_outcomes);

  const std::vector<Level>& levels() const noexcept { return levels_; }
  std::size_t size() const noexcept { return levels_.size(); }
  std::size_t num_outcomes() const noexcept { return num_outcomes_; }
  std::size_t total() const noexcept;

  /// nullptr if no row reached this score.
  const Level* find(MatchScore score) const;

  /// Outcome counts of one level, indexed by outcome id.
  std::vector<std::uint32_t> counts(std::size_t level) const;

 private:
  std::vector<Level> levels_;
  std::size_t num_outcomes_ = 0;
};

MatchScoreLists build_match_score_lists(const CategoricalDataset& train, const QueryEntry& query);

/// Outcomes whose count equals the maximum count (ties included), ascending id.
std::vector<OutcomeId> top_outcomes(std::span<const std::uint32_t> counts);

/// Final tie rule: highest global training frequency, then smallest label.
OutcomeId fallback_winner(const CategoricalDataset& train, std::span<const OutcomeId> tied);

/// Breaks a tie by scanning the lists below `start_level` in order. A level
/// holding none of the tied outcomes is skipped; otherwise the tie narrows to
/// the tied outcomes with the largest count there. Stops once one outcome is
/// left, and falls back to fallback_winner when the levels run out.
OutcomeId tie_break_descend(const MatchScoreLists& lists, std::vector<OutcomeId> tied, std::size_t start_level,
                            const CategoricalDataset& train);

/// Outcome counts of each cascaded match list: level i is the union of the
/// lists 0..i.
std::vector<std::vector<std::uint32_t>> cascade_counts(const MatchScoreLists& lists);

/// preference_score of each cascaded list (higher is better).
std::vector<double> cascade_scores(const MatchScoreLists& lists, Impurity measure);

/// Proximity: vote within the best-matching list. With `tie_break` off the
/// final fallback rule applies directly to tied outcomes.
LikelihoodData predict_delanga(const CategoricalDataset& train, const QueryEntry& query, bool tie_break);

/// Cascading: vote within the cascaded list with the best impurity score;
/// equal scores keep the earlier (closer) level.
LikelihoodData predict_varsate(const CategoricalDataset& train, const QueryEntry& query, Impurity measure);

/// Swapped work data set: per outcome, the sum of base^score over its rows.
/// Indexed by outcome id. Accumulation is grouped by score, so the result
/// does not depend on row order.
std::vector<double> rasturnat_scores(const CategoricalDataset& train, const QueryEntry& query, double base);

/// Swapped: outcomes ranked by accumulated exponential score. base > 1.
LikelihoodData predict_rasturnat(const CategoricalDataset& train, const QueryEntry& query, double base);

/// Builds ordered likelihoods from per-outcome scores (zero scores dropped).
/// Equal scores are ordered by the fallback rule; `winner`, if given, must be
/// among the top-scored outcomes and is moved to the head.
LikelihoodData rank_outcomes(const CategoricalDataset& train, std::span<const double> scores,
                             const OutcomeId* winner = nullptr);

}  // namespace deodata
