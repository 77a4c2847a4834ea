#include "deodata/matching.hpp"

#include <stdexcept>
#include <string>

#include "deodata/simd/match_kernels.hpp"

namespace deodata {

MatchScore entry_match_score(std::span<const Symbol> query, std::span<const Symbol> row) {
  if (query.size() != row.size()) {
    throw std::invalid_argument("query has " + std::to_string(query.size()) + " values, row has " +
                                std::to_string(row.size()));
  }
  MatchScore total = 0;
  for (std::size_t a = 0; a < query.size(); ++a) {
    total = static_cast<MatchScore>(total + column_match_score(query[a], row[a]));
  }
  return total;
}

void entry_match_scores(const CategoricalDataset& train, std::span<const SymbolCode> encoded_query,
                        std::span<MatchScore> scores) {
  if (encoded_query.size() != train.num_attributes()) throw std::invalid_argument("encoded query arity mismatch");
  if (scores.size() < train.num_rows()) throw std::invalid_argument("score buffer too small");
  simd::match_scores({train.codes(), train.num_rows(), train.num_attributes()}, encoded_query, scores);
}

std::vector<MatchScore> entry_match_scores(const CategoricalDataset& train, const QueryEntry& query) {
  const auto encoded = train.encode(query);
  std::vector<MatchScore> scores(train.num_rows());
  entry_match_scores(train, encoded, scores);
  return scores;
}

}  // namespace deodata
