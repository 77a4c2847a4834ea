#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "deodata/dataset.hpp"
#include "deodata/types.hpp"

namespace deodata {

/// 1 if the symbols are identical, 0 otherwise. Unit weights throughout.
inline int column_match_score(std::string_view query_value, std::string_view entry_value) noexcept {
  return query_value == entry_value ? 1 : 0;
}

/// Sum of column scores; equals A minus the Hamming distance.
/// Throws std::invalid_argument on length mismatch.
MatchScore entry_match_score(std::span<const Symbol> query, std::span<const Symbol> row);

/// Entry match score of every training row against an encoded query, using
/// the active SIMD kernel. `scores` must hold train.num_rows() elements.
void entry_match_scores(const CategoricalDataset& train, std::span<const SymbolCode> encoded_query,
                        std::span<MatchScore> scores);

std::vector<MatchScore> entry_match_scores(const CategoricalDataset& train, const QueryEntry& query);

}  // namespace deodata
