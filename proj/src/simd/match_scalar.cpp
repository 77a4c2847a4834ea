#include <algorithm>

#include "deodata/simd/match_kernels.hpp"

namespace deodata::simd {

void match_scores_scalar(CodeMatrix table, std::span<const SymbolCode> query, std::span<MatchScore> scores) {
  const std::size_t rows = table.rows;
  std::fill(scores.begin(), scores.begin() + static_cast<std::ptrdiff_t>(rows), MatchScore{0});
  for (std::size_t a = 0; a < table.attributes; ++a) {
    const SymbolCode q = query[a];
    const SymbolCode* column = table.codes.data() + a * rows;
    for (std::size_t r = 0; r < rows; ++r) {
      scores[r] = static_cast<MatchScore>(scores[r] + (column[r] == q ? 1 : 0));
    }
  }
}

}  // namespace deodata::simd
