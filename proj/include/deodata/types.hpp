#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>

namespace deodata {

// Dense per-column code of a categorical symbol.
using SymbolCode = std::uint16_t;

// Reserved code for query symbols absent from the training column. Never
// assigned to a stored symbol, so it never matches.
inline constexpr SymbolCode kUnseenSymbol = std::numeric_limits<SymbolCode>::max();

// Entry match score: number of matching attribute positions, in [0, A].
using MatchScore = std::uint16_t;

inline constexpr std::size_t kMaxAttributes = std::numeric_limits<MatchScore>::max() - 1;

// Index into CategoricalDataset::outcome_labels().
using OutcomeId = std::uint32_t;

}  // namespace deodata
