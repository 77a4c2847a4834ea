#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>

#include "deodata/types.hpp"

namespace deodata::simd {

enum class Isa { scalar, avx2, neon };

std::string_view isa_name(Isa isa);
std::optional<Isa> parse_isa(std::string_view name);

/// Column-major code table: codes[attribute * rows + row].
struct CodeMatrix {
  std::span<const SymbolCode> codes;
  std::size_t rows = 0;
  std::size_t attributes = 0;
};

/// scores[r] = number of attributes a with codes[a * rows + r] == query[a].
/// Preconditions: query.size() == attributes, scores.size() >= rows,
/// codes.size() == rows * attributes, attributes < 65535.
using MatchKernel = void (*)(CodeMatrix table, std::span<const SymbolCode> query, std::span<MatchScore> scores);

void match_scores_scalar(CodeMatrix table, std::span<const SymbolCode> query, std::span<MatchScore> scores);
#if defined(DEODATA_HAVE_AVX2)
void match_scores_avx2(CodeMatrix table, std::span<const SymbolCode> query, std::span<MatchScore> scores);
#endif
#if defined(DEODATA_HAVE_NEON)
void match_scores_neon(CodeMatrix table, std::span<const SymbolCode> query, std::span<MatchScore> scores);
#endif

/// Compiled in and supported by the running CPU.
bool isa_available(Isa isa);

/// The kernel for a specific ISA; throws std::invalid_argument if unavailable.
MatchKernel kernel_for(Isa isa);

/// ISA used by match_scores(). Defaults to the best available, or to the
/// DEODATA_SIMD environment variable ("scalar", "avx2", "neon") if set.
Isa active_isa();

/// Overrides the active ISA process-wide. Throws if unavailable.
void set_active_isa(Isa isa);

/// Runs the active kernel.
void match_scores(CodeMatrix table, std::span<const SymbolCode> query, std::span<MatchScore> scores);

}  // namespace deodata::simd
