#include <arm_neon.h>

#include "deodata/simd/match_kernels.hpp"

namespace deodata::simd {

void match_scores_neon(CodeMatrix table, std::span<const SymbolCode> query, std::span<MatchScore> scores) {
  const std::size_t rows = table.rows;
  const std::size_t attrs = table.attributes;
  const SymbolCode* base = table.codes.data();
  MatchScore* out = scores.data();

  std::size_t r = 0;
  for (; r + 8 <= rows; r += 8) {
    uint16x8_t acc = vdupq_n_u16(0);
    for (std::size_t a = 0; a < attrs; ++a) {
      const uint16x8_t v = vld1q_u16(base + a * rows + r);
      acc = vsubq_u16(acc, vceqq_u16(v, vdupq_n_u16(query[a])));
    }
    vst1q_u16(out + r, acc);
  }
  for (; r < rows; ++r) {
    MatchScore s = 0;
    for (std::size_t a = 0; a < attrs; ++a) s = static_cast<MatchScore>(s + (base[a * rows + r] == query[a]));
    out[r] = s;
  }
}

}  // namespace deodata::simd
