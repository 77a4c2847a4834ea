// Built with -mavx2; only reached after a runtime CPU check.
#include <immintrin.h>

#include "deodata/simd/match_kernels.hpp"

namespace deodata::simd {

void match_scores_avx2(CodeMatrix table, std::span<const SymbolCode> query, std::span<MatchScore> scores) {
  const std::size_t rows = table.rows;
  const std::size_t attrs = table.attributes;
  const SymbolCode* base = table.codes.data();
  MatchScore* out = scores.data();

  // 16 rows per register. cmpeq yields 0xFFFF (-1) per matching lane, so
  // subtracting the mask counts matches.
  std::size_t r = 0;
  for (; r + 32 <= rows; r += 32) {
    __m256i acc0 = _mm256_setzero_si256();
    __m256i acc1 = _mm256_setzero_si256();
    for (std::size_t a = 0; a < attrs; ++a) {
      const __m256i q = _mm256_set1_epi16(static_cast<short>(query[a]));
      const SymbolCode* col = base + a * rows + r;
      const __m256i v0 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(col));
      const __m256i v1 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(col + 16));
      acc0 = _mm256_sub_epi16(acc0, _mm256_cmpeq_epi16(v0, q));
      acc1 = _mm256_sub_epi16(acc1, _mm256_cmpeq_epi16(v1, q));
    }
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + r), acc0);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + r + 16), acc1);
  }
  for (; r + 16 <= rows; r += 16) {
    __m256i acc = _mm256_setzero_si256();
    for (std::size_t a = 0; a < attrs; ++a) {
      const __m256i q = _mm256_set1_epi16(static_cast<short>(query[a]));
      const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(base + a * rows + r));
      acc = _mm256_sub_epi16(acc, _mm256_cmpeq_epi16(v, q));
    }
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + r), acc);
  }
  // tail
  for (; r < rows; ++r) {
    MatchScore s = 0;
    for (std::size_t a = 0; a < attrs; ++a) s = static_cast<MatchScore>(s + (base[a * rows + r] == query[a]));
    out[r] = s;
  }
}

}  // namespace deodata::simd
