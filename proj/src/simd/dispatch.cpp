#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "deodata/simd/match_kernels.hpp"

namespace deodata::simd {

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
    case Isa::neon: return "neon";
  }
  return "unknown";
}

std::optional<Isa> parse_isa(std::string_view name) {
  if (name == "scalar") return Isa::scalar;
  if (name == "avx2") return Isa::avx2;
  if (name == "neon") return Isa::neon;
  return std::nullopt;
}

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#if defined(DEODATA_HAVE_AVX2)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Isa::neon:
#if defined(DEODATA_HAVE_NEON)
      return true;  // baseline on aarch64
#else
      return false;
#endif
  }
  return false;
}

MatchKernel kernel_for(Isa isa) {
  if (!isa_available(isa)) {
    throw std::invalid_argument("SIMD kernel '" + std::string(isa_name(isa)) + "' not available on this host");
  }
  switch (isa) {
#if defined(DEODATA_HAVE_AVX2)
    case Isa::avx2: return match_scores_avx2;
#endif
#if defined(DEODATA_HAVE_NEON)
    case Isa::neon: return match_scores_neon;
#endif
    default: return match_scores_scalar;
  }
}

namespace {

Isa detect_default() {
  if (const char* env = std::getenv("DEODATA_SIMD"); env != nullptr && *env != '\0') {
    auto requested = parse_isa(env);
    if (!requested || !isa_available(*requested)) {
      throw std::runtime_error("DEODATA_SIMD='" + std::string(env) + "' is not an available kernel");
    }
    return *requested;
  }
  if (isa_available(Isa::avx2)) return Isa::avx2;
  if (isa_available(Isa::neon)) return Isa::neon;
  return Isa::scalar;
}

struct Selection {
  std::atomic<Isa> isa;
  std::atomic<MatchKernel> kernel;
  Selection() : isa(detect_default()), kernel(kernel_for(isa.load())) {}
};

Selection& selection() {
  static Selection s;
  return s;
}

}  // namespace

Isa active_isa() { return selection().isa.load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
  auto k = kernel_for(isa);
  selection().kernel.store(k);
  selection().isa.store(isa);
}

void match_scores(CodeMatrix table, std::span<const SymbolCode> query, std::span<MatchScore> scores) {
  selection().kernel.load(std::memory_order_relaxed)(table, query, scores);
}

}  // namespace deodata::simd
