#pragma once

#include <cstdint>
#include <span>
#include <string_view>

namespace deodata {

/// Outcome counts indexed by outcome id; zero entries are allowed and
/// ignored. Every measure throws std::invalid_argument when the total is 0.
using CountSpan = std::span<const std::uint32_t>;

/// Shannon entropy in bits, 0 log 0 = 0.
double entropy(CountSpan counts);

/// 1 - sum p^2.
double gini(CountSpan counts);

/// Onicescu informational energy, sum p^2. Higher means purer.
double informational_energy(CountSpan counts);

enum class Impurity { entropy, gini, energy };

/// Accepts "entropy", "gini", "energy"; throws std::invalid_argument otherwise.
Impurity parse_impurity(std::string_view name);
std::string_view impurity_name(Impurity measure);

/// Measure oriented so that a larger value marks a more homogeneous list:
/// -entropy, -gini, or the raw energy.
double preference_score(Impurity measure, CountSpan counts);

}  // namespace deodata
