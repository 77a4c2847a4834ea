#include "deodata/impurity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace deodata {

namespace {

std::uint64_t checked_total(CountSpan counts) {
  std::uint64_t total = 0;
  for (auto c : counts) total += c;
  if (total == 0) throw std::invalid_argument("impurity of an empty outcome set");
  return total;
}

// Nonzero counts in ascending order. Summing in this order makes every
// measure exactly invariant under relabeling, so lists with the same
// proportions compare equal.
std::vector<std::uint32_t> canonical(CountSpan counts) {
  std::vector<std::uint32_t> out;
  out.reserve(counts.size());
  for (auto c : counts) {
    if (c != 0) out.push_back(c);
  }
  std::sort(out.begin(), out.end());
  return out;
}

double sum_squared_proportions(CountSpan counts) {
  const double total = static_cast<double>(checked_total(counts));
  double acc = 0.0;
  for (auto c : canonical(counts)) {
    const double p = c / total;
    acc += p * p;
  }
  return acc;
}

}  // namespace

double entropy(CountSpan counts) {
  const double total = static_cast<double>(checked_total(counts));
  double h = 0.0;
  for (auto c : canonical(counts)) {
    const double p = c / total;
    h -= p * std::log2(p);
  }
  // -0.0 for a pure set reads oddly in reports.
  return h == 0.0 ? 0.0 : h;
}

double gini(CountSpan counts) { return 1.0 - sum_squared_proportions(counts); }

double informational_energy(CountSpan counts) { return sum_squared_proportions(counts); }

Impurity parse_impurity(std::string_view name) {
  if (name == "entropy") return Impurity::entropy;
  if (name == "gini") return Impurity::gini;
  if (name == "energy") return Impurity::energy;
  throw std::invalid_argument("unknown impurity measure '" + std::string(name) + "'");
}

std::string_view impurity_name(Impurity measure) {
  switch (measure) {
    case Impurity::entropy: return "entropy";
    case Impurity::gini: return "gini";
    case Impurity::energy: return "energy";
  }
  return "unknown";
}

double preference_score(Impurity measure, CountSpan counts) {
  switch (measure) {
    case Impurity::entropy: return -entropy(counts);
    case Impurity::gini: return -gini(counts);
    case Impurity::energy: return informational_energy(counts);
  }
  throw std::invalid_argument("unknown impurity measure");
}

}  // namespace deodata
