#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "deodata/algorithms.hpp"
#include "deodata/digits.hpp"

namespace deodata {

struct AlgorithmTally {
  std::string algorithm;
  std::uint64_t errors = 0;
  std::uint64_t tests = 0;

  double error_rate() const { return tests == 0 ? 0.0 : static_cast<double>(errors) / static_cast<double>(tests); }
  double accuracy() const { return 1.0 - error_rate(); }
  bool operator==(const AlgorithmTally&) const = default;
};

struct ExperimentResult {
  std::vector<AlgorithmTally> rows;  // in requested algorithm order

  /// Throws std::out_of_range for an unknown id.
  const AlgorithmTally& at(std::string_view algorithm) const;
  bool operator==(const ExperimentResult&) const = default;
};

struct ConvergenceRow {
  std::size_t per_outcome_train_count = 0;
  ExperimentResult result;
  bool operator==(const ConvergenceRow&) const = default;
};

struct ConvergenceResult {
  std::vector<std::string> algorithms;
  std::vector<ConvergenceRow> rows;  // strictly increasing size

  double accuracy(std::size_t row, std::string_view algorithm) const { return rows.at(row).result.at(algorithm).accuracy(); }
  bool operator==(const ConvergenceResult&) const = default;
};

struct RunOptions {
  AlgorithmParams params;
  /// Worker threads for trials; 0 = hardware concurrency. Results do not
  /// depend on this value.
  std::size_t threads = 1;
};

/// Independent stream for (seed, trial, tag). Tag 0 drives data derivation;
/// algorithms use stream_tag(id), so adding algorithms never shifts data.
std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial, std::uint64_t tag);
std::uint64_t stream_tag(std::string_view algorithm);

/// Runs config.trials trials. Each trial re-derives the split (fresh pixel
/// selection and train/test draw), fits every algorithm on the same train set,
/// and predicts every test row.
ExperimentResult run_accuracy_experiment(const std::vector<DigitImage>& raw, const DerivationConfig& config,
                                         const std::vector<std::string>& algorithms, const RunOptions& options = {});

/// One accuracy experiment per per-outcome train count, all with the same
/// seed, so every row sees the same pixel selections per trial.
ConvergenceResult run_convergence_sweep(const std::vector<DigitImage>& raw, const DerivationConfig& config,
                                        const std::vector<std::size_t>& sizes,
                                        const std::vector<std::string>& algorithms, const RunOptions& options = {});

// ---------------------------------------------------------------------------
// Saturation: every attribute combination present, each replicated m times.

struct SaturationConfig {
  std::size_t attributes = 3;
  std::size_t values = 2;    // per attribute
  std::size_t outcomes = 3;  // distinct labels
  double mode_mass = 1.0;    // probability of each combination's mode; 1 = point mass
  std::size_t replication = 1;
  std::uint64_t seed = 0;

  std::size_t combinations() const;
  void validate() const;
};

struct SaturationReport {
  std::size_t combinations = 0;
  std::vector<AlgorithmTally> agreement;  // errors = queries whose prediction differs from the true mode
  double threshold = 1.0;                 // lower bound on agreement at the chosen confidence

  double agreement_fraction(std::string_view algorithm) const;
};

/// Lower bound on the agreement fraction that holds with probability at
/// least 1 - delta. A combination's empirical mode equals its true mode
/// whenever the mode takes a strict majority of the m draws, so its failure
/// probability is at most q = P(Binomial(m, mode_mass) <= m / 2). Failures
/// across independent combinations are then dominated by Binomial(C, q); the
/// bound is 1 - f / C for the smallest f with P(Binomial(C, q) > f) <= delta.
double saturation_agreement_bound(const SaturationConfig& config, double delta);

/// Enumerates the universe, draws m outcomes per combination, fits plain
/// delanga, ID3 and random tree, and queries every combination.
SaturationReport run_saturation_check(const SaturationConfig& config, double delta = 1e-3);

inline constexpr std::string_view kSaturationAlgorithms[] = {"deodata_delanga", "decision_tree_id3", "random_tree"};

}  // namespace deodata
