#pragma once

#include <iosfwd>
#include <string>

#include "deodata/harness.hpp"

namespace deodata {

// Column names of the accuracy table.
inline constexpr const char* kColAlgorithm = "algorithm id";
inline constexpr const char* kColErrors = "errors";
inline constexpr const char* kColTests = "tests";
inline constexpr const char* kColErrorRate = "error rate";
inline constexpr const char* kColAccuracy = "accuracy";
inline constexpr const char* kColTrainSize = "per outcome train no";

/// Shortest decimal text that parses back to the same double.
std::string format_real(double value);

void write_experiment_csv(std::ostream& out, const ExperimentResult& result);
void write_experiment_json(std::ostream& out, const ExperimentResult& result);
ExperimentResult read_experiment_csv(std::istream& in);
ExperimentResult read_experiment_json(std::istream& in);

/// Accuracy per algorithm, one row per training size.
void write_convergence_csv(std::ostream& out, const ConvergenceResult& result);
/// Full per-size tallies.
void write_convergence_json(std::ostream& out, const ConvergenceResult& result);
ConvergenceResult read_convergence_json(std::istream& in);

struct AccuracyTable {
  std::vector<std::string> algorithms;
  std::vector<std::size_t> sizes;
  std::vector<std::vector<double>> accuracy;  // [size][algorithm]
};
AccuracyTable read_convergence_csv(std::istream& in);

void write_saturation_csv(std::ostream& out, const SaturationReport& report);
void write_saturation_json(std::ostream& out, const SaturationReport& report);

/// Fixed-width text table for terminals.
void print_experiment_table(std::ostream& out, const ExperimentResult& result);
void print_convergence_table(std::ostream& out, const ConvergenceResult& result);

}  // namespace deodata
