#include "deodata/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace deodata {

const AlgorithmTally& ExperimentResult::at(std::string_view algorithm) const {
  for (const auto& row : rows) {
    if (row.algorithm == algorithm) return row;
  }
  throw std::out_of_range("no result for algorithm '" + std::string(algorithm) + "'");
}

std::uint64_t stream_tag(std::string_view algorithm) {
  // FNV-1a; stable across platforms, unlike std::hash.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : algorithm) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h | 1;  // never collides with the derivation tag 0
}

std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial, std::uint64_t tag) {
  auto lo = [](std::uint64_t v) { return static_cast<std::uint32_t>(v); };
  auto hi = [](std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); };
  std::seed_seq seq{lo(seed), hi(seed), lo(trial), hi(trial), lo(tag), hi(tag)};
  return std::mt19937_64(seq);
}

namespace {

std::vector<AlgorithmTally> run_trial(const ScaledDigits& scaled, const DerivationConfig& config,
                                      const std::vector<AlgorithmSpec>& specs, std::size_t trial) {
  auto data_rng = trial_rng(config.seed, trial, 0);
  const auto split = derive_experiment_dataset(scaled, config, data_rng);

  std::vector<QueryEntry> queries;
  queries.reserve(split.test.num_rows());
  for (std::size_t i = 0; i < split.test.num_rows(); ++i) queries.push_back(split.test.row(i));

  std::vector<AlgorithmTally> tallies;
  for (const auto& spec : specs) {
    auto rng = trial_rng(config.seed, trial, stream_tag(spec.id));
    const auto clf = Classifier::fit(spec, split.train, rng);
    AlgorithmTally t{spec.id, 0, 0};
    for (std::size_t i = 0; i < queries.size(); ++i) {
      if (clf.predict(queries[i], rng).prediction() != split.test.outcome(i)) ++t.errors;
      ++t.tests;
    }
    tallies.push_back(std::move(t));
  }
  return tallies;
}

template <typename Fn>
void parallel_for(std::size_t count, std::size_t threads, Fn&& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::jthread> workers;
  for (std::size_t w = 0; w < threads; ++w) {
    workers.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next = count;
        }
      }
    });
  }
  workers.clear();
  if (failure) std::rethrow_exception(failure);
}

ExperimentResult run_experiment(const ScaledDigits& scaled, const DerivationConfig& config,
                                const std::vector<std::string>& algorithms, const RunOptions& options) {
  config.validate();
  if (algorithms.empty()) throw std::invalid_argument("no algorithms requested");
  std::vector<AlgorithmSpec> specs;
  for (const auto& id : algorithms) specs.push_back(parse_algorithm(id, options.params));

  std::vector<std::vector<AlgorithmTally>> per_trial(config.trials);
  parallel_for(config.trials, options.threads,
               [&](std::size_t trial) { per_trial[trial] = run_trial(scaled, config, specs, trial); });

  ExperimentResult result;
  for (const auto& spec : specs) result.rows.push_back({spec.id, 0, 0});
  for (const auto& tallies : per_trial) {
    for (std::size_t a = 0; a < tallies.size(); ++a) {
      result.rows[a].errors += tallies[a].errors;
      result.rows[a].tests += tallies[a].tests;
    }
  }
  return result;
}

}  // namespace

ExperimentResult run_accuracy_experiment(const std::vector<DigitImage>& raw, const DerivationConfig& config,
                                         const std::vector<std::string>& algorithms, const RunOptions& options) {
  config.validate();
  return run_experiment(scale_digits(raw, config.target_resolution), config, algorithms, options);
}

ConvergenceResult run_convergence_sweep(const std::vector<DigitImage>& raw, const DerivationConfig& config,
                                        const std::vector<std::size_t>& sizes,
                                        const std::vector<std::string>& algorithms, const RunOptions& options) {
  if (sizes.empty()) throw std::invalid_argument("no training sizes given");
  for (std::size_t i = 1; i < sizes.size(); ++i) {
    if (sizes[i] <= sizes[i - 1]) throw std::invalid_argument("training sizes must be strictly increasing");
  }
  config.validate();
  const auto scaled = scale_digits(raw, config.target_resolution);
  ConvergenceResult out;
  out.algorithms = algorithms;
  for (auto size : sizes) {
    auto row_config = config;
    row_config.per_outcome_train_count = size;
    out.rows.push_back({size, run_experiment(scaled, row_config, algorithms, options)});
  }
  return out;
}

// ---------------------------------------------------------------------------

std::size_t SaturationConfig::combinations() const {
  std::size_t c = 1;
  for (std::size_t a = 0; a < attributes; ++a) c *= values;
  return c;
}

void SaturationConfig::validate() const {
  if (attributes < 1 || values < 1) throw std::invalid_argument("saturation universe needs attributes and values");
  if (outcomes < 1) throw std::invalid_argument("saturation needs at least one outcome");
  if (replication < 1) throw std::invalid_argument("replication must be >= 1");
  if (!(mode_mass > 0.0 && mode_mass <= 1.0)) throw std::invalid_argument("mode mass must be in (0, 1]");
  if (outcomes == 1 && mode_mass != 1.0) throw std::invalid_argument("a single outcome needs mode mass 1");
  if (combinations() > 1'000'000) throw std::invalid_argument("saturation universe too large");
}

double SaturationReport::agreement_fraction(std::string_view algorithm) const {
  for (const auto& t : agreement) {
    if (t.algorithm == algorithm) return t.accuracy();
  }
  throw std::out_of_range("no saturation result for '" + std::string(algorithm) + "'");
}

namespace {

// P(X <= k) for X ~ Binomial(n, p), summed in log space.
double binomial_cdf(std::size_t n, double p, std::size_t k) {
  if (p <= 0.0) return 1.0;
  if (p >= 1.0) return k >= n ? 1.0 : 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i <= std::min(k, n); ++i) {
    const double log_term = std::lgamma(n + 1.0) - std::lgamma(i + 1.0) - std::lgamma(n - i + 1.0) +
                            i * std::log(p) + (n - i) * std::log1p(-p);
    total += std::exp(log_term);
  }
  return std::min(total, 1.0);
}

}  // namespace

double saturation_agreement_bound(const SaturationConfig& config, double delta) {
  config.validate();
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must be in (0, 1)");
  const std::size_t m = config.replication;
  const double q = binomial_cdf(m, config.mode_mass, m / 2);
  const std::size_t c = config.combinations();
  for (std::size_t f = 0; f <= c; ++f) {
    if (1.0 - binomial_cdf(c, q, f) <= delta) return 1.0 - static_cast<double>(f) / static_cast<double>(c);
  }
  return 0.0;
}

SaturationReport run_saturation_check(const SaturationConfig& config, double delta) {
  config.validate();
  auto rng = trial_rng(config.seed, 0, 0);
  const std::size_t combos = config.combinations();

  std::vector<std::string> names;
  for (std::size_t a = 0; a < config.attributes; ++a) names.push_back("x" + std::to_string(a));
  auto label = [](std::size_t k) { return "c" + std::to_string(k); };

  std::vector<QueryEntry> universe;
  std::vector<std::size_t> modes;
  std::uniform_int_distribution<std::size_t> pick_outcome(0, config.outcomes - 1);
  for (std::size_t c = 0; c < combos; ++c) {
    QueryEntry entry;
    for (std::size_t a = 0, rest = c; a < config.attributes; ++a, rest /= config.values) {
      entry.push_back("v" + std::to_string(rest % config.values));
    }
    universe.push_back(std::move(entry));
    modes.push_back(pick_outcome(rng));
  }

  std::vector<std::vector<Symbol>> rows;
  std::vector<Symbol> outcomes;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> pick_other(0, config.outcomes > 1 ? config.outcomes - 2 : 0);
  for (std::size_t c = 0; c < combos; ++c) {
    for (std::size_t r = 0; r < config.replication; ++r) {
      std::size_t k = modes[c];
      if (config.mode_mass < 1.0 && unit(rng) >= config.mode_mass) {
        k = pick_other(rng);
        if (k >= modes[c]) ++k;  // uniform over the non-mode outcomes
      }
      rows.push_back(universe[c]);
      outcomes.push_back(label(k));
    }
  }
  const CategoricalDataset train(names, rows, outcomes);

  SaturationReport report;
  report.combinations = combos;
  report.threshold = saturation_agreement_bound(config, delta);
  for (auto id : kSaturationAlgorithms) {
    const auto spec = parse_algorithm(id);
    auto algo_rng = trial_rng(config.seed, 0, stream_tag(id));
    const auto clf = Classifier::fit(spec, train, algo_rng);
    AlgorithmTally t{spec.id, 0, 0};
    for (std::size_t c = 0; c < combos; ++c) {
      if (clf.predict(universe[c], algo_rng).prediction() != label(modes[c])) ++t.errors;
      ++t.tests;
    }
    report.agreement.push_back(std::move(t));
  }
  return report;
}

}  // namespace deodata
