// Command-line front end: predict, benchmark, converge, saturate.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "deodata/algorithms.hpp"
#include "deodata/dataset.hpp"
#include "deodata/digits.hpp"
#include "deodata/harness.hpp"
#include "deodata/report.hpp"

namespace {

using namespace deodata;

constexpr std::uint64_t kDefaultSeed = 20190601;

struct PredictorFlags {
  std::string impurity = "entropy";
  double base = 2.0;
  bool tie_break = false;

  AlgorithmParams params() const { return {tie_break, parse_impurity(impurity), base}; }
};

void add_predictor_flags(CLI::App* cmd, PredictorFlags& flags) {
  cmd->add_option("--impurity", flags.impurity, "Measure for deodata_varsate: entropy, gini, energy")
      ->check(CLI::IsMember({"entropy", "gini", "energy"}));
  cmd->add_option("--base", flags.base, "Exponent base for deodata_rasturnat (> 1)")
      ->check(CLI::PositiveNumber);
  cmd->add_flag("--tie-break", flags.tie_break, "Enable the descending tie break for deodata_delanga");
}

struct OutputFlags {
  std::string out;
  std::string format = "both";
};

void add_output_flags(CLI::App* cmd, OutputFlags& flags) {
  cmd->add_option("--out", flags.out,
                  "Result file; with --format both this is a stem and .csv/.json are appended");
  cmd->add_option("--format", flags.format, "csv, json or both")->check(CLI::IsMember({"csv", "json", "both"}));
}

template <typename CsvFn, typename JsonFn>
void write_outputs(const OutputFlags& flags, CsvFn&& csv, JsonFn&& json) {
  if (flags.out.empty()) return;
  auto open = [](const std::string& path) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write " + path);
    return f;
  };
  if (flags.format == "csv" || flags.format == "both") {
    auto f = open(flags.format == "both" ? flags.out + ".csv" : flags.out);
    csv(f);
  }
  if (flags.format == "json" || flags.format == "both") {
    auto f = open(flags.format == "both" ? flags.out + ".json" : flags.out);
    json(f);
  }
}

struct DerivationFlags {
  std::string digits = std::string(DEODATA_DATA_DIR) + "/digits.csv";
  std::vector<int> outcomes;
  std::size_t pixels = 0;
  std::vector<std::size_t> pixel_indices;
  int levels = 0;
  std::size_t resolution = 0;
  std::size_t per_outcome = 0;
  std::size_t trials = 0;
  std::uint64_t seed = kDefaultSeed;
  std::size_t threads = 1;
};

void add_derivation_flags(CLI::App* cmd, DerivationFlags& f) {
  cmd->add_option("--digits", f.digits, "Raw digits CSV (64 intensities + label)")->check(CLI::ExistingFile);
  cmd->add_option("--outcomes", f.outcomes, "Digit labels to keep")->delimiter(',');
  cmd->add_option("--pixels", f.pixels, "Number of random pixels per trial");
  cmd->add_option("--pixel-indices", f.pixel_indices, "Fixed pixel indices into the scaled image")->delimiter(',');
  cmd->add_option("--levels", f.levels, "Intensity quantization levels");
  cmd->add_option("--resolution", f.resolution, "Side length of the downscaled image (1..8)");
  cmd->add_option("--per-outcome", f.per_outcome, "Training rows per outcome");
  cmd->add_option("--trials", f.trials, "Number of trials");
  cmd->add_option("--seed", f.seed, "Master seed");
  cmd->add_option("--threads", f.threads, "Worker threads (0 = all cores); results are identical for any value");
}

DerivationConfig make_config(const DerivationFlags& f, DerivationConfig base) {
  if (!f.outcomes.empty()) base.selected_outcomes = f.outcomes;
  if (f.pixels != 0) base.pixel_count = f.pixels;
  if (!f.pixel_indices.empty()) base.pixel_indices = f.pixel_indices;
  if (f.levels != 0) base.intensity_levels = f.levels;
  if (f.resolution != 0) base.target_resolution = f.resolution;
  if (f.per_outcome != 0) base.per_outcome_train_count = f.per_outcome;
  if (f.trials != 0) base.trials = f.trials;
  base.seed = f.seed;
  base.validate();
  return base;
}

std::vector<std::string> split_ids(const std::vector<std::string>& ids) {
  return ids.empty() ? default_algorithms() : ids;
}

// Accuracy table: digits 0-3, 6 random pixels of a 6x6 image in 5 levels,
// 6 training rows per digit.
DerivationConfig benchmark_defaults() {
  DerivationConfig c;
  c.target_resolution = 6;
  c.pixel_count = 6;
  c.intensity_levels = 5;
  c.selected_outcomes = {0, 1, 2, 3};
  c.per_outcome_train_count = 6;
  c.trials = 50;
  return c;
}

// Convergence: digits 0-2, 4 random binary pixels of a 6x6 image.
DerivationConfig converge_defaults() {
  DerivationConfig c;
  c.target_resolution = 6;
  c.pixel_count = 4;
  c.intensity_levels = 2;
  c.selected_outcomes = {0, 1, 2};
  c.trials = 200;
  return c;
}

std::vector<QueryEntry> read_queries(const std::string& query, bool has_header) {
  if (std::filesystem::is_regular_file(query)) {
    std::ifstream in(query, std::ios::binary);
    return load_query_csv(in, has_header);
  }
  std::istringstream in(query);
  return load_query_csv(in, false);
}

void print_prediction(std::ostream& out, const LikelihoodData& data, bool as_json) {
  if (as_json) {
    nlohmann::ordered_json likelihoods = nlohmann::ordered_json::array();
    for (const auto& e : data.entries) likelihoods.push_back({{"outcome", e.outcome}, {"score", e.score}});
    out << nlohmann::ordered_json{{"prediction", data.prediction()},
                                  {"likelihoods", likelihoods},
                                  {"tie_broken", data.tie_broken}}
               .dump()
        << '\n';
    return;
  }
  out << data.prediction() << '\t';
  for (std::size_t i = 0; i < data.entries.size(); ++i) {
    if (i > 0) out << ' ';
    out << data.entries[i].outcome << '=' << format_real(data.entries[i].score);
  }
  out << "\ttie_broken=" << (data.tie_broken ? "true" : "false") << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Concurrent data predictors for categorical data, with decision tree baselines"};
  app.require_subcommand(1);

  // predict
  auto* predict = app.add_subcommand("predict", "Predict outcomes for query entries");
  std::string train_path, query, algo = "deodata_tbreak_delanga", target = "last", predict_format = "text";
  bool no_header = false;
  std::uint64_t predict_seed = kDefaultSeed;
  PredictorFlags predict_flags;
  predict->add_option("--train", train_path, "Training CSV")->required()->check(CLI::ExistingFile);
  predict->add_option("--query", query, "Comma-separated query values, or a CSV file of queries")->required();
  predict->add_option("--algo", algo, "Algorithm id");
  predict->add_option("--target", target, "Target column index or 'last'");
  predict->add_flag("--no-header", no_header, "CSV files have no header row");
  predict->add_option("--seed", predict_seed, "Seed for random_tree / uniform_random");
  predict->add_option("--format", predict_format, "text or json")->check(CLI::IsMember({"text", "json"}));
  add_predictor_flags(predict, predict_flags);

  // benchmark
  auto* benchmark = app.add_subcommand("benchmark", "Accuracy table on derived digits data");
  DerivationFlags bench_flags;
  PredictorFlags bench_predictor;
  OutputFlags bench_out;
  std::vector<std::string> bench_algos;
  add_derivation_flags(benchmark, bench_flags);
  add_predictor_flags(benchmark, bench_predictor);
  add_output_flags(benchmark, bench_out);
  benchmark->add_option("--algo", bench_algos, "Algorithm ids (default: the seven standard ids)")->delimiter(',');

  // converge
  auto* converge = app.add_subcommand("converge", "Accuracy versus training size");
  DerivationFlags conv_flags;
  PredictorFlags conv_predictor;
  OutputFlags conv_out;
  std::vector<std::string> conv_algos{"deodata_delanga", "decision_tree_id3", "random_tree", "uniform_random"};
  std::vector<std::size_t> sizes{1, 2, 4, 8, 16, 32, 64};
  add_derivation_flags(converge, conv_flags);
  add_predictor_flags(converge, conv_predictor);
  add_output_flags(converge, conv_out);
  converge->add_option("--algo", conv_algos, "Algorithm ids")->delimiter(',');
  converge->add_option("--sizes", sizes, "Training rows per outcome, increasing")->delimiter(',');

  // saturate
  auto* saturate = app.add_subcommand("saturate", "Agreement with the true mode on a saturated universe");
  SaturationConfig sat;
  sat.seed = kDefaultSeed;
  double delta = 1e-3;
  OutputFlags sat_out;
  saturate->add_option("--attributes", sat.attributes, "Attribute count");
  saturate->add_option("--values", sat.values, "Values per attribute");
  saturate->add_option("--classes", sat.outcomes, "Distinct outcomes");
  saturate->add_option("--mode-mass", sat.mode_mass, "Probability of each combination's mode (1 = point mass)");
  saturate->add_option("--replication", sat.replication, "Rows per combination");
  saturate->add_option("--delta", delta, "Failure probability for the agreement bound");
  saturate->add_option("--seed", sat.seed, "Seed");
  add_output_flags(saturate, sat_out);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*predict) {
      const auto train = load_csv_file(train_path, parse_target_column(target), !no_header);
      const auto spec = parse_algorithm(algo, predict_flags.params());
      auto rng = trial_rng(predict_seed, 0, stream_tag(spec.id));
      const auto clf = Classifier::fit(spec, train, rng);
      for (const auto& q : read_queries(query, !no_header)) {
        print_prediction(std::cout, clf.predict(q, rng), predict_format == "json");
      }
    } else if (*benchmark) {
      const auto raw = load_digits_csv_file(bench_flags.digits);
      const auto config = make_config(bench_flags, benchmark_defaults());
      const auto result = run_accuracy_experiment(raw, config, split_ids(bench_algos),
                                                  {bench_predictor.params(), bench_flags.threads});
      print_experiment_table(std::cout, result);
      write_outputs(
          bench_out, [&](std::ostream& o) { write_experiment_csv(o, result); },
          [&](std::ostream& o) { write_experiment_json(o, result); });
    } else if (*converge) {
      const auto raw = load_digits_csv_file(conv_flags.digits);
      const auto config = make_config(conv_flags, converge_defaults());
      const auto result =
          run_convergence_sweep(raw, config, sizes, conv_algos, {conv_predictor.params(), conv_flags.threads});
      print_convergence_table(std::cout, result);
      write_outputs(
          conv_out, [&](std::ostream& o) { write_convergence_csv(o, result); },
          [&](std::ostream& o) { write_convergence_json(o, result); });
    } else if (*saturate) {
      const auto report = run_saturation_check(sat, delta);
      std::cout << "combinations " << report.combinations << ", agreement threshold "
                << format_real(report.threshold) << '\n';
      for (const auto& t : report.agreement) {
        std::cout << "  " << t.algorithm << ": " << format_real(t.accuracy()) << '\n';
      }
      write_outputs(
          sat_out, [&](std::ostream& o) { write_saturation_csv(o, report); },
          [&](std::ostream& o) { write_saturation_json(o, report); });
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
