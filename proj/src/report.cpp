#include "deodata/report.hpp"

#include <array>
#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "deodata/dataset.hpp"

namespace deodata {

using nlohmann::ordered_json;

std::string format_real(double value) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc{}) throw std::runtime_error("cannot format number");
  return std::string(buf.data(), ptr);
}

namespace {

template <typename T>
T parse_number(const std::string& text, const char* what) {
  T value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw std::runtime_error(std::string("bad ") + what + " value '" + text + "'");
  }
  return value;
}

ordered_json tally_json(const AlgorithmTally& t) {
  ordered_json j;
  j[kColAlgorithm] = t.algorithm;
  j[kColErrors] = t.errors;
  j[kColTests] = t.tests;
  j[kColErrorRate] = t.error_rate();
  j[kColAccuracy] = t.accuracy();
  return j;
}

AlgorithmTally tally_from_json(const ordered_json& j) {
  AlgorithmTally t{j.at(kColAlgorithm).get<std::string>(), j.at(kColErrors).get<std::uint64_t>(),
                   j.at(kColTests).get<std::uint64_t>()};
  if (t.errors > t.tests) throw std::runtime_error("errors exceed tests for " + t.algorithm);
  return t;
}

}  // namespace

void write_experiment_csv(std::ostream& out, const ExperimentResult& result) {
  out << kColAlgorithm << ',' << kColErrors << ',' << kColTests << ',' << kColErrorRate << ',' << kColAccuracy << '\n';
  for (const auto& t : result.rows) {
    out << t.algorithm << ',' << t.errors << ',' << t.tests << ',' << format_real(t.error_rate()) << ','
        << format_real(t.accuracy()) << '\n';
  }
}

void write_experiment_json(std::ostream& out, const ExperimentResult& result) {
  ordered_json j = ordered_json::array();
  for (const auto& t : result.rows) j.push_back(tally_json(t));
  out << ordered_json{{"results", j}}.dump(2) << '\n';
}

ExperimentResult read_experiment_csv(std::istream& in) {
  const auto records = read_csv_records(in);
  if (records.empty()) throw std::runtime_error("empty result file");
  const std::vector<std::string> header{kColAlgorithm, kColErrors, kColTests, kColErrorRate, kColAccuracy};
  if (records.front() != header) throw std::runtime_error("unexpected result header");
  ExperimentResult result;
  for (std::size_t i = 1; i < records.size(); ++i) {
    const auto& r = records[i];
    if (r.size() != header.size()) throw std::runtime_error("ragged result row");
    AlgorithmTally t{r[0], parse_number<std::uint64_t>(r[1], "errors"), parse_number<std::uint64_t>(r[2], "tests")};
    if (format_real(t.error_rate()) != r[3] || format_real(t.accuracy()) != r[4]) {
      throw std::runtime_error("inconsistent rates for " + t.algorithm);
    }
    result.rows.push_back(std::move(t));
  }
  return result;
}

ExperimentResult read_experiment_json(std::istream& in) {
  const auto j = ordered_json::parse(in);
  ExperimentResult result;
  for (const auto& row : j.at("results")) result.rows.push_back(tally_from_json(row));
  return result;
}

void write_convergence_csv(std::ostream& out, const ConvergenceResult& result) {
  out << kColTrainSize;
  for (const auto& a : result.algorithms) out << ',' << a;
  out << '\n';
  for (const auto& row : result.rows) {
    out << row.per_outcome_train_count;
    for (const auto& a : result.algorithms) out << ',' << format_real(row.result.at(a).accuracy());
    out << '\n';
  }
}

void write_convergence_json(std::ostream& out, const ConvergenceResult& result) {
  ordered_json rows = ordered_json::array();
  for (const auto& row : result.rows) {
    ordered_json results = ordered_json::array();
    for (const auto& t : row.result.rows) results.push_back(tally_json(t));
    rows.push_back({{kColTrainSize, row.per_outcome_train_count}, {"results", results}});
  }
  out << ordered_json{{"algorithms", result.algorithms}, {"rows", rows}}.dump(2) << '\n';
}

ConvergenceResult read_convergence_json(std::istream& in) {
  const auto j = ordered_json::parse(in);
  ConvergenceResult result;
  result.algorithms = j.at("algorithms").get<std::vector<std::string>>();
  for (const auto& row : j.at("rows")) {
    ConvergenceRow r;
    r.per_outcome_train_count = row.at(kColTrainSize).get<std::size_t>();
    for (const auto& t : row.at("results")) r.result.rows.push_back(tally_from_json(t));
    result.rows.push_back(std::move(r));
  }
  return result;
}

AccuracyTable read_convergence_csv(std::istream& in) {
  const auto records = read_csv_records(in);
  if (records.empty() || records.front().empty() || records.front().front() != kColTrainSize) {
    throw std::runtime_error("unexpected convergence header");
  }
  AccuracyTable table;
  table.algorithms.assign(records.front().begin() + 1, records.front().end());
  for (std::size_t i = 1; i < records.size(); ++i) {
    const auto& r = records[i];
    if (r.size() != table.algorithms.size() + 1) throw std::runtime_error("ragged convergence row");
    table.sizes.push_back(parse_number<std::size_t>(r[0], "size"));
    std::vector<double> acc;
    for (std::size_t k = 1; k < r.size(); ++k) acc.push_back(parse_number<double>(r[k], "accuracy"));
    table.accuracy.push_back(std::move(acc));
  }
  return table;
}

void write_saturation_csv(std::ostream& out, const SaturationReport& report) {
  out << kColAlgorithm << ",queries,disagreements,agreement,threshold\n";
  for (const auto& t : report.agreement) {
    out << t.algorithm << ',' << t.tests << ',' << t.errors << ',' << format_real(t.accuracy()) << ','
        << format_real(report.threshold) << '\n';
  }
}

void write_saturation_json(std::ostream& out, const SaturationReport& report) {
  ordered_json rows = ordered_json::array();
  for (const auto& t : report.agreement) {
    rows.push_back({{kColAlgorithm, t.algorithm},
                    {"queries", t.tests},
                    {"disagreements", t.errors},
                    {"agreement", t.accuracy()}});
  }
  out << ordered_json{{"combinations", report.combinations}, {"threshold", report.threshold}, {"results", rows}}.dump(2)
      << '\n';
}

void print_experiment_table(std::ostream& out, const ExperimentResult& result) {
  char line[160];
  std::snprintf(line, sizeof line, "%-26s %12s %12s %12s %12s\n", kColAlgorithm, kColErrors, kColTests, kColErrorRate,
                kColAccuracy);
  out << line;
  for (const auto& t : result.rows) {
    std::snprintf(line, sizeof line, "%-26s %12llu %12llu %12.9f %12.9f\n", t.algorithm.c_str(),
                  static_cast<unsigned long long>(t.errors), static_cast<unsigned long long>(t.tests), t.error_rate(),
                  t.accuracy());
    out << line;
  }
}

void print_convergence_table(std::ostream& out, const ConvergenceResult& result) {
  char cell[64];
  std::snprintf(cell, sizeof cell, "%-22s", kColTrainSize);
  out << cell;
  for (const auto& a : result.algorithms) {
    std::snprintf(cell, sizeof cell, " %24s", a.c_str());
    out << cell;
  }
  out << '\n';
  for (const auto& row : result.rows) {
    std::snprintf(cell, sizeof cell, "%-22zu", row.per_outcome_train_count);
    out << cell;
    for (const auto& a : result.algorithms) {
      std::snprintf(cell, sizeof cell, " %24.9f", row.result.at(a).accuracy());
      out << cell;
    }
    out << '\n';
  }
}

}  // namespace deodata
