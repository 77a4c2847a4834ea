#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "deodata/types.hpp"

namespace deodata {

/// Raised for malformed delimiter-separated input. `row()` is 1-based and
/// counts physical records including the header; 0 when not row specific.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t row, const std::string& what);
  std::size_t row() const noexcept { return row_; }

 private:
  std::size_t row_;
};

using Symbol = std::string;
using QueryEntry = std::vector<Symbol>;

/// Per-column dictionary mapping symbol text to a dense code.
class SymbolDictionary {
 public:
  SymbolCode intern(const Symbol& symbol);
  /// kUnseenSymbol when the symbol never occurred.
  SymbolCode lookup(std::string_view symbol) const;
  const Symbol& symbol(SymbolCode code) const { return symbols_.at(code); }
  std::size_t size() const noexcept { return symbols_.size(); }

 private:
  struct Hash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const noexcept {
      return std::hash<std::string_view>{}(s);
    }
  };
  std::unordered_map<Symbol, SymbolCode, Hash, std::equal_to<>> codes_;
  std::vector<Symbol> symbols_;
};

/// Categorical training (or test) table with aligned outcomes.
///
/// Symbols are kept verbatim and are also interned into dense per-column
/// codes stored column-major; the codes feed the matching kernels. The
/// object is immutable after construction.
class CategoricalDataset {
 public:
  CategoricalDataset(std::vector<std::string> attribute_names,
                     const std::vector<std::vector<Symbol>>& rows,
                     const std::vector<Symbol>& outcomes);

  std::size_t num_rows() const noexcept { return num_rows_; }
  std::size_t num_attributes() const noexcept { return names_.size(); }
  std::size_t num_outcomes() const noexcept { return outcome_labels_.size(); }

  const std::vector<std::string>& attribute_names() const noexcept { return names_; }

  const Symbol& value(std::size_t row, std::size_t attribute) const;
  std::vector<Symbol> row(std::size_t row) const;
  const Symbol& outcome(std::size_t row) const { return outcome_labels_[outcome_ids_.at(row)]; }
  OutcomeId outcome_id(std::size_t row) const { return outcome_ids_.at(row); }

  /// Distinct outcome labels in first-appearance order; OutcomeId indexes it.
  const std::vector<Symbol>& outcome_labels() const noexcept { return outcome_labels_; }
  const std::vector<OutcomeId>& outcome_ids() const noexcept { return outcome_ids_; }
  const Symbol& label(OutcomeId id) const { return outcome_labels_.at(id); }

  /// Number of training rows per outcome id.
  const std::vector<std::uint32_t>& outcome_frequencies() const noexcept { return frequencies_; }

  /// Position of each outcome in the final tie fallback order: higher global
  /// frequency first, then lexicographically smaller label. 0 is best.
  std::uint32_t fallback_rank(OutcomeId id) const { return fallback_rank_.at(id); }

  /// Codes of one attribute across all rows.
  std::span<const SymbolCode> column(std::size_t attribute) const;
  /// All codes, column-major (attribute * num_rows + row).
  std::span<const SymbolCode> codes() const noexcept { return codes_; }

  const SymbolDictionary& dictionary(std::size_t attribute) const { return dictionaries_.at(attribute); }

  /// Translates a query to this table's codes; unseen symbols become
  /// kUnseenSymbol. Throws std::invalid_argument on arity mismatch.
  std::vector<SymbolCode> encode(const QueryEntry& query) const;

 private:
  std::vector<std::string> names_;
  std::size_t num_rows_ = 0;
  std::vector<SymbolDictionary> dictionaries_;
  std::vector<SymbolCode> codes_;
  std::vector<Symbol> outcome_labels_;
  std::vector<OutcomeId> outcome_ids_;
  std::vector<std::uint32_t> frequencies_;
  std::vector<std::uint32_t> fallback_rank_;
};

/// Target column selector for load_csv.
struct LastColumn {};
using TargetColumn = std::variant<LastColumn, std::size_t>;

TargetColumn parse_target_column(std::string_view text);

/// Reads a comma-delimited table (RFC 4180 quoting). All fields are kept as
/// verbatim text symbols; empty fields are rejected.
CategoricalDataset load_csv(std::istream& in, TargetColumn target, bool has_header);
CategoricalDataset load_csv_file(const std::string& path, TargetColumn target, bool has_header);

/// Reads rows without a target column, e.g. query files.
std::vector<QueryEntry> load_query_csv(std::istream& in, bool has_header);

/// Writes attributes followed by the outcome as the last column, with a header.
void write_csv(std::ostream& out, const CategoricalDataset& data, std::string_view outcome_header = "outcome");

/// Low-level record splitter shared by the loaders. Each record is checked
/// for empty fields; ragged input is not checked here.
std::vector<std::vector<std::string>> read_csv_records(std::istream& in);

}  // namespace deodata
