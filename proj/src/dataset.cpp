#include "deodata/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>

namespace deodata {

ParseError::ParseError(std::size_t row, const std::string& what)
    : std::runtime_error(row == 0 ? what : "row " + std::to_string(row) + ": " + what), row_(row) {}

SymbolCode SymbolDictionary::intern(const Symbol& symbol) {
  if (auto it = codes_.find(symbol); it != codes_.end()) return it->second;
  if (symbols_.size() >= kUnseenSymbol) {
    throw std::length_error("too many distinct symbols in one column");
  }
  const auto code = static_cast<SymbolCode>(symbols_.size());
  codes_.emplace(symbol, code);
  symbols_.push_back(symbol);
  return code;
}

SymbolCode SymbolDictionary::lookup(std::string_view symbol) const {
  auto it = codes_.find(symbol);
  return it == codes_.end() ? kUnseenSymbol : it->second;
}

CategoricalDataset::CategoricalDataset(std::vector<std::string> attribute_names,
                                       const std::vector<std::vector<Symbol>>& rows,
                                       const std::vector<Symbol>& outcomes)
    : names_(std::move(attribute_names)), num_rows_(rows.size()) {
  const std::size_t width = names_.size();
  if (width == 0) throw std::invalid_argument("dataset needs at least one attribute");
  if (width > kMaxAttributes) throw std::invalid_argument("too many attributes");
  if (outcomes.size() != rows.size()) {
    throw std::invalid_argument("outcome count " + std::to_string(outcomes.size()) +
                                " does not match row count " + std::to_string(rows.size()));
  }

  dictionaries_.resize(width);
  codes_.resize(width * num_rows_);
  for (std::size_t r = 0; r < num_rows_; ++r) {
    if (rows[r].size() != width) {
      throw std::invalid_argument("row " + std::to_string(r) + " has " + std::to_string(rows[r].size()) +
                                  " values, expected " + std::to_string(width));
    }
    for (std::size_t a = 0; a < width; ++a) {
      codes_[a * num_rows_ + r] = dictionaries_[a].intern(rows[r][a]);
    }
  }

  SymbolDictionary outcome_dict;
  outcome_ids_.reserve(num_rows_);
  for (const auto& o : outcomes) outcome_ids_.push_back(outcome_dict.intern(o));
  for (std::size_t i = 0; i < outcome_dict.size(); ++i) {
    outcome_labels_.push_back(outcome_dict.symbol(static_cast<SymbolCode>(i)));
  }

  frequencies_.assign(outcome_labels_.size(), 0);
  for (auto id : outcome_ids_) ++frequencies_[id];

  std::vector<OutcomeId> order(outcome_labels_.size());
  std::iota(order.begin(), order.end(), OutcomeId{0});
  std::sort(order.begin(), order.end(), [&](OutcomeId a, OutcomeId b) {
    if (frequencies_[a] != frequencies_[b]) return frequencies_[a] > frequencies_[b];
    return outcome_labels_[a] < outcome_labels_[b];
  });
  fallback_rank_.assign(order.size(), 0);
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    fallback_rank_[order[pos]] = static_cast<std::uint32_t>(pos);
  }
}

const Symbol& CategoricalDataset::value(std::size_t row, std::size_t attribute) const {
  if (row >= num_rows_ || attribute >= names_.size()) throw std::out_of_range("dataset cell out of range");
  return dictionaries_[attribute].symbol(codes_[attribute * num_rows_ + row]);
}

std::vector<Symbol> CategoricalDataset::row(std::size_t row) const {
  std::vector<Symbol> out;
  out.reserve(names_.size());
  for (std::size_t a = 0; a < names_.size(); ++a) out.push_back(value(row, a));
  return out;
}

std::span<const SymbolCode> CategoricalDataset::column(std::size_t attribute) const {
  if (attribute >= names_.size()) throw std::out_of_range("attribute index out of range");
  return std::span<const SymbolCode>(codes_).subspan(attribute * num_rows_, num_rows_);
}

std::vector<SymbolCode> CategoricalDataset::encode(const QueryEntry& query) const {
  if (query.size() != names_.size()) {
    throw std::invalid_argument("query has " + std::to_string(query.size()) + " values, expected " +
                                std::to_string(names_.size()));
  }
  std::vector<SymbolCode> out(query.size());
  for (std::size_t a = 0; a < query.size(); ++a) out[a] = dictionaries_[a].lookup(query[a]);
  return out;
}

// ---------------------------------------------------------------------------
// CSV

std::vector<std::vector<std::string>> read_csv_records(std::istream& in) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool in_quotes = false;
  bool field_quoted = false;
  bool record_started = false;
  std::size_t line = 1;

  auto end_field = [&] {
    if (field.empty() && !field_quoted) {
      throw ParseError(records.size() + 1, "empty field " + std::to_string(record.size() + 1));
    }
    record.push_back(std::move(field));
    field.clear();
    field_quoted = false;
  };
  auto end_record = [&] {
    end_field();
    records.push_back(std::move(record));
    record.clear();
    record_started = false;
  };

  char c;
  while (in.get(c)) {
    if (in_quotes) {
      if (c == '"') {
        if (in.peek() == '"') {
          in.get(c);
          field.push_back('"');
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line;
        field.push_back(c);
      }
      continue;
    }
    switch (c) {
      case '"':
        if (!field.empty()) throw ParseError(records.size() + 1, "stray quote inside unquoted field");
        in_quotes = true;
        field_quoted = true;
        record_started = true;
        break;
      case ',':
        record_started = true;
        end_field();
        break;
      case '\r':
        if (in.peek() == '\n') break;
        [[fallthrough]];
      case '\n':
        ++line;
        // Blank lines separate nothing; skip them.
        if (record_started || !field.empty()) end_record();
        break;
      default:
        if (field_quoted) throw ParseError(records.size() + 1, "text after closing quote");
        record_started = true;
        field.push_back(c);
    }
  }
  if (in_quotes) throw ParseError(records.size() + 1, "unterminated quoted field");
  if (record_started || !field.empty()) end_record();
  return records;
}

TargetColumn parse_target_column(std::string_view text) {
  if (text == "last") return LastColumn{};
  std::size_t index = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), index);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw std::invalid_argument("target column must be an index or 'last', got '" + std::string(text) + "'");
  }
  return index;
}

namespace {

void check_rectangular(const std::vector<std::vector<std::string>>& records) {
  const std::size_t width = records.front().size();
  for (std::size_t i = 1; i < records.size(); ++i) {
    if (records[i].size() != width) {
      throw ParseError(i + 1, "expected " + std::to_string(width) + " fields, got " +
                                  std::to_string(records[i].size()));
    }
  }
}

}  // namespace

CategoricalDataset load_csv(std::istream& in, TargetColumn target, bool has_header) {
  auto records = read_csv_records(in);
  if (records.empty()) throw ParseError(0, "empty input");
  check_rectangular(records);

  const std::size_t width = records.front().size();
  const std::size_t target_index =
      std::holds_alternative<LastColumn>(target) ? width - 1 : std::get<std::size_t>(target);
  if (target_index >= width) {
    throw std::invalid_argument("target column " + std::to_string(target_index) + " out of range for " +
                                std::to_string(width) + " fields");
  }
  if (width < 2) throw ParseError(1, "need at least one attribute column besides the target");

  std::vector<std::string> names;
  std::size_t first = 0;
  if (has_header) {
    for (std::size_t i = 0; i < width; ++i) {
      if (i != target_index) names.push_back(records[0][i]);
    }
    first = 1;
  } else {
    for (std::size_t i = 0; i + 1 < width; ++i) names.push_back("a" + std::to_string(i));
  }
  if (records.size() <= first) throw ParseError(0, "no data rows");

  std::vector<std::vector<Symbol>> rows;
  std::vector<Symbol> outcomes;
  rows.reserve(records.size() - first);
  for (std::size_t r = first; r < records.size(); ++r) {
    auto& rec = records[r];
    outcomes.push_back(std::move(rec[target_index]));
    rec.erase(rec.begin() + static_cast<std::ptrdiff_t>(target_index));
    rows.push_back(std::move(rec));
  }
  return CategoricalDataset(std::move(names), rows, outcomes);
}

CategoricalDataset load_csv_file(const std::string& path, TargetColumn target, bool has_header) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  return load_csv(in, target, has_header);
}

std::vector<QueryEntry> load_query_csv(std::istream& in, bool has_header) {
  auto records = read_csv_records(in);
  if (records.empty()) throw ParseError(0, "empty input");
  check_rectangular(records);
  if (has_header) records.erase(records.begin());
  return records;
}

namespace {

void write_field(std::ostream& out, std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) {
    out << s;
    return;
  }
  out << '"';
  for (char c : s) {
    if (c == '"') out << '"';
    out << c;
  }
  out << '"';
}

}  // namespace

void write_csv(std::ostream& out, const CategoricalDataset& data, std::string_view outcome_header) {
  for (const auto& name : data.attribute_names()) {
    write_field(out, name);
    out << ',';
  }
  write_field(out, outcome_header);
  out << '\n';
  for (std::size_t r = 0; r < data.num_rows(); ++r) {
    for (std::size_t a = 0; a < data.num_attributes(); ++a) {
      write_field(out, data.value(r, a));
      out << ',';
    }
    write_field(out, data.outcome(r));
    out << '\n';
  }
}

}  // namespace deodata
