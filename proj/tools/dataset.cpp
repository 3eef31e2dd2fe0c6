#include "dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>

namespace discnb::cli {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void bad_line(std::size_t line, const std::string& what) {
  throw Error(Errc::InvalidArgument, "line " + std::to_string(line) + ": " + what);
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma == std::string::npos ? std::string::npos : comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

LabelSpace resolve_labels(const CsvTable& table, const std::optional<std::vector<std::string>>& declared,
                          std::vector<std::size_t>& label_of_row) {
  std::vector<std::string> names;
  if (declared) names = *declared;
  for (const auto& row : table.rows) {
    if (!declared && std::find(names.begin(), names.end(), row[0]) == names.end()) names.push_back(row[0]);
  }
  if (names.size() < 2) {
    throw Error(Errc::InvalidArgument,
                "need at least 2 labels; declare the full label set with --labels");
  }
  LabelSpace labels(names);
  label_of_row.clear();
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto idx = labels.find(table.rows[r][0]);
    if (!idx) bad_line(table.line_numbers[r], "label '" + table.rows[r][0] + "' is not declared");
    label_of_row.push_back(*idx);
  }
  return labels;
}

void require_features(const CsvTable& table) {
  if (table.header.size() < 2) {
    throw Error(Errc::InvalidArgument, "line 1: header needs a label column and at least one feature column");
  }
}

}  // namespace

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::InvalidArgument, "cannot open '" + path.string() + "'");
  CsvTable table;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto fields = split_fields(line);
    if (!have_header) {
      table.header = std::move(fields);
      have_header = true;
      continue;
    }
    if (fields.size() != table.header.size()) {
      bad_line(line_no, "expected " + std::to_string(table.header.size()) + " fields, got " +
                            std::to_string(fields.size()));
    }
    for (const auto& f : fields) {
      if (f.empty()) bad_line(line_no, "empty field");
    }
    table.rows.push_back(std::move(fields));
    table.line_numbers.push_back(line_no);
  }
  if (table.rows.empty()) throw Error(Errc::EmptyDataset, "empty dataset");
  return table;
}

std::vector<std::string> split_list(const std::string& text) {
  auto out = split_fields(text);
  for (const auto& s : out) {
    if (s.empty()) throw Error(Errc::InvalidArgument, "empty entry in list '" + text + "'");
  }
  return out;
}

double parse_real(const std::string& text, std::size_t line) {
  double value = 0.0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
    bad_line(line, "'" + text + "' is not a finite number");
  }
  return value;
}

DiscreteDataset discrete_dataset(const CsvTable& table,
                                 const std::optional<std::vector<std::string>>& declared_labels) {
  require_features(table);
  DiscreteDataset out;
  std::vector<std::size_t> label_of_row;
  out.labels = resolve_labels(table, declared_labels, label_of_row);

  const std::size_t len = table.header.size() - 1;
  std::vector<std::vector<std::string>> symbols(len);
  for (const auto& row : table.rows) {
    for (std::size_t t = 0; t < len; ++t) {
      if (std::find(symbols[t].begin(), symbols[t].end(), row[t + 1]) == symbols[t].end()) {
        symbols[t].push_back(row[t + 1]);
      }
    }
  }
  for (auto& s : symbols) out.alphabets.emplace_back(std::move(s));

  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    LabeledSequence sample{label_of_row[r], SymbolSequence(len)};
    for (std::size_t t = 0; t < len; ++t) sample.symbols[t] = *out.alphabets[t].find(table.rows[r][t + 1]);
    out.samples.push_back(std::move(sample));
  }
  return out;
}

RealDataset real_dataset(const CsvTable& table, const std::optional<std::vector<std::string>>& declared_labels) {
  require_features(table);
  RealDataset out;
  std::vector<std::size_t> label_of_row;
  out.labels = resolve_labels(table, declared_labels, label_of_row);
  out.length = table.header.size() - 1;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    RealSample sample{label_of_row[r], std::vector<double>(out.length)};
    for (std::size_t t = 0; t < out.length; ++t) {
      sample.y[t] = parse_real(table.rows[r][t + 1], table.line_numbers[r]);
    }
    out.samples.push_back(std::move(sample));
  }
  return out;
}

std::vector<std::vector<std::string>> observation_fields(const CsvTable& table, std::size_t length) {
  std::size_t offset = 0;
  if (table.header.size() == length + 1 && table.header[0] == "label") {
    offset = 1;
  } else if (table.header.size() != length) {
    throw Error(Errc::DimensionMismatch, "dimension mismatch: observation file has " +
                                             std::to_string(table.header.size()) +
                                             " columns, model expects " + std::to_string(length));
  }
  std::vector<std::vector<std::string>> out;
  out.reserve(table.rows.size());
  for (const auto& row : table.rows) out.emplace_back(row.begin() + static_cast<std::ptrdiff_t>(offset), row.end());
  return out;
}

}  // namespace discnb::cli
