#pragma once

// CSV datasets for the command-line tool. The first line is a header; every
// following non-blank line must have the same number of comma-separated
// fields. Labeled files put the label in the first column.

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "discnb/core.hpp"
#include "discnb/naive_bayes.hpp"
#include "discnb/train.hpp"

namespace discnb::cli {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> line_numbers;  // 1-based source line of each row
};

/// Throws Error(EmptyDataset) when there is no data row, Error(InvalidArgument)
/// with a line number on ragged input.
CsvTable read_csv(const std::filesystem::path& path);

std::vector<std::string> split_list(const std::string& text);

struct DiscreteDataset {
  LabelSpace labels;
  std::vector<ObservationAlphabet> alphabets;
  std::vector<LabeledSequence> samples;
};

/// Labels come from `declared_labels` when given, otherwise in order of first
/// appearance; symbols per position in order of first appearance.
DiscreteDataset discrete_dataset(const CsvTable& table,
                                 const std::optional<std::vector<std::string>>& declared_labels);

struct RealDataset {
  LabelSpace labels;
  std::size_t length = 0;
  std::vector<RealSample> samples;
};

RealDataset real_dataset(const CsvTable& table, const std::optional<std::vector<std::string>>& declared_labels);

/// Feature columns of an observation file: either exactly `length` columns,
/// or `length + 1` with a leading column named "label" that is ignored.
std::vector<std::vector<std::string>> observation_fields(const CsvTable& table, std::size_t length);

double parse_real(const std::string& text, std::size_t line);

}  // namespace discnb::cli
