#pragma once

// Shared numeric building blocks: label/symbol spaces, points on the
// probability simplex, log-domain weight vectors and a small dense matrix.
//
// Every posterior in the library is computed from log weights and only
// exponentiated at the API boundary; -inf is the log of a zero probability.

#include <cstddef>
#include <initializer_list>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace discnb {

inline constexpr double kSimplexTolerance = 1e-12;
inline constexpr double kEquivalenceTolerance = 1e-10;
inline constexpr double kGradientRelativeTolerance = 1e-5;
inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

enum class Errc {
  InvalidArgument,
  AllZeroWeights,
  ZeroEvidence,
  ZeroPrior,
  ZeroMarginal,
  EmptyDataset,
  LengthMismatch,
  UnknownSymbol,
  DimensionMismatch,
  MissingPosteriors,
  StateSpaceTooLarge,
  DivergedLoss,
};

const char* to_string(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

/// Ordered set of named categories. Backs both the label space and the
/// per-position observation alphabets.
class NamedSet {
 public:
  NamedSet() = default;
  NamedSet(std::vector<std::string> names, std::size_t min_size, const char* what);

  std::size_t size() const noexcept { return names_.size(); }
  const std::string& name(std::size_t k) const { return names_.at(k); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  std::optional<std::size_t> find(const std::string& name) const;

  friend bool operator==(const NamedSet&, const NamedSet&) = default;

 private:
  std::vector<std::string> names_;
};

/// The N >= 2 output classes.
class LabelSpace : public NamedSet {
 public:
  LabelSpace() = default;
  explicit LabelSpace(std::vector<std::string> names) : NamedSet(std::move(names), 2, "label space") {}
  /// Labels named "0", "1", ... "n-1".
  static LabelSpace indexed(std::size_t n);
};

/// The M >= 1 discrete symbols an observation position may take.
class ObservationAlphabet : public NamedSet {
 public:
  ObservationAlphabet() = default;
  explicit ObservationAlphabet(std::vector<std::string> names)
      : NamedSet(std::move(names), 1, "observation alphabet") {}
  static ObservationAlphabet indexed(std::size_t m);
};

/// Point on the simplex: non-negative entries summing to one within
/// kSimplexTolerance.
class ProbabilityVector {
 public:
  ProbabilityVector() = default;
  explicit ProbabilityVector(std::vector<double> entries);
  ProbabilityVector(std::initializer_list<double> entries)
      : ProbabilityVector(std::vector<double>(entries)) {}

  /// Divides non-negative weights by their sum.
  static ProbabilityVector normalized(std::span<const double> weights);
  static ProbabilityVector uniform(std::size_t n);

  std::size_t size() const noexcept { return entries_.size(); }
  double operator[](std::size_t k) const { return entries_[k]; }
  std::span<const double> entries() const noexcept { return entries_; }
  const std::vector<double>& vec() const noexcept { return entries_; }
  bool strictly_positive() const noexcept;

  friend bool operator==(const ProbabilityVector&, const ProbabilityVector&) = default;

 private:
  std::vector<double> entries_;
};

/// Log-domain weights. Entries lie in [-inf, +inf); NaN is rejected.
class LogWeightVector {
 public:
  LogWeightVector() = default;
  explicit LogWeightVector(std::vector<double> log_entries);

  std::size_t size() const noexcept { return log_entries_.size(); }
  double operator[](std::size_t k) const { return log_entries_[k]; }
  std::span<const double> entries() const noexcept { return log_entries_; }
  bool has_finite_entry() const noexcept;

 private:
  std::vector<double> log_entries_;
};

/// Row-major dense matrix of doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  /// Builds from nested rows; all rows must have the same length.
  static Matrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> data() const noexcept { return data_; }
  std::vector<std::vector<double>> to_rows() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// log(sum(exp(values))) by max-shift. Empty or all -inf input gives -inf.
double logsumexp(std::span<const double> values) noexcept;

/// exp(w - logsumexp(w)). Throws Errc::AllZeroWeights when every entry is -inf.
ProbabilityVector normalize_log(const LogWeightVector& weights);
ProbabilityVector normalize_log(std::span<const double> log_weights);

/// Natural log with log(0) = -inf.
double safe_log(double p) noexcept;

/// Index of the largest entry; ties resolve to the lowest index.
std::size_t argmax(std::span<const double> values) noexcept;
/// True when the maximum is attained more than once.
bool has_tied_max(std::span<const double> values) noexcept;

/// Checks that every row of `m` is a probability vector; throws InvalidArgument otherwise.
void require_stochastic_rows(const Matrix& m, const char* what);

}  // namespace discnb
