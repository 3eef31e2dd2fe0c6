#include "discnb/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

namespace discnb {

const char* to_string(Errc code) noexcept {
  switch (code) {
    case Errc::InvalidArgument: return "invalid argument";
    case Errc::AllZeroWeights: return "all weights are zero";
    case Errc::ZeroEvidence: return "zero evidence";
    case Errc::ZeroPrior: return "zero prior";
    case Errc::ZeroMarginal: return "zero marginal";
    case Errc::EmptyDataset: return "empty dataset";
    case Errc::LengthMismatch: return "length mismatch";
    case Errc::UnknownSymbol: return "unknown symbol";
    case Errc::DimensionMismatch: return "dimension mismatch";
    case Errc::MissingPosteriors: return "missing posteriors";
    case Errc::StateSpaceTooLarge: return "state space too large";
    case Errc::DivergedLoss: return "diverged loss";
  }
  return "unknown error";
}

NamedSet::NamedSet(std::vector<std::string> names, std::size_t min_size, const char* what)
    : names_(std::move(names)) {
  if (names_.size() < min_size) {
    throw Error(Errc::InvalidArgument, std::string(what) + " needs at least " +
                                           std::to_string(min_size) + " entries");
  }
  std::unordered_set<std::string> seen;
  for (const auto& n : names_) {
    if (!seen.insert(n).second) {
      throw Error(Errc::InvalidArgument, std::string(what) + " has duplicate name '" + n + "'");
    }
  }
}

std::optional<std::size_t> NamedSet::find(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - names_.begin());
}

namespace {
std::vector<std::string> index_names(std::size_t n) {
  std::vector<std::string> names;
  names.reserve(n);
  for (std::size_t k = 0; k < n; ++k) names.push_back(std::to_string(k));
  return names;
}
}  // namespace

LabelSpace LabelSpace::indexed(std::size_t n) { return LabelSpace(index_names(n)); }

ObservationAlphabet ObservationAlphabet::indexed(std::size_t m) {
  return ObservationAlphabet(index_names(m));
}

ProbabilityVector::ProbabilityVector(std::vector<double> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw Error(Errc::InvalidArgument, "probability vector is empty");
  double sum = 0.0;
  for (double p : entries_) {
    if (!std::isfinite(p) || p < 0.0 || p > 1.0) {
      throw Error(Errc::InvalidArgument, "probability entry outside [0, 1]");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > kSimplexTolerance) {
    throw Error(Errc::InvalidArgument, "probability vector does not sum to 1");
  }
}

ProbabilityVector ProbabilityVector::normalized(std::span<const double> weights) {
  double sum = 0.0;
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0.0) {
      throw Error(Errc::InvalidArgument, "weights must be finite and non-negative");
    }
    sum += w;
  }
  if (sum <= 0.0) throw Error(Errc::AllZeroWeights, "all weights are zero");
  std::vector<double> out(weights.begin(), weights.end());
  for (double& w : out) w /= sum;
  return ProbabilityVector(std::move(out));
}

ProbabilityVector ProbabilityVector::uniform(std::size_t n) {
  return ProbabilityVector(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

bool ProbabilityVector::strictly_positive() const noexcept {
  return std::all_of(entries_.begin(), entries_.end(), [](double p) { return p > 0.0; });
}

LogWeightVector::LogWeightVector(std::vector<double> log_entries)
    : log_entries_(std::move(log_entries)) {
  for (double v : log_entries_) {
    if (std::isnan(v) || v == std::numeric_limits<double>::infinity()) {
      throw Error(Errc::InvalidArgument, "log weight must lie in [-inf, +inf)");
    }
  }
}

bool LogWeightVector::has_finite_entry() const noexcept {
  return std::any_of(log_entries_.begin(), log_entries_.end(),
                     [](double v) { return std::isfinite(v); });
}

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) return {};
  Matrix m(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols()) {
      throw Error(Errc::DimensionMismatch, "ragged matrix rows");
    }
    std::copy(rows[r].begin(), rows[r].end(), m.row(r).begin());
  }
  return m;
}

std::vector<std::vector<double>> Matrix::to_rows() const {
  std::vector<std::vector<double>> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r].assign(row(r).begin(), row(r).end());
  return out;
}

double logsumexp(std::span<const double> values) noexcept {
  if (values.empty()) return kNegInf;
  const double max = *std::max_element(values.begin(), values.end());
  if (max == kNegInf) return kNegInf;
  double sum = 0.0;
  for (double v : values) sum += std::exp(v - max);
  return max + std::log(sum);
}

ProbabilityVector normalize_log(std::span<const double> log_weights) {
  return normalize_log(LogWeightVector(std::vector<double>(log_weights.begin(), log_weights.end())));
}

ProbabilityVector normalize_log(const LogWeightVector& weights) {
  if (!weights.has_finite_entry()) {
    throw Error(Errc::AllZeroWeights, "every log weight is -inf");
  }
  const auto entries = weights.entries();
  const double max = entries[argmax(entries)];
  std::vector<double> out(weights.size());
  double total = 0.0;
  for (std::size_t k = 0; k < out.size(); ++k) total += out[k] = std::exp(weights[k] - max);
  for (double& x : out) x /= total;
  return ProbabilityVector(std::move(out));
}

double safe_log(double p) noexcept { return p > 0.0 ? std::log(p) : kNegInf; }

std::size_t argmax(std::span<const double> values) noexcept {
  std::size_t best = 0;
  for (std::size_t k = 1; k < values.size(); ++k) {
    if (values[k] > values[best]) best = k;
  }
  return best;
}

bool has_tied_max(std::span<const double> values) noexcept {
  if (values.empty()) return false;
  const double max = values[argmax(values)];
  return std::count(values.begin(), values.end(), max) > 1;
}

void require_stochastic_rows(const Matrix& m, const char* what) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    double sum = 0.0;
    for (double p : m.row(r)) {
      if (!std::isfinite(p) || p < 0.0 || p > 1.0) {
        throw Error(Errc::InvalidArgument, std::string(what) + ": entry outside [0, 1]");
      }
      sum += p;
    }
    if (std::abs(sum - 1.0) > kSimplexTolerance) {
      throw Error(Errc::InvalidArgument,
                  std::string(what) + ": row " + std::to_string(r) + " does not sum to 1");
    }
  }
}

}  // namespace discnb
