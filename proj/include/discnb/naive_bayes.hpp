#pragma once

// Naive Bayes over T observation positions, usable two ways:
//
//   generative:      p(x=i | y) ∝ prior(i) * prod_t b_i^(t)(y_t)
//   discriminative:  p(x=i | y) ∝ prior(i)^(1-T) * prod_t L^(t)_{y_t}(i)
//
// where L^(t)_y(i) = p(x=i | y_t=y) is the single-position posterior. The
// discriminative form never touches the observation law, so L may be any
// family of per-position classifiers; DiscriminativeNBModel uses the
// linear-softmax family L^(t)_y(i) = softmax_i(a_i^(t) y + c_i^(t)).

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "discnb/core.hpp"

namespace discnb {

using SymbolSequence = std::vector<std::size_t>;

struct LabeledSequence {
  std::size_t label = 0;
  SymbolSequence symbols;
};

class NaiveBayesModel {
 public:
  NaiveBayesModel() = default;
  /// emissions[t] is N x M_t; row i is the law of y_t given label i.
  NaiveBayesModel(LabelSpace labels, std::vector<ObservationAlphabet> alphabets,
                  ProbabilityVector prior, std::vector<Matrix> emissions);

  const LabelSpace& labels() const noexcept { return labels_; }
  const std::vector<ObservationAlphabet>& alphabets() const noexcept { return alphabets_; }
  const ProbabilityVector& prior() const noexcept { return prior_; }
  const std::vector<Matrix>& emissions() const noexcept { return emissions_; }
  const Matrix& emission(std::size_t t) const { return emissions_.at(t); }
  std::size_t num_labels() const noexcept { return labels_.size(); }
  std::size_t length() const noexcept { return alphabets_.size(); }

  /// Throws LengthMismatch / UnknownSymbol if `symbols` is not a valid observation.
  void check_observation(std::span<const std::size_t> symbols) const;

 private:
  LabelSpace labels_;
  std::vector<ObservationAlphabet> alphabets_;
  ProbabilityVector prior_;
  std::vector<Matrix> emissions_;
};

/// Pattern counts of a labeled discrete dataset.
struct SufficientStatistics {
  std::size_t sample_count = 0;
  std::vector<std::size_t> label_counts;
  /// emission_counts[t][i][m]: samples with label i and y_t = symbol m.
  std::vector<std::vector<std::vector<std::size_t>>> emission_counts;
};

SufficientStatistics count_patterns(const LabelSpace& labels,
                                    const std::vector<ObservationAlphabet>& alphabets,
                                    std::span<const LabeledSequence> dataset);

/// Maximum-likelihood fit by counting, with optional additive smoothing:
///   prior(i)       = (f(i) + alpha) / (L + N alpha)
///   b_i^(t)(m)     = (f_i^(t)(m) + alpha) / (f(i) + M_t alpha)
/// A label that never occurs under alpha = 0 gets prior 0 and a uniform
/// emission row (the row is unidentifiable and never contributes).
NaiveBayesModel nb_fit_mle(const LabelSpace& labels, const std::vector<ObservationAlphabet>& alphabets,
                           std::span<const LabeledSequence> dataset, double smoothing_alpha = 0.0);

ProbabilityVector nb_generative_posterior(const NaiveBayesModel& model,
                                          std::span<const std::size_t> symbols);

/// Joint log-likelihood sum_n log p(x_n, y_n) of a labeled dataset.
double nb_joint_log_likelihood(const NaiveBayesModel& model, std::span<const LabeledSequence> dataset);

/// Tabular single-position posteriors L^(t)_m(i) derived from a generative model.
class NbPosteriorTables {
 public:
  NbPosteriorTables(ProbabilityVector prior, std::vector<std::vector<double>> marginals,
                    std::vector<Matrix> columns);

  const ProbabilityVector& prior() const noexcept { return prior_; }
  std::size_t length() const noexcept { return columns_.size(); }
  /// Symbol marginal p(y_t = m).
  double marginal(std::size_t t, std::size_t symbol) const { return marginals_.at(t).at(symbol); }
  /// L^(t)_symbol(.); throws ZeroMarginal when p(y_t = symbol) = 0.
  ProbabilityVector column(std::size_t t, std::size_t symbol) const;
  std::vector<ProbabilityVector> columns_for(std::span<const std::size_t> symbols) const;

 private:
  ProbabilityVector prior_;
  std::vector<std::vector<double>> marginals_;
  std::vector<Matrix> columns_;  // columns_[t] is M_t x N
};

/// L^(t)_m(i) = prior(i) b_i^(t)(m) / p(y_t = m). When `marginals` is omitted
/// p(y_t = m) is the model-implied mixture sum_j prior(j) b_j^(t)(m); supplied
/// marginals must agree with it within kEquivalenceTolerance.
NbPosteriorTables nb_to_discriminative(
    const NaiveBayesModel& model,
    const std::optional<std::vector<std::vector<double>>>& marginals = std::nullopt);

/// Unnormalized discriminative score, log delta(i) = (1-T) log prior(i) + sum_t log L_t(i).
struct ScoreVector {
  LogWeightVector log_delta;
};

/// Columns need not be normalized; any non-negative weights of length N are
/// accepted, and rescaling a column leaves the normalized posterior unchanged.
ScoreVector discriminative_score(const ProbabilityVector& prior,
                                 std::span<const std::vector<double>> columns);

ProbabilityVector nb_discriminative_posterior(const ProbabilityVector& prior,
                                              std::span<const ProbabilityVector> columns);
ProbabilityVector nb_discriminative_posterior(const ProbabilityVector& prior,
                                              std::span<const std::vector<double>> columns);

/// Discriminative Naive Bayes with real-valued positions and linear-softmax
/// single-position posteriors. Parameters are stored N x T: slopes(i, t) is
/// a_i^(t) and intercepts(i, t) is c_i^(t).
class DiscriminativeNBModel {
 public:
  DiscriminativeNBModel() = default;
  DiscriminativeNBModel(LabelSpace labels, ProbabilityVector prior, Matrix slopes, Matrix intercepts);

  const LabelSpace& labels() const noexcept { return labels_; }
  const ProbabilityVector& prior() const noexcept { return prior_; }
  const Matrix& slopes() const noexcept { return slopes_; }
  const Matrix& intercepts() const noexcept { return intercepts_; }
  std::size_t num_labels() const noexcept { return labels_.size(); }
  std::size_t length() const noexcept { return slopes_.cols(); }

  /// log L^(t)_y(.) as a log-softmax.
  std::vector<double> log_column(std::size_t t, double y) const;
  ProbabilityVector column(std::size_t t, double y) const;

 private:
  LabelSpace labels_;
  ProbabilityVector prior_;
  Matrix slopes_;
  Matrix intercepts_;
};

ScoreVector disc_nb_score(const DiscriminativeNBModel& model, std::span<const double> observation);
ProbabilityVector disc_nb_posterior(const DiscriminativeNBModel& model,
                                    std::span<const double> observation);

}  // namespace discnb
