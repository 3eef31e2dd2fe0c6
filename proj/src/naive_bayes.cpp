#include "discnb/naive_bayes.hpp"

#include <cmath>
#include <string>

namespace discnb {

NaiveBayesModel::NaiveBayesModel(LabelSpace labels, std::vector<ObservationAlphabet> alphabets,
                                 ProbabilityVector prior, std::vector<Matrix> emissions)
    : labels_(std::move(labels)),
      alphabets_(std::move(alphabets)),
      prior_(std::move(prior)),
      emissions_(std::move(emissions)) {
  if (alphabets_.empty()) throw Error(Errc::InvalidArgument, "naive bayes needs T >= 1 positions");
  if (prior_.size() != labels_.size()) {
    throw Error(Errc::DimensionMismatch, "prior length differs from the number of labels");
  }
  if (emissions_.size() != alphabets_.size()) {
    throw Error(Errc::DimensionMismatch, "one emission table per position is required");
  }
  for (std::size_t t = 0; t < emissions_.size(); ++t) {
    const Matrix& table = emissions_[t];
    if (table.rows() != labels_.size() || table.cols() != alphabets_[t].size()) {
      throw Error(Errc::DimensionMismatch,
                  "emission table " + std::to_string(t) + " must be N x M_t");
    }
    require_stochastic_rows(table, "emission table");
  }
}

void NaiveBayesModel::check_observation(std::span<const std::size_t> symbols) const {
  if (symbols.size() != length()) {
    throw Error(Errc::LengthMismatch, "observation has length " + std::to_string(symbols.size()) +
                                          ", model expects " + std::to_string(length()));
  }
  for (std::size_t t = 0; t < symbols.size(); ++t) {
    if (symbols[t] >= alphabets_[t].size()) {
      throw Error(Errc::UnknownSymbol, "symbol index " + std::to_string(symbols[t]) +
                                           " outside alphabet at position " + std::to_string(t));
    }
  }
}

SufficientStatistics count_patterns(const LabelSpace& labels,
                                    const std::vector<ObservationAlphabet>& alphabets,
                                    std::span<const LabeledSequence> dataset) {
  if (dataset.empty()) throw Error(Errc::EmptyDataset, "empty dataset");
  const std::size_t n = labels.size();
  SufficientStatistics stats;
  stats.sample_count = dataset.size();
  stats.label_counts.assign(n, 0);
  stats.emission_counts.resize(alphabets.size());
  for (std::size_t t = 0; t < alphabets.size(); ++t) {
    stats.emission_counts[t].assign(n, std::vector<std::size_t>(alphabets[t].size(), 0));
  }
  for (std::size_t s = 0; s < dataset.size(); ++s) {
    const auto& sample = dataset[s];
    if (sample.label >= n) {
      throw Error(Errc::InvalidArgument, "sample " + std::to_string(s) + " has an unknown label");
    }
    if (sample.symbols.size() != alphabets.size()) {
      throw Error(Errc::LengthMismatch, "sample " + std::to_string(s) + " has length " +
                                            std::to_string(sample.symbols.size()) + ", expected " +
                                            std::to_string(alphabets.size()));
    }
    ++stats.label_counts[sample.label];
    for (std::size_t t = 0; t < alphabets.size(); ++t) {
      const std::size_t m = sample.symbols[t];
      if (m >= alphabets[t].size()) {
        throw Error(Errc::UnknownSymbol, "sample " + std::to_string(s) +
                                             " has an unknown symbol at position " + std::to_string(t));
      }
      ++stats.emission_counts[t][sample.label][m];
    }
  }
  return stats;
}

NaiveBayesModel nb_fit_mle(const LabelSpace& labels, const std::vector<ObservationAlphabet>& alphabets,
                           std::span<const LabeledSequence> dataset, double smoothing_alpha) {
  if (!(smoothing_alpha >= 0.0) || !std::isfinite(smoothing_alpha)) {
    throw Error(Errc::InvalidArgument, "smoothing alpha must be a finite non-negative number");
  }
  if (alphabets.empty()) throw Error(Errc::InvalidArgument, "naive bayes needs T >= 1 positions");
  const SufficientStatistics stats = count_patterns(labels, alphabets, dataset);
  const std::size_t n = labels.size();
  const double alpha = smoothing_alpha;

  std::vector<double> prior(n);
  const double prior_denom = static_cast<double>(stats.sample_count) + static_cast<double>(n) * alpha;
  for (std::size_t i = 0; i < n; ++i) {
    prior[i] = (static_cast<double>(stats.label_counts[i]) + alpha) / prior_denom;
  }

  std::vector<Matrix> emissions;
  emissions.reserve(alphabets.size());
  for (std::size_t t = 0; t < alphabets.size(); ++t) {
    const std::size_t m_t = alphabets[t].size();
    Matrix table(n, m_t);
    for (std::size_t i = 0; i < n; ++i) {
      const double denom =
          static_cast<double>(stats.label_counts[i]) + static_cast<double>(m_t) * alpha;
      for (std::size_t m = 0; m < m_t; ++m) {
        table(i, m) = denom > 0.0
                          ? (static_cast<double>(stats.emission_counts[t][i][m]) + alpha) / denom
                          : 1.0 / static_cast<double>(m_t);
      }
    }
    emissions.push_back(std::move(table));
  }
  return NaiveBayesModel(labels, alphabets, ProbabilityVector(std::move(prior)), std::move(emissions));
}

namespace {

std::vector<double> joint_log_weights(const NaiveBayesModel& model, std::span<const std::size_t> symbols) {
  std::vector<double> logw(model.num_labels());
  for (std::size_t i = 0; i < logw.size(); ++i) {
    double acc = safe_log(model.prior()[i]);
    for (std::size_t t = 0; t < symbols.size() && acc != kNegInf; ++t) {
      acc += safe_log(model.emission(t)(i, symbols[t]));
    }
    logw[i] = acc;
  }
  return logw;
}

}  // namespace

ProbabilityVector nb_generative_posterior(const NaiveBayesModel& model,
                                          std::span<const std::size_t> symbols) {
  model.check_observation(symbols);
  LogWeightVector logw(joint_log_weights(model, symbols));
  if (!logw.has_finite_entry()) {
    throw Error(Errc::ZeroEvidence, "zero evidence: the observation has probability 0 under every label");
  }
  return normalize_log(logw);
}

double nb_joint_log_likelihood(const NaiveBayesModel& model, std::span<const LabeledSequence> dataset) {
  double total = 0.0;
  for (const auto& sample : dataset) {
    model.check_observation(sample.symbols);
    total += joint_log_weights(model, sample.symbols).at(sample.label);
  }
  return total;
}

NbPosteriorTables::NbPosteriorTables(ProbabilityVector prior, std::vector<std::vector<double>> marginals,
                                     std::vector<Matrix> columns)
    : prior_(std::move(prior)), marginals_(std::move(marginals)), columns_(std::move(columns)) {
  if (marginals_.size() != columns_.size()) {
    throw Error(Errc::DimensionMismatch, "one marginal vector per position is required");
  }
}

ProbabilityVector NbPosteriorTables::column(std::size_t t, std::size_t symbol) const {
  const Matrix& table = columns_.at(t);
  if (symbol >= table.rows()) {
    throw Error(Errc::UnknownSymbol, "symbol index " + std::to_string(symbol) +
                                         " outside alphabet at position " + std::to_string(t));
  }
  if (!(marginals_[t][symbol] > 0.0)) {
    throw Error(Errc::ZeroMarginal, "symbol " + std::to_string(symbol) + " at position " +
                                        std::to_string(t) + " has zero marginal probability");
  }
  const auto row = table.row(symbol);
  return ProbabilityVector(std::vector<double>(row.begin(), row.end()));
}

std::vector<ProbabilityVector> NbPosteriorTables::columns_for(std::span<const std::size_t> symbols) const {
  if (symbols.size() != length()) {
    throw Error(Errc::LengthMismatch, "observation length differs from the number of positions");
  }
  std::vector<ProbabilityVector> out;
  out.reserve(symbols.size());
  for (std::size_t t = 0; t < symbols.size(); ++t) out.push_back(column(t, symbols[t]));
  return out;
}

NbPosteriorTables nb_to_discriminative(const NaiveBayesModel& model,
                                       const std::optional<std::vector<std::vector<double>>>& marginals) {
  if (!model.prior().strictly_positive()) {
    throw Error(Errc::ZeroPrior, "prior must be strictly positive");
  }
  const std::size_t n = model.num_labels();
  std::vector<std::vector<double>> implied(model.length());
  std::vector<Matrix> columns;
  columns.reserve(model.length());
  for (std::size_t t = 0; t < model.length(); ++t) {
    const Matrix& b = model.emission(t);
    Matrix table(b.cols(), n);
    implied[t].assign(b.cols(), 0.0);
    for (std::size_t m = 0; m < b.cols(); ++m) {
      double evidence = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        table(m, i) = model.prior()[i] * b(i, m);
        evidence += table(m, i);
      }
      implied[t][m] = evidence;
      if (evidence > 0.0) {
        for (std::size_t i = 0; i < n; ++i) table(m, i) /= evidence;
      }
    }
    columns.push_back(std::move(table));
  }

  if (marginals) {
    if (marginals->size() != implied.size()) {
      throw Error(Errc::DimensionMismatch, "one marginal vector per position is required");
    }
    for (std::size_t t = 0; t < implied.size(); ++t) {
      if ((*marginals)[t].size() != implied[t].size()) {
        throw Error(Errc::DimensionMismatch, "marginal vector length differs from the alphabet size");
      }
      for (std::size_t m = 0; m < implied[t].size(); ++m) {
        if (std::abs((*marginals)[t][m] - implied[t][m]) > kEquivalenceTolerance) {
          throw Error(Errc::InvalidArgument, "supplied marginal at position " + std::to_string(t) +
                                                 " disagrees with the model-implied marginal");
        }
      }
    }
    return NbPosteriorTables(model.prior(), *marginals, std::move(columns));
  }
  return NbPosteriorTables(model.prior(), std::move(implied), std::move(columns));
}

namespace {

void require_positive_prior(const ProbabilityVector& prior) {
  if (!prior.strictly_positive()) {
    throw Error(Errc::ZeroPrior, "prior must be strictly positive");
  }
}

}  // namespace

ScoreVector discriminative_score(const ProbabilityVector& prior,
                                 std::span<const std::vector<double>> columns) {
  require_positive_prior(prior);
  if (columns.empty()) throw Error(Errc::InvalidArgument, "at least one posterior column is required");
  const std::size_t n = prior.size();
  const double prior_power = 1.0 - static_cast<double>(columns.size());
  std::vector<double> log_delta(n);
  for (std::size_t i = 0; i < n; ++i) log_delta[i] = prior_power * std::log(prior[i]);
  for (const auto& column : columns) {
    if (column.size() != n) {
      throw Error(Errc::DimensionMismatch, "posterior column length differs from the number of labels");
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (!std::isfinite(column[i]) || column[i] < 0.0) {
        throw Error(Errc::InvalidArgument, "posterior column entries must be finite and non-negative");
      }
      log_delta[i] += safe_log(column[i]);
    }
  }
  return ScoreVector{LogWeightVector(std::move(log_delta))};
}

ProbabilityVector nb_discriminative_posterior(const ProbabilityVector& prior,
                                              std::span<const std::vector<double>> columns) {
  return normalize_log(discriminative_score(prior, columns).log_delta);
}

ProbabilityVector nb_discriminative_posterior(const ProbabilityVector& prior,
                                              std::span<const ProbabilityVector> columns) {
  std::vector<std::vector<double>> raw;
  raw.reserve(columns.size());
  for (const auto& c : columns) raw.push_back(c.vec());
  return nb_discriminative_posterior(prior, std::span<const std::vector<double>>(raw));
}

DiscriminativeNBModel::DiscriminativeNBModel(LabelSpace labels, ProbabilityVector prior, Matrix slopes,
                                             Matrix intercepts)
    : labels_(std::move(labels)),
      prior_(std::move(prior)),
      slopes_(std::move(slopes)),
      intercepts_(std::move(intercepts)) {
  const std::size_t n = labels_.size();
  if (prior_.size() != n) {
    throw Error(Errc::DimensionMismatch, "prior length differs from the number of labels");
  }
  require_positive_prior(prior_);
  if (slopes_.rows() != n || intercepts_.rows() != n || slopes_.cols() != intercepts_.cols()) {
    throw Error(Errc::DimensionMismatch, "slopes and intercepts must both be N x T");
  }
  if (slopes_.cols() == 0) throw Error(Errc::InvalidArgument, "discriminative model needs T >= 1");
  for (double v : slopes_.data()) {
    if (!std::isfinite(v)) throw Error(Errc::InvalidArgument, "slopes must be finite");
  }
  for (double v : intercepts_.data()) {
    if (!std::isfinite(v)) throw Error(Errc::InvalidArgument, "intercepts must be finite");
  }
}

std::vector<double> DiscriminativeNBModel::log_column(std::size_t t, double y) const {
  std::vector<double> z(num_labels());
  for (std::size_t i = 0; i < z.size(); ++i) z[i] = slopes_(i, t) * y + intercepts_(i, t);
  const double norm = logsumexp(z);
  for (double& v : z) v -= norm;
  return z;
}

ProbabilityVector DiscriminativeNBModel::column(std::size_t t, double y) const {
  return normalize_log(log_column(t, y));
}

ScoreVector disc_nb_score(const DiscriminativeNBModel& model, std::span<const double> observation) {
  if (observation.size() != model.length()) {
    throw Error(Errc::LengthMismatch, "observation has length " + std::to_string(observation.size()) +
                                          ", model expects " + std::to_string(model.length()));
  }
  const std::size_t n = model.num_labels();
  const double prior_power = 1.0 - static_cast<double>(model.length());
  std::vector<double> log_delta(n);
  for (std::size_t i = 0; i < n; ++i) log_delta[i] = prior_power * std::log(model.prior()[i]);
  for (std::size_t t = 0; t < observation.size(); ++t) {
    if (!std::isfinite(observation[t])) {
      throw Error(Errc::InvalidArgument, "observation entries must be finite");
    }
    const auto log_l = model.log_column(t, observation[t]);
    for (std::size_t i = 0; i < n; ++i) log_delta[i] += log_l[i];
  }
  return ScoreVector{LogWeightVector(std::move(log_delta))};
}

ProbabilityVector disc_nb_posterior(const DiscriminativeNBModel& model,
                                    std::span<const double> observation) {
  return normalize_log(disc_nb_score(model, observation).log_delta);
}

}  // namespace discnb
