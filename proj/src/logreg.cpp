#include "discnb/logreg.hpp"

#include <cmath>
#include <string>

namespace discnb {

LogisticRegressionModel::LogisticRegressionModel(LabelSpace labels, Matrix weights,
                                                 std::vector<double> biases)
    : labels_(std::move(labels)), weights_(std::move(weights)), biases_(std::move(biases)) {
  if (weights_.rows() != labels_.size() || biases_.size() != labels_.size()) {
    throw Error(Errc::DimensionMismatch, "weights must be N x T and biases of length N");
  }
  if (weights_.cols() == 0) throw Error(Errc::InvalidArgument, "logistic regression needs T >= 1");
  for (double v : weights_.data()) {
    if (!std::isfinite(v)) throw Error(Errc::InvalidArgument, "weights must be finite");
  }
  for (double v : biases_) {
    if (!std::isfinite(v)) throw Error(Errc::InvalidArgument, "biases must be finite");
  }
}

std::vector<double> LogisticRegressionModel::logits(std::span<const double> observation) const {
  if (observation.size() != length()) {
    throw Error(Errc::DimensionMismatch, "observation has length " + std::to_string(observation.size()) +
                                             ", model expects " + std::to_string(length()));
  }
  std::vector<double> z(biases_);
  for (std::size_t i = 0; i < z.size(); ++i) {
    for (std::size_t t = 0; t < observation.size(); ++t) z[i] += weights_(i, t) * observation[t];
  }
  return z;
}

ProbabilityVector lr_posterior(const LogisticRegressionModel& model, std::span<const double> observation) {
  return normalize_log(model.logits(observation));
}

LogisticRegressionModel nb_to_lr(const DiscriminativeNBModel& model) {
  const std::size_t n = model.num_labels();
  const std::size_t len = model.length();
  if (!model.prior().strictly_positive()) {
    throw Error(Errc::ZeroPrior, "prior must be strictly positive");
  }
  const double prior_power = 1.0 - static_cast<double>(len);
  std::vector<double> biases(n);
  for (std::size_t i = 0; i < n; ++i) {
    double b = prior_power * std::log(model.prior()[i]);
    for (std::size_t t = 0; t < len; ++t) b += model.intercepts()(i, t);
    biases[i] = b;
  }
  return LogisticRegressionModel(model.labels(), model.slopes(), std::move(biases));
}

DiscriminativeNBModel lr_to_nb(const LogisticRegressionModel& model, const ProbabilityVector& prior) {
  const std::size_t n = model.num_labels();
  const std::size_t len = model.length();
  if (prior.size() != n) {
    throw Error(Errc::DimensionMismatch, "prior length differs from the number of labels");
  }
  if (!prior.strictly_positive()) {
    throw Error(Errc::ZeroPrior, "prior must be strictly positive");
  }
  const double positions = static_cast<double>(len);
  const double prior_power = 1.0 - positions;
  Matrix intercepts(n, len);
  for (std::size_t i = 0; i < n; ++i) {
    const double c = (model.biases()[i] - prior_power * std::log(prior[i])) / positions;
    for (std::size_t t = 0; t < len; ++t) intercepts(i, t) = c;
  }
  return DiscriminativeNBModel(model.labels(), prior, model.weights(), std::move(intercepts));
}

DiscriminativeNBModel lr_to_nb(const LogisticRegressionModel& model) {
  return lr_to_nb(model, ProbabilityVector::uniform(model.num_labels()));
}

}  // namespace discnb
