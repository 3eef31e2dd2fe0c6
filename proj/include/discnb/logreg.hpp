#pragma once

// Multinomial logistic regression, p(x=i | y) = softmax_i(W_i . y + b_i), and
// its exact correspondence with the linear-softmax discriminative Naive Bayes:
//
//   W_i = [a_i^(1), ..., a_i^(T)]
//   b_i = (1-T) log prior(i) + sum_t c_i^(t)
//
// The reverse direction is not unique. lr_to_nb takes the prior from the
// caller and splits each bias evenly over the T positions.

#include <cstddef>
#include <span>
#include <vector>

#include "discnb/core.hpp"
#include "discnb/naive_bayes.hpp"

namespace discnb {

class LogisticRegressionModel {
 public:
  LogisticRegressionModel() = default;
  /// weights is N x T, biases has length N.
  LogisticRegressionModel(LabelSpace labels, Matrix weights, std::vector<double> biases);

  const LabelSpace& labels() const noexcept { return labels_; }
  const Matrix& weights() const noexcept { return weights_; }
  const std::vector<double>& biases() const noexcept { return biases_; }
  std::size_t num_labels() const noexcept { return labels_.size(); }
  std::size_t length() const noexcept { return weights_.cols(); }

  /// W y + b.
  std::vector<double> logits(std::span<const double> observation) const;

 private:
  LabelSpace labels_;
  Matrix weights_;
  std::vector<double> biases_;
};

/// Strictly positive for every finite input.
ProbabilityVector lr_posterior(const LogisticRegressionModel& model, std::span<const double> observation);

LogisticRegressionModel nb_to_lr(const DiscriminativeNBModel& model);

/// a_i^(t) = W(i, t), c_i^(t) = (b_i - (1-T) log prior(i)) / T.
DiscriminativeNBModel lr_to_nb(const LogisticRegressionModel& model, const ProbabilityVector& prior);
/// Uses the uniform prior.
DiscriminativeNBModel lr_to_nb(const LogisticRegressionModel& model);

}  // namespace discnb
