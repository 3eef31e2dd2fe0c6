#pragma once

// Gradient-descent training of the linear-softmax discriminative Naive Bayes
// by minimizing the mean cross-entropy of its posterior.
//
// Parameters: slopes a_i^(t), intercepts c_i^(t), and unconstrained prior
// logits u with prior = softmax(u). With e = posterior - onehot(label), the
// per-sample gradients are
//
//   d/da_i^(t) = e_i y_t,   d/dc_i^(t) = e_i,
//   d/du_j     = g_j - prior_j sum_k g_k   where g_k = (1-T) e_k.
//
// The per-position softmax normalizers are label-independent and cancel in
// the posterior, so they drop out of the gradient.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "discnb/core.hpp"
#include "discnb/naive_bayes.hpp"

namespace discnb {

struct RealSample {
  std::size_t label = 0;
  std::vector<double> y;
};

struct TrainConfig {
  double learning_rate = 0.1;
  std::size_t epochs = 100;
  std::size_t batch_size = 0;  // 0 means full batch
  std::uint64_t seed = 0;

  void validate() const;
};

struct TrainReport {
  double initial_loss = 0.0;
  std::vector<double> loss_curve;  // mean cross-entropy after each epoch
  double final_accuracy = 0.0;
};

struct Gradient {
  Matrix slopes;                     // N x T
  Matrix intercepts;                 // N x T
  std::vector<double> prior_logits;  // N
};

struct TrainResult {
  DiscriminativeNBModel model;
  TrainReport report;
};

/// Mean of -log p(x = label | y) over the dataset.
double loss_cross_entropy(const DiscriminativeNBModel& model, std::span<const RealSample> dataset);

/// Analytic gradient of loss_cross_entropy, with the prior taken through its
/// logits u = log prior.
Gradient gradient(const DiscriminativeNBModel& model, std::span<const RealSample> dataset);

/// Fraction of samples whose argmax posterior (lowest index on ties) is the label.
double accuracy(const DiscriminativeNBModel& model, std::span<const RealSample> dataset);

/// Rebuilds a model whose prior is softmax(prior_logits).
DiscriminativeNBModel model_from_logits(const LabelSpace& labels, std::span<const double> prior_logits,
                                        Matrix slopes, Matrix intercepts);

/// Plain gradient descent from a = 0, c = 0, uniform prior. Mini-batches (if
/// any) are drawn from a per-run shuffle seeded by config.seed. Throws
/// DivergedLoss if the loss stops being finite.
TrainResult fit_discriminative(std::span<const RealSample> dataset, std::size_t length,
                               const LabelSpace& labels, const TrainConfig& config);

}  // namespace discnb
