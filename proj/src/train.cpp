#include "discnb/train.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>

namespace discnb {

void TrainConfig::validate() const {
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
    throw Error(Errc::InvalidArgument, "learning rate must be positive");
  }
  if (epochs < 1) throw Error(Errc::InvalidArgument, "epochs must be at least 1");
}

namespace {

void check_dataset(const DiscriminativeNBModel& model, std::span<const RealSample> dataset) {
  if (dataset.empty()) throw Error(Errc::EmptyDataset, "empty dataset");
  for (std::size_t s = 0; s < dataset.size(); ++s) {
    if (dataset[s].label >= model.num_labels()) {
      throw Error(Errc::InvalidArgument, "sample " + std::to_string(s) + " has an unknown label");
    }
    if (dataset[s].y.size() != model.length()) {
      throw Error(Errc::LengthMismatch, "sample " + std::to_string(s) + " has dimension " +
                                            std::to_string(dataset[s].y.size()) + ", expected " +
                                            std::to_string(model.length()));
    }
  }
}

}  // namespace

double loss_cross_entropy(const DiscriminativeNBModel& model, std::span<const RealSample> dataset) {
  check_dataset(model, dataset);
  double total = 0.0;
  for (const auto& sample : dataset) {
    const auto score = disc_nb_score(model, sample.y);
    total += logsumexp(score.log_delta.entries()) - score.log_delta[sample.label];
  }
  return total / static_cast<double>(dataset.size());
}

Gradient gradient(const DiscriminativeNBModel& model, std::span<const RealSample> dataset) {
  check_dataset(model, dataset);
  const std::size_t n = model.num_labels();
  const std::size_t len = model.length();
  const double prior_power = 1.0 - static_cast<double>(len);

  Gradient grad{Matrix(n, len), Matrix(n, len), std::vector<double>(n, 0.0)};
  std::vector<double> residual(n);
  for (const auto& sample : dataset) {
    const auto posterior = disc_nb_posterior(model, sample.y);
    for (std::size_t i = 0; i < n; ++i) residual[i] = posterior[i] - (i == sample.label ? 1.0 : 0.0);

    double residual_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t t = 0; t < len; ++t) {
        grad.slopes(i, t) += residual[i] * sample.y[t];
        grad.intercepts(i, t) += residual[i];
      }
      residual_sum += prior_power * residual[i];
    }
    for (std::size_t j = 0; j < n; ++j) {
      grad.prior_logits[j] += prior_power * residual[j] - model.prior()[j] * residual_sum;
    }
  }

  const double scale = 1.0 / static_cast<double>(dataset.size());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t t = 0; t < len; ++t) {
      grad.slopes(i, t) *= scale;
      grad.intercepts(i, t) *= scale;
    }
    grad.prior_logits[i] *= scale;
  }
  return grad;
}

double accuracy(const DiscriminativeNBModel& model, std::span<const RealSample> dataset) {
  check_dataset(model, dataset);
  std::size_t hits = 0;
  for (const auto& sample : dataset) {
    const auto posterior = disc_nb_posterior(model, sample.y);
    if (argmax(posterior.entries()) == sample.label) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(dataset.size());
}

DiscriminativeNBModel model_from_logits(const LabelSpace& labels, std::span<const double> prior_logits,
                                        Matrix slopes, Matrix intercepts) {
  return DiscriminativeNBModel(labels, normalize_log(prior_logits), std::move(slopes), std::move(intercepts));
}

TrainResult fit_discriminative(std::span<const RealSample> dataset, std::size_t length,
                               const LabelSpace& labels, const TrainConfig& config) {
  config.validate();
  if (dataset.empty()) throw Error(Errc::EmptyDataset, "empty dataset");
  if (length == 0) throw Error(Errc::InvalidArgument, "observation dimension must be at least 1");
  const std::size_t n = labels.size();

  std::vector<double> logits(n, 0.0);
  Matrix slopes(n, length);
  Matrix intercepts(n, length);
  DiscriminativeNBModel model = model_from_logits(labels, logits, slopes, intercepts);

  TrainReport report;
  report.initial_loss = loss_cross_entropy(model, dataset);
  report.loss_curve.reserve(config.epochs);

  const std::size_t batch = (config.batch_size == 0 || config.batch_size >= dataset.size())
                                ? dataset.size()
                                : config.batch_size;
  std::vector<std::size_t> order(dataset.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 rng(config.seed);
  std::vector<RealSample> minibatch;

  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    if (batch < dataset.size()) std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t start = 0; start < dataset.size(); start += batch) {
      Gradient grad;
      if (batch == dataset.size()) {
        grad = gradient(model, dataset);
      } else {
        minibatch.clear();
        for (std::size_t k = start; k < std::min(start + batch, dataset.size()); ++k) {
          minibatch.push_back(dataset[order[k]]);
        }
        grad = gradient(model, minibatch);
      }
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t t = 0; t < length; ++t) {
          slopes(i, t) -= config.learning_rate * grad.slopes(i, t);
          intercepts(i, t) -= config.learning_rate * grad.intercepts(i, t);
        }
        logits[i] -= config.learning_rate * grad.prior_logits[i];
      }
      try {
        model = model_from_logits(labels, logits, slopes, intercepts);
      } catch (const Error&) {
        throw Error(Errc::DivergedLoss, "parameters left the finite range at epoch " +
                                            std::to_string(epoch + 1));
      }
    }
    double loss = 0.0;
    try {
      loss = loss_cross_entropy(model, dataset);
    } catch (const Error&) {
      loss = std::numeric_limits<double>::quiet_NaN();
    }
    if (!std::isfinite(loss)) {
      throw Error(Errc::DivergedLoss, "loss became non-finite at epoch " + std::to_string(epoch + 1));
    }
    report.loss_curve.push_back(loss);
  }
  report.final_accuracy = accuracy(model, dataset);
  return TrainResult{std::move(model), std::move(report)};
}

}  // namespace discnb
