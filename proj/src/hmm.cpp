#include "discnb/hmm.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace discnb {

HmmModel::HmmModel(LabelSpace labels, ObservationAlphabet alphabet, ProbabilityVector prior,
                   Matrix transitions, std::optional<Matrix> emissions, std::optional<Matrix> posteriors)
    : labels_(std::move(labels)),
      alphabet_(std::move(alphabet)),
      prior_(std::move(prior)),
      transitions_(std::move(transitions)),
      emissions_(std::move(emissions)),
      posteriors_(std::move(posteriors)) {
  const std::size_t n = labels_.size();
  const std::size_t m = alphabet_.size();
  if (prior_.size() != n) throw Error(Errc::DimensionMismatch, "prior length differs from the number of states");
  if (transitions_.rows() != n || transitions_.cols() != n) {
    throw Error(Errc::DimensionMismatch, "transition matrix must be N x N");
  }
  require_stochastic_rows(transitions_, "transition matrix");
  if (!emissions_ && !posteriors_) {
    throw Error(Errc::InvalidArgument, "hmm needs emissions, posteriors, or both");
  }
  if (emissions_) {
    if (emissions_->rows() != n || emissions_->cols() != m) {
      throw Error(Errc::DimensionMismatch, "emission matrix must be N x M");
    }
    require_stochastic_rows(*emissions_, "emission matrix");
  }
  if (posteriors_) {
    if (posteriors_->rows() != m || posteriors_->cols() != n) {
      throw Error(Errc::DimensionMismatch, "posterior table must be M x N");
    }
    require_stochastic_rows(*posteriors_, "posterior table");
  }
  if (emissions_ && posteriors_) {
    for (std::size_t y = 0; y < m; ++y) {
      double evidence = 0.0;
      for (std::size_t i = 0; i < n; ++i) evidence += prior_[i] * (*emissions_)(i, y);
      if (!(evidence > 0.0)) continue;
      for (std::size_t i = 0; i < n; ++i) {
        const double implied = prior_[i] * (*emissions_)(i, y) / evidence;
        if (std::abs(implied - (*posteriors_)(y, i)) > kEquivalenceTolerance) {
          throw Error(Errc::InvalidArgument, "posterior column for symbol '" + alphabet_.name(y) +
                                                 "' is inconsistent with prior and emissions");
        }
      }
    }
  }
}

void HmmModel::check_observations(std::span<const std::size_t> observations) const {
  if (observations.empty()) throw Error(Errc::InvalidArgument, "observation sequence is empty");
  for (std::size_t t = 0; t < observations.size(); ++t) {
    if (observations[t] >= num_symbols()) {
      throw Error(Errc::UnknownSymbol, "symbol index " + std::to_string(observations[t]) +
                                           " at time " + std::to_string(t) + " outside the alphabet");
    }
  }
}

PosteriorMarginals::PosteriorMarginals(Matrix gamma) : gamma_(std::move(gamma)) {
  require_stochastic_rows(gamma_, "posterior marginals");
}

ProbabilityVector PosteriorMarginals::row(std::size_t t) const {
  const auto r = gamma_.row(t);
  return ProbabilityVector(std::vector<double>(r.begin(), r.end()));
}

namespace {

Matrix log_of(const Matrix& m) {
  Matrix out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = safe_log(m(r, c));
  }
  return out;
}

void shift_to_unit_sum(std::span<double> log_values) {
  const double norm = logsumexp(log_values);
  if (norm == kNegInf) {
    throw Error(Errc::ZeroEvidence, "zero evidence: the observation sequence has probability 0");
  }
  for (double& v : log_values) v -= norm;
}

// Shared alpha/beta sweep. log_init(i) seeds the forward pass; log_factor(t, i)
// for t >= 1 is the per-step state weight (log b_i(y_t), or log L_{y_t}(i) -
// log prior(i) in the entropic form).
Matrix sweep(std::span<const double> log_init, const Matrix& log_factor, const Matrix& log_trans,
             bool rescale) {
  const std::size_t len = log_factor.rows();
  const std::size_t n = log_init.size();
  Matrix log_alpha(len, n);
  Matrix log_beta(len, n, 0.0);
  std::vector<double> terms(n);

  std::copy(log_init.begin(), log_init.end(), log_alpha.row(0).begin());
  if (rescale) shift_to_unit_sum(log_alpha.row(0));
  for (std::size_t t = 1; t < len; ++t) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) terms[j] = log_alpha(t - 1, j) + log_trans(j, i);
      log_alpha(t, i) = log_factor(t, i) + logsumexp(terms);
    }
    if (rescale) shift_to_unit_sum(log_alpha.row(t));
  }

  for (std::size_t t = len - 1; t-- > 0;) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        terms[j] = log_beta(t + 1, j) + log_trans(i, j) + log_factor(t + 1, j);
      }
      log_beta(t, i) = logsumexp(terms);
    }
    if (rescale) shift_to_unit_sum(log_beta.row(t));
  }

  Matrix gamma(len, n);
  for (std::size_t t = 0; t < len; ++t) {
    for (std::size_t i = 0; i < n; ++i) terms[i] = log_alpha(t, i) + log_beta(t, i);
    if (logsumexp(terms) == kNegInf) {
      throw Error(Errc::ZeroEvidence, "zero evidence: the observation sequence has probability 0");
    }
    const auto row = normalize_log(terms);
    std::copy(row.vec().begin(), row.vec().end(), gamma.row(t).begin());
  }
  return gamma;
}

}  // namespace

PosteriorMarginals forward_backward(const HmmModel& model, std::span<const std::size_t> observations,
                                    const ForwardBackwardOptions& options) {
  if (!model.emissions()) throw Error(Errc::InvalidArgument, "forward-backward needs emissions");
  model.check_observations(observations);
  const std::size_t n = model.num_states();
  const Matrix log_b = log_of(*model.emissions());

  Matrix log_factor(observations.size(), n);
  for (std::size_t t = 0; t < observations.size(); ++t) {
    for (std::size_t i = 0; i < n; ++i) log_factor(t, i) = log_b(i, observations[t]);
  }
  std::vector<double> log_init(n);
  for (std::size_t i = 0; i < n; ++i) log_init[i] = safe_log(model.prior()[i]) + log_factor(0, i);

  return PosteriorMarginals(sweep(log_init, log_factor, log_of(model.transitions()), options.rescale));
}

PosteriorMarginals entropic_forward_backward(const HmmModel& model,
                                             std::span<const std::size_t> observations,
                                             const ForwardBackwardOptions& options) {
  if (!model.posteriors()) {
    throw Error(Errc::MissingPosteriors, "entropic forward-backward needs posterior columns");
  }
  if (!model.prior().strictly_positive()) {
    throw Error(Errc::ZeroPrior, "prior must be strictly positive");
  }
  model.check_observations(observations);
  const std::size_t n = model.num_states();
  const Matrix log_l = log_of(*model.posteriors());
  const double ratio_sign = options.flip_entropic_ratio ? 1.0 : -1.0;

  Matrix log_factor(observations.size(), n);
  for (std::size_t t = 0; t < observations.size(); ++t) {
    for (std::size_t i = 0; i < n; ++i) {
      log_factor(t, i) = log_l(observations[t], i) + ratio_sign * std::log(model.prior()[i]);
    }
  }
  std::vector<double> log_init(n);
  for (std::size_t i = 0; i < n; ++i) log_init[i] = log_l(observations[0], i);

  return PosteriorMarginals(sweep(log_init, log_factor, log_of(model.transitions()), options.rescale));
}

HmmModel derive_hmm_posteriors(const HmmModel& model) {
  if (!model.emissions()) throw Error(Errc::InvalidArgument, "deriving posteriors needs emissions");
  if (!model.prior().strictly_positive()) {
    throw Error(Errc::ZeroPrior, "prior must be strictly positive");
  }
  const Matrix& b = *model.emissions();
  const std::size_t n = model.num_states();
  Matrix posteriors(model.num_symbols(), n);
  for (std::size_t y = 0; y < model.num_symbols(); ++y) {
    double evidence = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      posteriors(y, i) = model.prior()[i] * b(i, y);
      evidence += posteriors(y, i);
    }
    if (!(evidence > 0.0)) {
      throw Error(Errc::ZeroMarginal, "symbol '" + model.alphabet().name(y) +
                                          "' has zero probability under every state");
    }
    for (std::size_t i = 0; i < n; ++i) posteriors(y, i) /= evidence;
  }
  return HmmModel(model.labels(), model.alphabet(), model.prior(), model.transitions(), model.emissions(),
                  std::move(posteriors));
}

double max_abs_difference(const PosteriorMarginals& lhs, const PosteriorMarginals& rhs) {
  const Matrix& a = lhs.gamma();
  const Matrix& b = rhs.gamma();
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(Errc::DimensionMismatch, "marginal tables have different shapes");
  }
  double worst = 0.0;
  for (std::size_t k = 0; k < a.data().size(); ++k) {
    worst = std::max(worst, std::abs(a.data()[k] - b.data()[k]));
  }
  return worst;
}

}  // namespace discnb
