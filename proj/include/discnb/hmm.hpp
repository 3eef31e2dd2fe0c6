#pragma once

// Posterior marginals p(x_t = i | y_1:T) of a homogeneous discrete HMM,
// computed two ways:
//
//  * forward_backward: the classical recursions on the joint weights alpha
//    and beta, driven by the emission law b_i(y).
//  * entropic_forward_backward: the same recursions rewritten on the
//    single-observation posteriors L_y(i) = p(x_t = i | y_t) and the prior,
//    with the ratio L_y(i) / prior(i) taking the place of b_i(y). The
//    emission law and the observation marginals are never used.
//
// When L is derived from (prior, b) by Bayes' rule the two agree exactly:
// alpha_t = alpha^E_t * prod_{s<=t} p(y_s) and beta_t = beta^E_t * prod_{s>t} p(y_s).

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "discnb/core.hpp"

namespace discnb {

class HmmModel {
 public:
  HmmModel() = default;
  /// transitions is N x N (row i = law of x_{t+1} given x_t = i); emissions
  /// is N x M; posteriors is M x N (row y = L_y(.)). At least one of
  /// emissions / posteriors must be present.
  HmmModel(LabelSpace labels, ObservationAlphabet alphabet, ProbabilityVector prior, Matrix transitions,
           std::optional<Matrix> emissions, std::optional<Matrix> posteriors = std::nullopt);

  const LabelSpace& labels() const noexcept { return labels_; }
  const ObservationAlphabet& alphabet() const noexcept { return alphabet_; }
  const ProbabilityVector& prior() const noexcept { return prior_; }
  const Matrix& transitions() const noexcept { return transitions_; }
  const std::optional<Matrix>& emissions() const noexcept { return emissions_; }
  const std::optional<Matrix>& posteriors() const noexcept { return posteriors_; }
  std::size_t num_states() const noexcept { return labels_.size(); }
  std::size_t num_symbols() const noexcept { return alphabet_.size(); }

  void check_observations(std::span<const std::size_t> observations) const;

 private:
  LabelSpace labels_;
  ObservationAlphabet alphabet_;
  ProbabilityVector prior_;
  Matrix transitions_;
  std::optional<Matrix> emissions_;
  std::optional<Matrix> posteriors_;
};

/// T x N table; row t is p(x_t = . | y_1:T).
class PosteriorMarginals {
 public:
  PosteriorMarginals() = default;
  explicit PosteriorMarginals(Matrix gamma);

  const Matrix& gamma() const noexcept { return gamma_; }
  std::size_t length() const noexcept { return gamma_.rows(); }
  ProbabilityVector row(std::size_t t) const;

 private:
  Matrix gamma_;
};

struct ForwardBackwardOptions {
  /// Shift each log alpha / log beta step so that it sums to one. The
  /// posterior ratio does not depend on the shifts.
  bool rescale = true;
  /// Mutation-testing hook: uses log L + log prior in place of
  /// log L - log prior in the entropic recursions. Never set outside tests.
  bool flip_entropic_ratio = false;
};

PosteriorMarginals forward_backward(const HmmModel& model, std::span<const std::size_t> observations,
                                    const ForwardBackwardOptions& options = {});

PosteriorMarginals entropic_forward_backward(const HmmModel& model,
                                             std::span<const std::size_t> observations,
                                             const ForwardBackwardOptions& options = {});

/// Fills the posterior columns L_y(i) = prior(i) b_i(y) / sum_j prior(j) b_j(y).
HmmModel derive_hmm_posteriors(const HmmModel& model);

/// Largest absolute entrywise difference between two marginal tables.
double max_abs_difference(const PosteriorMarginals& lhs, const PosteriorMarginals& rhs);

}  // namespace discnb
