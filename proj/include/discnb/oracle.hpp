#pragma once

// Brute-force reference answers. Everything here works in plain (linear)
// arithmetic by direct enumeration and shares no code with the log-space
// inference paths, so a numerics bug in one cannot hide in the other. Valid
// only while weights stay inside double range (short sequences, probabilities
// well away from zero).

#include <cstddef>
#include <span>
#include <vector>

#include "discnb/hmm.hpp"
#include "discnb/naive_bayes.hpp"

namespace discnb::oracle {

inline constexpr std::size_t kMaxEnumeratedPaths = std::size_t{1} << 20;

/// p(x=i, y) / sum_j p(x=j, y) with p(x=i, y) = prior(i) prod_t b_i^(t)(y_t).
ProbabilityVector joint_enumeration_nb(const NaiveBayesModel& model, std::span<const std::size_t> symbols);

/// Raw HMM parameters; unlike HmmModel this admits a single state.
struct HmmParams {
  std::vector<double> prior;
  std::vector<std::vector<double>> transitions;  // N x N
  std::vector<std::vector<double>> emissions;    // N x M
};

/// Sums prior(x_1) prod a prod b over all N^T state paths; returns the T x N
/// table of per-time marginals. Throws StateSpaceTooLarge when N^T exceeds
/// kMaxEnumeratedPaths.
std::vector<std::vector<double>> joint_enumeration_hmm(const HmmParams& params,
                                                       std::span<const std::size_t> observations);

PosteriorMarginals joint_enumeration_hmm(const HmmModel& model, std::span<const std::size_t> observations);

}  // namespace discnb::oracle
