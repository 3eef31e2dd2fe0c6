#include "discnb/oracle.hpp"

#include <string>

namespace discnb::oracle {

ProbabilityVector joint_enumeration_nb(const NaiveBayesModel& model, std::span<const std::size_t> symbols) {
  model.check_observation(symbols);
  const std::size_t n = model.num_labels();
  std::vector<double> joint(n);
  double evidence = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double w = model.prior()[i];
    for (std::size_t t = 0; t < symbols.size(); ++t) w *= model.emission(t)(i, symbols[t]);
    joint[i] = w;
    evidence += w;
  }
  if (evidence == 0.0) throw Error(Errc::ZeroEvidence, "zero evidence");
  for (double& w : joint) w /= evidence;
  return ProbabilityVector(std::move(joint));
}

std::vector<std::vector<double>> joint_enumeration_hmm(const HmmParams& params,
                                                       std::span<const std::size_t> observations) {
  const std::size_t n = params.prior.size();
  const std::size_t len = observations.size();
  if (n == 0 || len == 0) throw Error(Errc::InvalidArgument, "empty state space or observation sequence");

  std::size_t paths = 1;
  for (std::size_t t = 0; t < len; ++t) {
    if (paths > kMaxEnumeratedPaths / n) {
      throw Error(Errc::StateSpaceTooLarge, "N^T exceeds the enumeration cap");
    }
    paths *= n;
  }

  std::vector<std::vector<double>> marginals(len, std::vector<double>(n, 0.0));
  std::vector<std::size_t> path(len, 0);
  double evidence = 0.0;
  for (std::size_t p = 0; p < paths; ++p) {
    double w = params.prior[path[0]] * params.emissions[path[0]][observations[0]];
    for (std::size_t t = 1; t < len; ++t) {
      w *= params.transitions[path[t - 1]][path[t]] * params.emissions[path[t]][observations[t]];
    }
    evidence += w;
    for (std::size_t t = 0; t < len; ++t) marginals[t][path[t]] += w;

    for (std::size_t t = len; t-- > 0;) {
      if (++path[t] < n) break;
      path[t] = 0;
    }
  }
  if (evidence == 0.0) throw Error(Errc::ZeroEvidence, "zero evidence");
  for (auto& row : marginals) {
    double row_sum = 0.0;
    for (double v : row) row_sum += v;
    for (double& v : row) v /= row_sum;
  }
  return marginals;
}

PosteriorMarginals joint_enumeration_hmm(const HmmModel& model, std::span<const std::size_t> observations) {
  if (!model.emissions()) throw Error(Errc::InvalidArgument, "enumeration needs emissions");
  model.check_observations(observations);
  HmmParams params{model.prior().vec(), model.transitions().to_rows(), model.emissions()->to_rows()};
  return PosteriorMarginals(Matrix::from_rows(joint_enumeration_hmm(params, observations)));
}

}  // namespace discnb::oracle
