#include "discnb/random_models.hpp"

namespace discnb::random {

std::size_t uniform_int(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

double uniform_real(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

ProbabilityVector probability_vector(Rng& rng, std::size_t n) {
  std::vector<double> w(n);
  for (double& v : w) v = uniform_real(rng, 0.05, 1.0);
  return ProbabilityVector::normalized(w);
}

Matrix stochastic_matrix(Rng& rng, std::size_t n, std::size_t m) {
  Matrix out(n, m);
  for (std::size_t r = 0; r < n; ++r) {
    const auto row = probability_vector(rng, m);
    for (std::size_t c = 0; c < m; ++c) out(r, c) = row[c];
  }
  return out;
}

NaiveBayesModel naive_bayes(Rng& rng, std::size_t labels, std::size_t length, std::size_t max_symbols) {
  std::vector<ObservationAlphabet> alphabets;
  std::vector<Matrix> emissions;
  for (std::size_t t = 0; t < length; ++t) {
    const std::size_t m = uniform_int(rng, 1, max_symbols);
    alphabets.push_back(ObservationAlphabet::indexed(m));
    emissions.push_back(stochastic_matrix(rng, labels, m));
  }
  return NaiveBayesModel(LabelSpace::indexed(labels), std::move(alphabets), probability_vector(rng, labels),
                         std::move(emissions));
}

SymbolSequence symbols_for(Rng& rng, const NaiveBayesModel& model) {
  SymbolSequence out(model.length());
  for (std::size_t t = 0; t < out.size(); ++t) out[t] = uniform_int(rng, 0, model.alphabets()[t].size() - 1);
  return out;
}

namespace {
Matrix uniform_matrix(Rng& rng, std::size_t rows, std::size_t cols, double scale) {
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = uniform_real(rng, -scale, scale);
  }
  return m;
}
}  // namespace

DiscriminativeNBModel disc_nb(Rng& rng, std::size_t labels, std::size_t length, double scale) {
  auto prior = probability_vector(rng, labels);
  auto slopes = uniform_matrix(rng, labels, length, scale);
  auto intercepts = uniform_matrix(rng, labels, length, scale);
  return DiscriminativeNBModel(LabelSpace::indexed(labels), std::move(prior), std::move(slopes),
                               std::move(intercepts));
}

LogisticRegressionModel logreg(Rng& rng, std::size_t labels, std::size_t length, double scale) {
  auto weights = uniform_matrix(rng, labels, length, scale);
  std::vector<double> biases(labels);
  for (double& b : biases) b = uniform_real(rng, -scale, scale);
  return LogisticRegressionModel(LabelSpace::indexed(labels), std::move(weights), std::move(biases));
}

std::vector<double> real_observation(Rng& rng, std::size_t length, double scale) {
  std::vector<double> y(length);
  for (double& v : y) v = uniform_real(rng, -scale, scale);
  return y;
}

HmmModel hmm(Rng& rng, std::size_t states, std::size_t symbols) {
  auto prior = probability_vector(rng, states);
  auto transitions = stochastic_matrix(rng, states, states);
  auto emissions = stochastic_matrix(rng, states, symbols);
  return HmmModel(LabelSpace::indexed(states), ObservationAlphabet::indexed(symbols), std::move(prior),
                  std::move(transitions), std::move(emissions));
}

SymbolSequence symbol_sequence(Rng& rng, std::size_t symbols, std::size_t length) {
  SymbolSequence out(length);
  for (auto& s : out) s = uniform_int(rng, 0, symbols - 1);
  return out;
}

std::vector<RealSample> two_class_1d(Rng& rng, std::size_t samples, double mean) {
  std::normal_distribution<double> noise(0.0, 1.0);
  std::vector<RealSample> out;
  out.reserve(samples);
  for (std::size_t k = 0; k < samples; ++k) {
    const std::size_t label = k % 2;
    out.push_back({label, {(label == 0 ? -mean : mean) + noise(rng)}});
  }
  return out;
}

}  // namespace discnb::random
