#pragma once

// Seeded generators of random models and observations for property sweeps.
// Probabilities are drawn from [0.05, 1] before normalizing, which keeps every
// entry strictly positive and brute-force products inside double range.

#include <cstddef>
#include <random>
#include <vector>

#include "discnb/hmm.hpp"
#include "discnb/logreg.hpp"
#include "discnb/naive_bayes.hpp"
#include "discnb/train.hpp"

namespace discnb::random {

using Rng = std::mt19937_64;

std::size_t uniform_int(Rng& rng, std::size_t lo, std::size_t hi);
double uniform_real(Rng& rng, double lo, double hi);

ProbabilityVector probability_vector(Rng& rng, std::size_t n);
/// n rows of random probability vectors of length m.
Matrix stochastic_matrix(Rng& rng, std::size_t n, std::size_t m);

NaiveBayesModel naive_bayes(Rng& rng, std::size_t labels, std::size_t length, std::size_t max_symbols);
SymbolSequence symbols_for(Rng& rng, const NaiveBayesModel& model);

/// Slopes and intercepts uniform in [-scale, scale].
DiscriminativeNBModel disc_nb(Rng& rng, std::size_t labels, std::size_t length, double scale = 2.0);
LogisticRegressionModel logreg(Rng& rng, std::size_t labels, std::size_t length, double scale = 2.0);
std::vector<double> real_observation(Rng& rng, std::size_t length, double scale = 3.0);

/// Generative HMM (emissions only).
HmmModel hmm(Rng& rng, std::size_t states, std::size_t symbols);
SymbolSequence symbol_sequence(Rng& rng, std::size_t symbols, std::size_t length);

/// 1-D two-class data: alternating labels 0/1 with y ~ Normal(-mean, 1) for
/// label 0 and Normal(+mean, 1) for label 1.
std::vector<RealSample> two_class_1d(Rng& rng, std::size_t samples, double mean = 2.0);

}  // namespace discnb::random
