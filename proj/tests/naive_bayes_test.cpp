#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "discnb/naive_bayes.hpp"
#include "discnb/oracle.hpp"
#include "discnb/random_models.hpp"

namespace discnb {
namespace {

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an exception";
  return Errc::InvalidArgument;
}

double max_abs_diff(const ProbabilityVector& a, const ProbabilityVector& b) {
  double worst = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) worst = std::max(worst, std::abs(a[k] - b[k]));
  return worst;
}

NaiveBayesModel single_position(const ProbabilityVector& prior, std::vector<std::vector<double>> emission) {
  const std::size_t n = prior.size();
  return NaiveBayesModel(LabelSpace::indexed(n), {ObservationAlphabet::indexed(emission.front().size())}, prior,
                         {Matrix::from_rows(emission)});
}

// --- fitting ---------------------------------------------------------------

TEST(NbFitMle, TwoSamplesForcedCounts) {
  const std::vector<LabeledSequence> data{{0, {0}}, {1, {1}}};
  const auto model = nb_fit_mle(LabelSpace::indexed(2), {ObservationAlphabet::indexed(2)}, data);
  EXPECT_EQ(model.prior()[0], 0.5);
  EXPECT_EQ(model.prior()[1], 0.5);
  EXPECT_EQ(model.emission(0)(0, 0), 1.0);
  EXPECT_EQ(model.emission(0)(1, 1), 1.0);
  EXPECT_EQ(model.emission(0)(0, 1), 0.0);
}

TEST(NbFitMle, PriorIsLabelFrequency) {
  // f(1) = 4 of L = 10.
  std::vector<LabeledSequence> data;
  for (int k = 0; k < 10; ++k) data.push_back({k < 4 ? 0u : 1u, {static_cast<std::size_t>(k % 3)}});
  const auto model = nb_fit_mle(LabelSpace::indexed(2), {ObservationAlphabet::indexed(3)}, data);
  EXPECT_EQ(model.prior()[0], 0.4);
  EXPECT_EQ(model.prior()[1], 0.6);
  // label 0 saw symbols 0,1,2,0 -> counts (2,1,1) / 4
  EXPECT_EQ(model.emission(0)(0, 0), 0.5);
  EXPECT_EQ(model.emission(0)(0, 1), 0.25);
  EXPECT_EQ(model.emission(0)(0, 2), 0.25);
}

TEST(NbFitMle, AdditiveSmoothing) {
  const std::vector<LabeledSequence> data{{0, {0}}};
  const auto model = nb_fit_mle(LabelSpace::indexed(2), {ObservationAlphabet::indexed(2)}, data, 1.0);
  EXPECT_DOUBLE_EQ(model.prior()[0], 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(model.prior()[1], 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(model.emission(0)(0, 0), 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(model.emission(0)(0, 1), 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(model.emission(0)(1, 0), 0.5);
  EXPECT_DOUBLE_EQ(model.emission(0)(1, 1), 0.5);
}

TEST(NbFitMle, UnseenLabelGetsZeroPriorAndUniformRow) {
  const std::vector<LabeledSequence> data{{0, {1}}, {0, {0}}};
  const auto model = nb_fit_mle(LabelSpace::indexed(3), {ObservationAlphabet::indexed(4)}, data);
  EXPECT_EQ(model.prior()[2], 0.0);
  for (std::size_t m = 0; m < 4; ++m) EXPECT_EQ(model.emission(0)(2, m), 0.25);
}

TEST(NbFitMle, ErrorPaths) {
  const LabelSpace labels = LabelSpace::indexed(2);
  const std::vector<ObservationAlphabet> alphabets{ObservationAlphabet::indexed(2), ObservationAlphabet::indexed(2)};
  EXPECT_EQ(code_of([&] { nb_fit_mle(labels, alphabets, std::vector<LabeledSequence>{}); }), Errc::EmptyDataset);
  EXPECT_EQ(code_of([&] { nb_fit_mle(labels, alphabets, std::vector<LabeledSequence>{{0, {0}}}); }),
            Errc::LengthMismatch);
  EXPECT_EQ(code_of([&] { nb_fit_mle(labels, alphabets, std::vector<LabeledSequence>{{0, {0, 2}}}); }),
            Errc::UnknownSymbol);
  EXPECT_EQ(code_of([&] { nb_fit_mle(labels, alphabets, std::vector<LabeledSequence>{{0, {0, 0}}}, -1.0); }),
            Errc::InvalidArgument);
}

TEST(CountPatterns, CountsAreConsistent) {
  random::Rng rng(3);
  const LabelSpace labels = LabelSpace::indexed(3);
  const std::vector<ObservationAlphabet> alphabets{ObservationAlphabet::indexed(4), ObservationAlphabet::indexed(2)};
  std::vector<LabeledSequence> data;
  for (int k = 0; k < 200; ++k) {
    data.push_back({random::uniform_int(rng, 0, 2), {random::uniform_int(rng, 0, 3), random::uniform_int(rng, 0, 1)}});
  }
  const auto stats = count_patterns(labels, alphabets, data);
  std::size_t total = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    total += stats.label_counts[i];
    for (std::size_t t = 0; t < 2; ++t) {
      std::size_t per_label = 0;
      for (auto c : stats.emission_counts[t][i]) per_label += c;
      EXPECT_EQ(per_label, stats.label_counts[i]);
    }
  }
  EXPECT_EQ(total, stats.sample_count);
}

// Any +-1e-3 move along the simplex away from the unsmoothed fit must not
// raise the training joint log-likelihood.
TEST(NbFitMle, FitIsLocalMaximumOfJointLikelihood) {
  random::Rng rng(5);
  constexpr double kStep = 1e-3;
  for (int rep = 0; rep < 20; ++rep) {
    const std::size_t n = random::uniform_int(rng, 2, 4);
    const std::size_t len = random::uniform_int(rng, 1, 3);
    std::vector<ObservationAlphabet> alphabets;
    for (std::size_t t = 0; t < len; ++t) alphabets.push_back(ObservationAlphabet::indexed(random::uniform_int(rng, 1, 4)));
    std::vector<LabeledSequence> data;
    for (int s = 0; s < 40; ++s) {
      LabeledSequence sample{random::uniform_int(rng, 0, n - 1), {}};
      for (std::size_t t = 0; t < len; ++t) sample.symbols.push_back(random::uniform_int(rng, 0, alphabets[t].size() - 1));
      data.push_back(sample);
    }
    const auto fit = nb_fit_mle(LabelSpace::indexed(n), alphabets, data);
    const double best = nb_joint_log_likelihood(fit, data);
    const double slack = 1e-12 * std::abs(best);

    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j || fit.prior()[j] < kStep || fit.prior()[i] + kStep > 1.0) continue;
        auto p = fit.prior().vec();
        p[i] += kStep;
        p[j] -= kStep;
        const NaiveBayesModel moved(fit.labels(), fit.alphabets(), ProbabilityVector(p), fit.emissions());
        EXPECT_LE(nb_joint_log_likelihood(moved, data), best + slack);
      }
    }
    for (std::size_t t = 0; t < len; ++t) {
      for (std::size_t i = 0; i < n; ++i) {
        const std::size_t m_t = alphabets[t].size();
        for (std::size_t u = 0; u < m_t; ++u) {
          for (std::size_t v = 0; v < m_t; ++v) {
            if (u == v || fit.emission(t)(i, v) < kStep || fit.emission(t)(i, u) + kStep > 1.0) continue;
            auto tables = fit.emissions();
            tables[t](i, u) += kStep;
            tables[t](i, v) -= kStep;
            const NaiveBayesModel moved(fit.labels(), fit.alphabets(), fit.prior(), tables);
            EXPECT_LE(nb_joint_log_likelihood(moved, data), best + slack);
          }
        }
      }
    }
  }
}

// --- generative posterior --------------------------------------------------

TEST(NbGenerativePosterior, SymmetricModelIsUniform) {
  const auto model = single_position(ProbabilityVector::uniform(3), {{0.2, 0.8}, {0.2, 0.8}, {0.2, 0.8}});
  const SymbolSequence y{1};
  const auto p = nb_generative_posterior(model, y);
  for (double x : p.entries()) EXPECT_NEAR(x, 1.0 / 3.0, 1e-15);
}

TEST(NbGenerativePosterior, OnePositionBayesRule) {
  const auto model = single_position(ProbabilityVector({0.5, 0.5}), {{0.9, 0.1}, {0.1, 0.9}});
  const SymbolSequence y{0};
  const auto p = nb_generative_posterior(model, y);
  EXPECT_NEAR(p[0], 0.9, 1e-15);
  EXPECT_NEAR(p[1], 0.1, 1e-15);
}

TEST(NbGenerativePosterior, MatchesJointEnumerationOracle) {
  random::Rng rng(17);
  for (int rep = 0; rep < 50; ++rep) {
    const auto model = random::naive_bayes(rng, 3, 4, 5);
    const auto y = random::symbols_for(rng, model);
    EXPECT_LE(max_abs_diff(nb_generative_posterior(model, y), oracle::joint_enumeration_nb(model, y)),
              kEquivalenceTolerance);
  }
}

TEST(NbGenerativePosterior, LongSequencesStayFiniteInLogSpace) {
  random::Rng rng(23);
  const auto model = random::naive_bayes(rng, 3, 400, 6);
  const auto y = random::symbols_for(rng, model);
  const auto p = nb_generative_posterior(model, y);
  double sum = 0.0;
  for (double x : p.entries()) sum += x;
  EXPECT_NEAR(sum, 1.0, kSimplexTolerance);
}

TEST(NbGenerativePosterior, ZeroPriorIsAllowed) {
  const auto model = single_position(ProbabilityVector({0.0, 1.0}), {{0.5, 0.5}, {0.5, 0.5}});
  const SymbolSequence y{0};
  const auto p = nb_generative_posterior(model, y);
  EXPECT_EQ(p[0], 0.0);
  EXPECT_EQ(p[1], 1.0);
}

TEST(NbGenerativePosterior, UnseenSymbolRaisesZeroEvidence) {
  const std::vector<LabeledSequence> data{{0, {0}}, {1, {0}}};
  const auto model = nb_fit_mle(LabelSpace::indexed(2), {ObservationAlphabet::indexed(2)}, data);
  const SymbolSequence y{1};
  EXPECT_EQ(code_of([&] { nb_generative_posterior(model, y); }), Errc::ZeroEvidence);
}

TEST(NbGenerativePosterior, ObservationValidation) {
  const auto model = single_position(ProbabilityVector::uniform(2), {{0.5, 0.5}, {0.5, 0.5}});
  EXPECT_EQ(code_of([&] { nb_generative_posterior(model, SymbolSequence{0, 1}); }), Errc::LengthMismatch);
  EXPECT_EQ(code_of([&] { nb_generative_posterior(model, SymbolSequence{2}); }), Errc::UnknownSymbol);
}

// --- discriminative form ---------------------------------------------------

TEST(NbToDiscriminative, SymmetricModelGivesUniformColumns) {
  const auto model = single_position(ProbabilityVector::uniform(2), {{0.3, 0.7}, {0.3, 0.7}});
  const auto tables = nb_to_discriminative(model);
  for (std::size_t m = 0; m < 2; ++m) {
    const auto c = tables.column(0, m);
    EXPECT_DOUBLE_EQ(c[0], 0.5);
    EXPECT_DOUBLE_EQ(c[1], 0.5);
  }
}

TEST(NbToDiscriminative, OnePositionBayesRule) {
  const auto model = single_position(ProbabilityVector({0.5, 0.5}), {{0.9, 0.1}, {0.1, 0.9}});
  const auto tables = nb_to_discriminative(model);
  const auto c = tables.column(0, 0);
  EXPECT_NEAR(c[0], 0.9, 1e-15);
  EXPECT_NEAR(c[1], 0.1, 1e-15);
  EXPECT_NEAR(tables.marginal(0, 0), 0.5, 1e-15);
}

TEST(NbToDiscriminative, ErrorPaths) {
  const auto zero_prior = single_position(ProbabilityVector({0.0, 1.0}), {{0.5, 0.5}, {0.5, 0.5}});
  EXPECT_EQ(code_of([&] { nb_to_discriminative(zero_prior); }), Errc::ZeroPrior);

  const auto unreachable = single_position(ProbabilityVector::uniform(2), {{1.0, 0.0}, {1.0, 0.0}});
  const auto tables = nb_to_discriminative(unreachable);
  EXPECT_NO_THROW(tables.column(0, 0));
  EXPECT_EQ(code_of([&] { tables.column(0, 1); }), Errc::ZeroMarginal);
}

TEST(NbToDiscriminative, SuppliedMarginalsMustMatchModel) {
  const auto model = single_position(ProbabilityVector({0.25, 0.75}), {{0.9, 0.1}, {0.2, 0.8}});
  const std::vector<std::vector<double>> good{{0.25 * 0.9 + 0.75 * 0.2, 0.25 * 0.1 + 0.75 * 0.8}};
  const auto tables = nb_to_discriminative(model, good);
  EXPECT_EQ(tables.marginal(0, 1), good[0][1]);
  const std::vector<std::vector<double>> bad{{0.5, 0.5}};
  EXPECT_EQ(code_of([&] { nb_to_discriminative(model, bad); }), Errc::InvalidArgument);
}

TEST(NbDiscriminativePosterior, SinglePositionReturnsColumn) {
  random::Rng rng(29);
  for (int rep = 0; rep < 20; ++rep) {
    const auto prior = random::probability_vector(rng, 4);
    const auto column = random::probability_vector(rng, 4);
    const auto p = nb_discriminative_posterior(prior, std::vector<ProbabilityVector>{column});
    EXPECT_LE(max_abs_diff(p, column), 1e-15);
  }
}

TEST(NbDiscriminativePosterior, UniformInputsGiveUniformOutput) {
  const std::vector<ProbabilityVector> columns(4, ProbabilityVector::uniform(3));
  const auto p = nb_discriminative_posterior(ProbabilityVector::uniform(3), columns);
  for (double x : p.entries()) EXPECT_NEAR(x, 1.0 / 3.0, 1e-15);
}

TEST(NbDiscriminativePosterior, ReproducesGenerativePosterior) {
  random::Rng rng(31);
  for (int rep = 0; rep < 100; ++rep) {
    const auto model = random::naive_bayes(rng, 4, 5, 6);
    const auto tables = nb_to_discriminative(model);
    const auto y = random::symbols_for(rng, model);
    const auto disc = nb_discriminative_posterior(model.prior(), tables.columns_for(y));
    EXPECT_LE(max_abs_diff(disc, nb_generative_posterior(model, y)), kEquivalenceTolerance);
  }
}

TEST(NbDiscriminativePosterior, ScoreMatchesDefinition) {
  const ProbabilityVector prior({0.2, 0.8});
  const std::vector<std::vector<double>> columns{{0.6, 0.4}, {0.3, 0.7}, {0.5, 0.5}};
  const auto score = discriminative_score(prior, columns);
  EXPECT_NEAR(score.log_delta[0], -2.0 * std::log(0.2) + std::log(0.6 * 0.3 * 0.5), 1e-14);
  EXPECT_NEAR(score.log_delta[1], -2.0 * std::log(0.8) + std::log(0.4 * 0.7 * 0.5), 1e-14);
}

TEST(NbDiscriminativePosterior, ColumnScalingInvariance) {
  random::Rng rng(37);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n = random::uniform_int(rng, 2, 5);
    const std::size_t len = random::uniform_int(rng, 1, 6);
    const auto prior = random::probability_vector(rng, n);
    std::vector<std::vector<double>> columns;
    for (std::size_t t = 0; t < len; ++t) columns.push_back(random::probability_vector(rng, n).vec());
    const auto base = nb_discriminative_posterior(prior, columns);
    const std::size_t which = random::uniform_int(rng, 0, len - 1);
    const double scale = random::uniform_real(rng, 1e-3, 1e3);
    for (double& v : columns[which]) v *= scale;
    EXPECT_LE(max_abs_diff(base, nb_discriminative_posterior(prior, columns)), 1e-12);
  }
}

TEST(NbDiscriminativePosterior, ErrorPaths) {
  const std::vector<ProbabilityVector> columns{ProbabilityVector({0.5, 0.5}), ProbabilityVector({0.5, 0.5})};
  EXPECT_EQ(code_of([&] { nb_discriminative_posterior(ProbabilityVector({0.0, 1.0}), columns); }), Errc::ZeroPrior);
  const std::vector<ProbabilityVector> disjoint{ProbabilityVector({1.0, 0.0}), ProbabilityVector({0.0, 1.0})};
  EXPECT_EQ(code_of([&] { nb_discriminative_posterior(ProbabilityVector::uniform(2), disjoint); }),
            Errc::AllZeroWeights);
}

TEST(GenerativeDiscriminativeEquivalence, RandomizedSweep) {
  random::Rng rng(41);
  double worst = 0.0;
  for (int rep = 0; rep < 1000; ++rep) {
    const auto model = random::naive_bayes(rng, random::uniform_int(rng, 2, 5), random::uniform_int(rng, 1, 6), 6);
    const auto tables = nb_to_discriminative(model);
    const auto y = random::symbols_for(rng, model);
    const auto generative = nb_generative_posterior(model, y);
    const auto discriminative = nb_discriminative_posterior(model.prior(), tables.columns_for(y));
    worst = std::max(worst, max_abs_diff(generative, discriminative));
    double sum = 0.0;
    for (double x : discriminative.entries()) {
      ASSERT_GE(x, 0.0);
      sum += x;
    }
    ASSERT_NEAR(sum, 1.0, kSimplexTolerance);
  }
  EXPECT_LE(worst, kEquivalenceTolerance);
}

// --- linear-softmax discriminative model -----------------------------------

TEST(DiscNbPosterior, ZeroParametersGiveUniform) {
  const DiscriminativeNBModel model(LabelSpace::indexed(3), ProbabilityVector::uniform(3), Matrix(3, 4), Matrix(3, 4));
  const auto p = disc_nb_posterior(model, std::vector<double>{1.0, -2.0, 0.5, 3.0});
  for (double x : p.entries()) EXPECT_NEAR(x, 1.0 / 3.0, 1e-15);
}

TEST(DiscNbPosterior, SinglePositionIsTheSoftmaxColumn) {
  random::Rng rng(43);
  for (int rep = 0; rep < 20; ++rep) {
    const auto model = random::disc_nb(rng, 3, 1);
    const double y = random::uniform_real(rng, -3.0, 3.0);
    std::vector<double> direct(3);
    double z = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
      direct[i] = std::exp(model.slopes()(i, 0) * y + model.intercepts()(i, 0));
      z += direct[i];
    }
    const auto p = disc_nb_posterior(model, std::vector<double>{y});
    for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(p[i], direct[i] / z, 1e-14);
  }
}

TEST(DiscNbPosterior, MatchesPosteriorOfEvaluatedColumns) {
  random::Rng rng(47);
  for (int rep = 0; rep < 50; ++rep) {
    const auto model = random::disc_nb(rng, 4, 3);
    const auto y = random::real_observation(rng, 3);
    std::vector<ProbabilityVector> columns;
    for (std::size_t t = 0; t < 3; ++t) columns.push_back(model.column(t, y[t]));
    EXPECT_LE(max_abs_diff(disc_nb_posterior(model, y), nb_discriminative_posterior(model.prior(), columns)), 1e-13);
  }
}

TEST(DiscNbPosterior, Validation) {
  EXPECT_EQ(code_of([] {
              DiscriminativeNBModel(LabelSpace::indexed(2), ProbabilityVector({0.0, 1.0}), Matrix(2, 1), Matrix(2, 1));
            }),
            Errc::ZeroPrior);
  EXPECT_EQ(code_of([] {
              DiscriminativeNBModel(LabelSpace::indexed(2), ProbabilityVector::uniform(2), Matrix(2, 1), Matrix(2, 2));
            }),
            Errc::DimensionMismatch);
  const DiscriminativeNBModel model(LabelSpace::indexed(2), ProbabilityVector::uniform(2), Matrix(2, 2), Matrix(2, 2));
  EXPECT_EQ(code_of([&] { disc_nb_posterior(model, std::vector<double>{1.0}); }), Errc::LengthMismatch);
}

}  // namespace
}  // namespace discnb
