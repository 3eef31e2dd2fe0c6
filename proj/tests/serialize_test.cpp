#include <filesystem>
#include <vector>

#include <gtest/gtest.h>

#include "discnb/random_models.hpp"
#include "discnb/serialize.hpp"

namespace discnb {
namespace {

template <typename M>
M round_trip(const M& model) {
  return std::get<M>(parse_model(dump_model(model)));
}

TEST(Serialize, NaiveBayesRoundTripIsBitwise) {
  random::Rng rng(1);
  for (int rep = 0; rep < 50; ++rep) {
    const auto model = random::naive_bayes(rng, 3, 4, 5);
    const auto back = round_trip(model);
    EXPECT_EQ(back.prior(), model.prior());
    EXPECT_EQ(back.emissions(), model.emissions());
    EXPECT_EQ(back.alphabets(), model.alphabets());
    const auto y = random::symbols_for(rng, model);
    EXPECT_EQ(nb_generative_posterior(back, y), nb_generative_posterior(model, y));
  }
}

TEST(Serialize, DiscNbAndLogregRoundTripIsBitwise) {
  random::Rng rng(2);
  for (int rep = 0; rep < 50; ++rep) {
    const auto nb = random::disc_nb(rng, 4, 3);
    const auto nb_back = round_trip(nb);
    EXPECT_EQ(nb_back.slopes(), nb.slopes());
    EXPECT_EQ(nb_back.intercepts(), nb.intercepts());
    EXPECT_EQ(nb_back.prior(), nb.prior());

    const auto lr = random::logreg(rng, 4, 3);
    const auto lr_back = round_trip(lr);
    EXPECT_EQ(lr_back.weights(), lr.weights());
    EXPECT_EQ(lr_back.biases(), lr.biases());

    const auto y = random::real_observation(rng, 3);
    EXPECT_EQ(disc_nb_posterior(nb_back, y), disc_nb_posterior(nb, y));
    EXPECT_EQ(lr_posterior(lr_back, y), lr_posterior(lr, y));
  }
}

TEST(Serialize, HmmRoundTripWithAndWithoutPosteriors) {
  random::Rng rng(3);
  const auto plain = random::hmm(rng, 3, 4);
  const auto plain_back = round_trip(plain);
  EXPECT_FALSE(plain_back.posteriors().has_value());
  EXPECT_EQ(plain_back.transitions(), plain.transitions());

  const auto full = derive_hmm_posteriors(plain);
  const auto full_back = round_trip(full);
  EXPECT_EQ(*full_back.posteriors(), *full.posteriors());
  const auto y = random::symbol_sequence(rng, 4, 6);
  EXPECT_EQ(entropic_forward_backward(full_back, y).gamma(), entropic_forward_backward(full, y).gamma());
  EXPECT_EQ(forward_backward(full_back, y).gamma(), forward_backward(full, y).gamma());
}

TEST(Serialize, DocumentShape) {
  const LogisticRegressionModel lr(LabelSpace({"a", "b"}), Matrix::from_rows({{0.1}, {-0.2}}), {1.0 / 3.0, 0.0});
  const auto doc = to_json(AnyModel(lr));
  EXPECT_EQ(doc.at("type"), "logreg");
  EXPECT_EQ(doc.at("T"), 1);
  EXPECT_EQ(doc.at("labels"), nlohmann::json({"a", "b"}));
  EXPECT_EQ(doc.at("biases")[0].get<double>(), 1.0 / 3.0);

  const DiscriminativeNBModel nb(LabelSpace({"a", "b"}), ProbabilityVector::uniform(2), Matrix(2, 3), Matrix(2, 3));
  const auto nb_doc = to_json(AnyModel(nb));
  EXPECT_EQ(nb_doc.at("type"), "disc_nb");
  EXPECT_EQ(nb_doc.at("params").at("a").size(), 2u);
  EXPECT_EQ(nb_doc.at("params").at("a")[0].size(), 3u);
}

TEST(Serialize, NaiveBayesWithoutAlphabetsUsesIndexedSymbols) {
  const auto model = std::get<NaiveBayesModel>(parse_model(R"({
    "type": "naive_bayes", "labels": ["x", "y"], "T": 1, "prior": [0.5, 0.5],
    "emissions": [[[0.9, 0.1], [0.1, 0.9]]]
  })"));
  EXPECT_EQ(model.alphabets()[0].names(), (std::vector<std::string>{"0", "1"}));
}

TEST(Serialize, MalformedDocumentsAreRejected) {
  const char* bad[] = {
      "not json",
      R"({"labels": ["a", "b"]})",
      R"({"type": "mystery"})",
      R"({"type": "logreg", "labels": ["a", "b"], "T": 2, "weights": [[1], [2]], "biases": [0, 0]})",
      R"({"type": "logreg", "labels": ["a", "b"], "T": 0, "weights": [[1], [2]], "biases": [0, 0]})",
      R"({"type": "disc_nb", "labels": ["a", "b"], "T": 1, "prior": [0, 1], "params": {"a": [[0], [0]], "c": [[0], [0]]}})",
      R"({"type": "naive_bayes", "labels": ["a", "b"], "T": 1, "prior": [0.5, 0.6], "emissions": [[[1], [1]]]})",
      R"({"type": "hmm", "labels": ["a", "b"], "alphabet": ["u"], "prior": [0.5, 0.5], "transitions": "x"})",
  };
  for (const char* text : bad) EXPECT_THROW(parse_model(text), Error) << text;
}

TEST(Serialize, FileRoundTrip) {
  random::Rng rng(4);
  const auto path = std::filesystem::temp_directory_path() / "discnb_serialize_test.json";
  const AnyModel model = random::logreg(rng, 3, 2);
  save_model(path, model);
  const auto back = load_model(path);
  EXPECT_EQ(std::get<LogisticRegressionModel>(back).weights(), std::get<LogisticRegressionModel>(model).weights());
  std::filesystem::remove(path);
  EXPECT_THROW(load_model(path), Error);
}

}  // namespace
}  // namespace discnb
