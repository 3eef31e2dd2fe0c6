#include "discnb/serialize.hpp"

#include <fstream>
#include <sstream>

namespace discnb {

using nlohmann::json;

const char* model_type_name(const AnyModel& model) noexcept {
  switch (model.index()) {
    case 0: return "naive_bayes";
    case 1: return "disc_nb";
    case 2: return "logreg";
    default: return "hmm";
  }
}

json to_json(const NaiveBayesModel& model) {
  json alphabets = json::array();
  json emissions = json::array();
  for (std::size_t t = 0; t < model.length(); ++t) {
    alphabets.push_back(model.alphabets()[t].names());
    emissions.push_back(model.emission(t).to_rows());
  }
  return json{{"type", "naive_bayes"},  {"labels", model.labels().names()},
              {"T", model.length()},    {"alphabets", std::move(alphabets)},
              {"prior", model.prior().vec()}, {"emissions", std::move(emissions)}};
}

json to_json(const DiscriminativeNBModel& model) {
  return json{{"type", "disc_nb"},
              {"labels", model.labels().names()},
              {"T", model.length()},
              {"prior", model.prior().vec()},
              {"params", {{"a", model.slopes().to_rows()}, {"c", model.intercepts().to_rows()}}}};
}

json to_json(const LogisticRegressionModel& model) {
  return json{{"type", "logreg"},
              {"labels", model.labels().names()},
              {"T", model.length()},
              {"weights", model.weights().to_rows()},
              {"biases", model.biases()}};
}

json to_json(const HmmModel& model) {
  json doc{{"type", "hmm"},
           {"labels", model.labels().names()},
           {"alphabet", model.alphabet().names()},
           {"prior", model.prior().vec()},
           {"transitions", model.transitions().to_rows()}};
  if (model.emissions()) doc["emissions"] = model.emissions()->to_rows();
  if (model.posteriors()) doc["posteriors"] = model.posteriors()->to_rows();
  return doc;
}

json to_json(const AnyModel& model) {
  return std::visit([](const auto& m) { return to_json(m); }, model);
}

namespace {

[[noreturn]] void malformed(const std::string& what) {
  throw Error(Errc::InvalidArgument, "malformed model document: " + what);
}

const json& field(const json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) malformed(std::string("missing field '") + key + "'");
  return doc.at(key);
}

template <typename T>
T get_as(const json& value, const char* what) {
  try {
    return value.get<T>();
  } catch (const json::exception&) {
    malformed(std::string("field '") + what + "' has the wrong type");
  }
}

Matrix matrix_field(const json& value, const char* what) {
  return Matrix::from_rows(get_as<std::vector<std::vector<double>>>(value, what));
}

std::size_t length_field(const json& doc) {
  const auto len = get_as<long long>(field(doc, "T"), "T");
  if (len < 1) malformed("'T' must be a positive integer");
  return static_cast<std::size_t>(len);
}

void expect_cols(const Matrix& m, std::size_t cols, const char* what) {
  if (m.cols() != cols) malformed(std::string("'") + what + "' does not have T columns");
}

NaiveBayesModel naive_bayes_from_json(const json& doc) {
  const std::size_t len = length_field(doc);
  const auto tables = get_as<std::vector<std::vector<std::vector<double>>>>(field(doc, "emissions"),
                                                                             "emissions");
  if (tables.size() != len) malformed("'emissions' must hold T tables");
  std::vector<Matrix> emissions;
  for (const auto& t : tables) emissions.push_back(Matrix::from_rows(t));

  std::vector<ObservationAlphabet> alphabets;
  if (doc.contains("alphabets")) {
    const auto names = get_as<std::vector<std::vector<std::string>>>(doc.at("alphabets"), "alphabets");
    if (names.size() != len) malformed("'alphabets' must hold T alphabets");
    for (const auto& n : names) alphabets.emplace_back(n);
  } else {
    for (const auto& m : emissions) alphabets.push_back(ObservationAlphabet::indexed(m.cols()));
  }
  return NaiveBayesModel(LabelSpace(get_as<std::vector<std::string>>(field(doc, "labels"), "labels")),
                         std::move(alphabets),
                         ProbabilityVector(get_as<std::vector<double>>(field(doc, "prior"), "prior")),
                         std::move(emissions));
}

DiscriminativeNBModel disc_nb_from_json(const json& doc) {
  const std::size_t len = length_field(doc);
  const json& params = field(doc, "params");
  Matrix a = matrix_field(field(params, "a"), "params.a");
  Matrix c = matrix_field(field(params, "c"), "params.c");
  expect_cols(a, len, "params.a");
  expect_cols(c, len, "params.c");
  return DiscriminativeNBModel(LabelSpace(get_as<std::vector<std::string>>(field(doc, "labels"), "labels")),
                               ProbabilityVector(get_as<std::vector<double>>(field(doc, "prior"), "prior")),
                               std::move(a), std::move(c));
}

LogisticRegressionModel logreg_from_json(const json& doc) {
  const std::size_t len = length_field(doc);
  Matrix w = matrix_field(field(doc, "weights"), "weights");
  expect_cols(w, len, "weights");
  return LogisticRegressionModel(LabelSpace(get_as<std::vector<std::string>>(field(doc, "labels"), "labels")),
                                 std::move(w), get_as<std::vector<double>>(field(doc, "biases"), "biases"));
}

HmmModel hmm_from_json(const json& doc) {
  std::optional<Matrix> emissions;
  std::optional<Matrix> posteriors;
  if (doc.contains("emissions") && !doc.at("emissions").is_null()) {
    emissions = matrix_field(doc.at("emissions"), "emissions");
  }
  if (doc.contains("posteriors") && !doc.at("posteriors").is_null()) {
    posteriors = matrix_field(doc.at("posteriors"), "posteriors");
  }
  return HmmModel(LabelSpace(get_as<std::vector<std::string>>(field(doc, "labels"), "labels")),
                  ObservationAlphabet(get_as<std::vector<std::string>>(field(doc, "alphabet"), "alphabet")),
                  ProbabilityVector(get_as<std::vector<double>>(field(doc, "prior"), "prior")),
                  matrix_field(field(doc, "transitions"), "transitions"), std::move(emissions),
                  std::move(posteriors));
}

}  // namespace

AnyModel model_from_json(const json& doc) {
  const auto type = get_as<std::string>(field(doc, "type"), "type");
  if (type == "naive_bayes") return naive_bayes_from_json(doc);
  if (type == "disc_nb") return disc_nb_from_json(doc);
  if (type == "logreg") return logreg_from_json(doc);
  if (type == "hmm") return hmm_from_json(doc);
  malformed("unknown model type '" + type + "'");
}

std::string dump_model(const AnyModel& model) { return to_json(model).dump(2) + "\n"; }

AnyModel parse_model(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    malformed(e.what());
  }
  return model_from_json(doc);
}

void save_model(const std::filesystem::path& path, const AnyModel& model) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::InvalidArgument, "cannot open '" + path.string() + "' for writing");
  out << dump_model(model);
  if (!out) throw Error(Errc::InvalidArgument, "failed writing '" + path.string() + "'");
}

AnyModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::InvalidArgument, "cannot open model file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_model(buffer.str());
}

}  // namespace discnb
