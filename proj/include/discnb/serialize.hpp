#pragma once

// JSON documents for every model type. Numbers are written in shortest
// round-trip decimal form, so load(save(m)) reproduces every parameter
// bit for bit.
//
//   {"type":"naive_bayes","labels":[..],"T":T,"alphabets":[[..]],"prior":[..],
//    "emissions":[[[..]]]}                       emissions[t][i][m]
//   {"type":"disc_nb","labels":[..],"T":T,"prior":[..],
//    "params":{"a":[[..]],"c":[[..]]}}           a[i][t], c[i][t]
//   {"type":"logreg","labels":[..],"T":T,"weights":[[..]],"biases":[..]}
//   {"type":"hmm","labels":[..],"alphabet":[..],"prior":[..],"transitions":[[..]],
//    "emissions":[[..]],"posteriors":[[..]]}     posteriors[y][i], optional

#include <filesystem>
#include <string>
#include <string_view>
#include <variant>

#include <json.hpp>

#include "discnb/hmm.hpp"
#include "discnb/logreg.hpp"
#include "discnb/naive_bayes.hpp"

namespace discnb {

using AnyModel = std::variant<NaiveBayesModel, DiscriminativeNBModel, LogisticRegressionModel, HmmModel>;

/// "naive_bayes", "disc_nb", "logreg" or "hmm".
const char* model_type_name(const AnyModel& model) noexcept;

nlohmann::json to_json(const NaiveBayesModel& model);
nlohmann::json to_json(const DiscriminativeNBModel& model);
nlohmann::json to_json(const LogisticRegressionModel& model);
nlohmann::json to_json(const HmmModel& model);
nlohmann::json to_json(const AnyModel& model);

/// Throws Error(InvalidArgument) on a malformed document.
AnyModel model_from_json(const nlohmann::json& doc);

std::string dump_model(const AnyModel& model);
AnyModel parse_model(std::string_view text);

void save_model(const std::filesystem::path& path, const AnyModel& model);
AnyModel load_model(const std::filesystem::path& path);

}  // namespace discnb
