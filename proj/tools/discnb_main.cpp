// discnb: fit, predict, convert and verify Naive Bayes / logistic regression /
// HMM models from the command line.
//
// Exit codes: 0 success, 1 verification failure, 2 bad input, 3 numerical failure.

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dataset.hpp"
#include "discnb/core.hpp"
#include "discnb/hmm.hpp"
#include "discnb/logreg.hpp"
#include "discnb/naive_bayes.hpp"
#include "discnb/random_models.hpp"
#include "discnb/serialize.hpp"
#include "discnb/train.hpp"
#include "discnb/verify.hpp"

namespace discnb::cli {
namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitNumerical = 3;

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::optional<std::vector<std::string>> optional_list(const std::string& text) {
  if (text.empty()) return std::nullopt;
  return split_list(text);
}

// fit ---------------------------------------------------------------------

struct FitOptions {
  bool generative = false;
  bool discriminative = false;
  std::string data;
  std::string output;
  std::string report;
  std::string labels;
  double alpha = 0.0;
  TrainConfig train;
};

int run_fit(const FitOptions& opt) {
  const auto table = read_csv(opt.data);
  if (opt.generative) {
    const auto data = discrete_dataset(table, optional_list(opt.labels));
    const auto model = nb_fit_mle(data.labels, data.alphabets, data.samples, opt.alpha);
    save_model(opt.output, model);
    const auto stats = count_patterns(data.labels, data.alphabets, data.samples);
    std::cout << "samples " << stats.sample_count << "\n";
    for (std::size_t i = 0; i < data.labels.size(); ++i) {
      std::cout << "label " << data.labels.name(i) << " count " << stats.label_counts[i] << " prior "
                << format_real(model.prior()[i]) << "\n";
    }
    for (std::size_t t = 0; t < data.alphabets.size(); ++t) {
      std::cout << "position " << t + 1 << " symbols " << data.alphabets[t].size() << "\n";
    }
    return kExitOk;
  }

  const auto data = real_dataset(table, optional_list(opt.labels));
  const auto result = fit_discriminative(data.samples, data.length, data.labels, opt.train);
  save_model(opt.output, result.model);
  for (std::size_t e = 0; e < result.report.loss_curve.size(); ++e) {
    std::cout << "epoch " << e + 1 << " loss " << format_real(result.report.loss_curve[e]) << "\n";
  }
  std::cout << "accuracy " << format_real(result.report.final_accuracy) << "\n";
  if (!opt.report.empty()) {
    nlohmann::json doc{{"initial_loss", result.report.initial_loss},
                       {"loss_curve", result.report.loss_curve},
                       {"final_accuracy", result.report.final_accuracy}};
    std::ofstream out(opt.report);
    if (!out) throw Error(Errc::InvalidArgument, "cannot open '" + opt.report + "' for writing");
    out << doc.dump(2) << "\n";
  }
  return kExitOk;
}

// predict -----------------------------------------------------------------

struct PredictOptions {
  std::string model;
  std::string observations;
  std::string output;
  std::string via = "generative";
};

std::vector<double> real_row(const std::vector<std::string>& fields, std::size_t line) {
  std::vector<double> y;
  y.reserve(fields.size());
  for (const auto& f : fields) y.push_back(parse_real(f, line));
  return y;
}

int run_predict(const PredictOptions& opt) {
  const AnyModel model = load_model(opt.model);
  if (std::holds_alternative<HmmModel>(model)) {
    throw Error(Errc::InvalidArgument, "predict does not take hmm models; use hmm-posterior");
  }
  const auto table = read_csv(opt.observations);

  const LabelSpace& labels = std::visit([](const auto& m) -> const LabelSpace& { return m.labels(); }, model);
  const std::size_t length = std::visit(
      [](const auto& m) -> std::size_t {
        if constexpr (std::is_same_v<std::decay_t<decltype(m)>, HmmModel>) {
          return 0;
        } else {
          return m.length();
        }
      },
      model);
  const auto rows = observation_fields(table, length);

  std::optional<NbPosteriorTables> tables;
  if (const auto* nb = std::get_if<NaiveBayesModel>(&model)) {
    if (opt.via == "discriminative") tables = nb_to_discriminative(*nb);
  }

  std::ofstream file;
  if (!opt.output.empty()) {
    file.open(opt.output);
    if (!file) throw Error(Errc::InvalidArgument, "cannot open '" + opt.output + "' for writing");
  }
  std::ostream& out = opt.output.empty() ? std::cout : file;

  for (const auto& name : labels.names()) out << name << ",";
  out << "argmax,tie\n";
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const std::size_t line = table.line_numbers[r];
    ProbabilityVector posterior;
    if (const auto* nb = std::get_if<NaiveBayesModel>(&model)) {
      SymbolSequence symbols(length);
      for (std::size_t t = 0; t < length; ++t) {
        const auto idx = nb->alphabets()[t].find(rows[r][t]);
        if (!idx) {
          throw Error(Errc::UnknownSymbol, "line " + std::to_string(line) + ": symbol '" + rows[r][t] +
                                               "' at position " + std::to_string(t + 1) +
                                               " was never seen in training (zero evidence)");
        }
        symbols[t] = *idx;
      }
      try {
        posterior = tables ? nb_discriminative_posterior(tables->prior(), tables->columns_for(symbols))
                           : nb_generative_posterior(*nb, symbols);
      } catch (const Error& e) {
        if (e.code() == Errc::ZeroEvidence || e.code() == Errc::ZeroMarginal ||
            e.code() == Errc::AllZeroWeights) {
          throw Error(Errc::ZeroEvidence, "line " + std::to_string(line) +
                                              ": zero evidence for this observation (refit with --alpha > 0)");
        }
        throw;
      }
    } else if (const auto* disc = std::get_if<DiscriminativeNBModel>(&model)) {
      posterior = disc_nb_posterior(*disc, real_row(rows[r], line));
    } else {
      posterior = lr_posterior(std::get<LogisticRegressionModel>(model), real_row(rows[r], line));
    }
    for (double p : posterior.entries()) out << format_real(p) << ",";
    out << labels.name(argmax(posterior.entries())) << "," << (has_tied_max(posterior.entries()) ? 1 : 0)
        << "\n";
  }
  return kExitOk;
}

// convert -----------------------------------------------------------------

struct ConvertOptions {
  std::string model;
  std::string output;
  std::string prior;
  std::uint64_t probe_seed = 12345;
  std::size_t probes = 100;
};

ProbabilityVector parse_prior(const std::string& text, std::size_t n) {
  std::vector<double> values;
  for (const auto& f : split_list(text)) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
    if (ec != std::errc() || ptr != f.data() + f.size() || !std::isfinite(v)) {
      throw Error(Errc::InvalidArgument, "--prior: '" + f + "' is not a finite number");
    }
    values.push_back(v);
  }
  if (values.size() != n) {
    throw Error(Errc::DimensionMismatch, "--prior needs " + std::to_string(n) + " entries");
  }
  for (double v : values) {
    if (!(v > 0.0)) throw Error(Errc::ZeroPrior, "prior must be strictly positive");
  }
  return ProbabilityVector(std::move(values));
}

int run_convert(const ConvertOptions& opt) {
  const AnyModel source = load_model(opt.model);
  random::Rng rng(opt.probe_seed);
  double worst = 0.0;
  AnyModel target;

  if (const auto* disc = std::get_if<DiscriminativeNBModel>(&source)) {
    if (!opt.prior.empty()) throw Error(Errc::InvalidArgument, "--prior only applies to logreg sources");
    const auto lr = nb_to_lr(*disc);
    for (std::size_t k = 0; k < opt.probes; ++k) {
      const auto y = random::real_observation(rng, disc->length());
      const auto a = disc_nb_posterior(*disc, y);
      const auto b = lr_posterior(lr, y);
      for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    }
    target = lr;
  } else if (const auto* lr = std::get_if<LogisticRegressionModel>(&source)) {
    const auto prior = opt.prior.empty() ? ProbabilityVector::uniform(lr->num_labels())
                                         : parse_prior(opt.prior, lr->num_labels());
    const auto disc = lr_to_nb(*lr, prior);
    for (std::size_t k = 0; k < opt.probes; ++k) {
      const auto y = random::real_observation(rng, lr->length());
      const auto a = lr_posterior(*lr, y);
      const auto b = disc_nb_posterior(disc, y);
      for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    }
    target = disc;
  } else {
    throw Error(Errc::InvalidArgument, std::string("cannot convert a model of type '") +
                                           model_type_name(source) + "'; expected disc_nb or logreg");
  }

  std::printf("converted %s -> %s\n", model_type_name(source), model_type_name(target));
  std::printf("max probe discrepancy %.3e over %zu probes\n", worst, opt.probes);
  if (!(worst <= kEquivalenceTolerance)) {
    std::fprintf(stderr, "error: probe discrepancy exceeds %.0e\n", kEquivalenceTolerance);
    return kExitNumerical;
  }
  save_model(opt.output, target);
  return kExitOk;
}

// verify ------------------------------------------------------------------

int run_verify(const VerifyConfig& config) {
  const auto report = run_verification(config);
  std::cout << format_report(report);
  return report.all_passed() ? kExitOk : kExitVerifyFailed;
}

// hmm-posterior -----------------------------------------------------------

struct HmmOptions {
  std::string model;
  std::string observations;
  std::string algo = "both";
};

void print_marginals(const char* title, const HmmModel& model, const PosteriorMarginals& marginals) {
  std::cout << title << "\nt";
  for (const auto& name : model.labels().names()) std::cout << "," << name;
  std::cout << "\n";
  for (std::size_t t = 0; t < marginals.length(); ++t) {
    std::cout << t + 1;
    for (double p : marginals.gamma().row(t)) std::cout << "," << format_real(p);
    std::cout << "\n";
  }
}

int run_hmm_posterior(const HmmOptions& opt) {
  const AnyModel loaded = load_model(opt.model);
  const auto* model = std::get_if<HmmModel>(&loaded);
  if (!model) throw Error(Errc::InvalidArgument, "hmm-posterior needs a model of type 'hmm'");

  SymbolSequence symbols;
  for (const auto& name : split_list(opt.observations)) {
    const auto idx = model->alphabet().find(name);
    if (!idx) throw Error(Errc::UnknownSymbol, "unknown symbol '" + name + "'");
    symbols.push_back(*idx);
  }

  std::optional<PosteriorMarginals> fb;
  std::optional<PosteriorMarginals> efb;
  if (opt.algo == "fb" || opt.algo == "both") {
    fb = forward_backward(*model, symbols);
    print_marginals("forward_backward", *model, *fb);
  }
  if (opt.algo == "efb" || opt.algo == "both") {
    const HmmModel with_posteriors = model->posteriors() ? *model : derive_hmm_posteriors(*model);
    efb = entropic_forward_backward(with_posteriors, symbols);
    print_marginals("entropic_forward_backward", *model, *efb);
  }
  if (fb && efb) std::printf("max_discrepancy %.3e\n", max_abs_difference(*fb, *efb));
  return kExitOk;
}

int exit_code_for(const Error& e) {
  return e.code() == Errc::DivergedLoss ? kExitNumerical : kExitBadInput;
}

}  // namespace
}  // namespace discnb::cli

int main(int argc, char** argv) {
  using namespace discnb;
  using namespace discnb::cli;

  CLI::App app{"Naive Bayes (generative and discriminative), logistic regression and HMM inference"};
  app.require_subcommand(1);

  FitOptions fit;
  auto* fit_cmd = app.add_subcommand("fit", "Fit a model from a labeled CSV dataset");
  auto* gen_flag = fit_cmd->add_flag("--generative", fit.generative, "Maximum-likelihood Naive Bayes (discrete symbols)");
  auto* disc_flag = fit_cmd->add_flag("--discriminative", fit.discriminative,
                                      "Gradient-trained discriminative Naive Bayes (real features)");
  gen_flag->excludes(disc_flag);
  fit_cmd->add_option("data", fit.data, "Dataset CSV (label column first)")->required();
  fit_cmd->add_option("-o,--output", fit.output, "Model JSON to write")->required();
  fit_cmd->add_option("--alpha", fit.alpha, "Additive smoothing (generative)")->check(CLI::NonNegativeNumber);
  fit_cmd->add_option("--labels", fit.labels, "Comma-separated label set (default: inferred)");
  fit_cmd->add_option("--lr", fit.train.learning_rate, "Learning rate (discriminative)");
  fit_cmd->add_option("--epochs", fit.train.epochs, "Epochs (discriminative)");
  fit_cmd->add_option("--batch-size", fit.train.batch_size, "Mini-batch size, 0 = full batch");
  fit_cmd->add_option("--seed", fit.train.seed, "Shuffle seed");
  fit_cmd->add_option("--report", fit.report, "Write the training report as JSON");

  PredictOptions predict;
  auto* predict_cmd = app.add_subcommand("predict", "Posterior table for each observation row");
  predict_cmd->add_option("model", predict.model, "Model JSON")->required();
  predict_cmd->add_option("observations", predict.observations, "Observation CSV")->required();
  predict_cmd->add_option("-o,--output", predict.output, "Output CSV (default: stdout)");
  predict_cmd->add_option("--via", predict.via, "naive_bayes models: generative or discriminative")
      ->check(CLI::IsMember({"generative", "discriminative"}));

  ConvertOptions convert;
  auto* convert_cmd = app.add_subcommand("convert", "Convert between disc_nb and logreg models");
  convert_cmd->add_option("model", convert.model, "Source model JSON")->required();
  convert_cmd->add_option("-o,--output", convert.output, "Converted model JSON")->required();
  convert_cmd->add_option("--prior", convert.prior, "Comma-separated prior for logreg -> disc_nb (default uniform)");
  convert_cmd->add_option("--probe-seed", convert.probe_seed, "Seed of the random probe set");

  VerifyConfig verify;
  auto* verify_cmd = app.add_subcommand("verify", "Run the randomized equivalence suites");
  verify_cmd->add_option("--seed", verify.seed, "Random seed");
  verify_cmd->add_option("--cases", verify.cases, "Random models per suite")->check(CLI::PositiveNumber);
  verify_cmd->add_flag("--inject-efb-fault", verify.inject_efb_fault)->group("");

  HmmOptions hmm;
  auto* hmm_cmd = app.add_subcommand("hmm-posterior", "Posterior marginals of an HMM by FB and/or EFB");
  hmm_cmd->add_option("model", hmm.model, "HMM model JSON")->required();
  hmm_cmd->add_option("--obs", hmm.observations, "Comma-separated observation symbols")->required();
  hmm_cmd->add_option("--algo", hmm.algo, "fb, efb or both")->check(CLI::IsMember({"fb", "efb", "both"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (fit_cmd->parsed()) {
      if (!fit.generative && !fit.discriminative) {
        std::cerr << "error: fit needs --generative or --discriminative\n";
        return 2;
      }
      return run_fit(fit);
    }
    if (predict_cmd->parsed()) return run_predict(predict);
    if (convert_cmd->parsed()) return run_convert(convert);
    if (verify_cmd->parsed()) return run_verify(verify);
    if (hmm_cmd->parsed()) return run_hmm_posterior(hmm);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
