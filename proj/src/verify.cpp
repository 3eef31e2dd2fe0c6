#include "discnb/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "discnb/hmm.hpp"
#include "discnb/logreg.hpp"
#include "discnb/naive_bayes.hpp"
#include "discnb/oracle.hpp"
#include "discnb/random_models.hpp"

namespace discnb {

namespace {

double max_abs_diff(const ProbabilityVector& a, const ProbabilityVector& b) {
  double worst = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) worst = std::max(worst, std::abs(a[k] - b[k]));
  return worst;
}

random::Rng suite_rng(std::uint64_t seed, std::uint64_t suite) {
  std::seed_seq seq{seed, suite};
  return random::Rng(seq);
}

SuiteResult finish(std::string name, std::size_t cases, std::size_t checks, double worst) {
  return SuiteResult{std::move(name), cases, checks, worst,
                     std::isfinite(worst) && worst <= kEquivalenceTolerance};
}

constexpr std::size_t kObservationsPerNbModel = 5;
constexpr std::size_t kSequencesPerHmm = 3;

}  // namespace

bool VerifyReport::all_passed() const noexcept {
  return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.passed; });
}

SuiteResult verify_nb_forms(std::uint64_t seed, std::size_t cases) {
  auto rng = suite_rng(seed, 1);
  double worst = 0.0;
  std::size_t checks = 0;
  for (std::size_t c = 0; c < cases; ++c) {
    const auto model = random::naive_bayes(rng, random::uniform_int(rng, 2, 5),
                                           random::uniform_int(rng, 1, 6), 6);
    const auto tables = nb_to_discriminative(model);
    for (std::size_t k = 0; k < kObservationsPerNbModel; ++k) {
      const auto y = random::symbols_for(rng, model);
      const auto generative = nb_generative_posterior(model, y);
      const auto columns = tables.columns_for(y);
      const auto discriminative = nb_discriminative_posterior(model.prior(), columns);
      worst = std::max(worst, max_abs_diff(generative, discriminative));
      ++checks;
    }
  }
  return finish("nb_generative_vs_discriminative", cases, checks, worst);
}

SuiteResult verify_nb_logreg(std::uint64_t seed, std::size_t cases, std::size_t observations_per_model) {
  auto rng = suite_rng(seed, 2);
  double worst = 0.0;
  std::size_t checks = 0;
  for (std::size_t c = 0; c < cases; ++c) {
    const std::size_t n = random::uniform_int(rng, 2, 5);
    const std::size_t len = random::uniform_int(rng, 1, 6);
    const auto nb = random::disc_nb(rng, n, len);
    const auto nb_as_lr = nb_to_lr(nb);
    const auto lr = random::logreg(rng, n, len);
    const auto lr_as_nb = lr_to_nb(lr, random::probability_vector(rng, n));
    const auto lr_round_trip = nb_to_lr(lr_as_nb);
    for (std::size_t k = 0; k < observations_per_model; ++k) {
      const auto y = random::real_observation(rng, len);
      worst = std::max(worst, max_abs_diff(disc_nb_posterior(nb, y), lr_posterior(nb_as_lr, y)));
      const auto reference = lr_posterior(lr, y);
      worst = std::max(worst, max_abs_diff(reference, disc_nb_posterior(lr_as_nb, y)));
      worst = std::max(worst, max_abs_diff(reference, lr_posterior(lr_round_trip, y)));
      checks += 3;
    }
  }
  return finish("disc_nb_vs_logreg", cases, checks, worst);
}

SuiteResult verify_fb_efb(std::uint64_t seed, std::size_t cases, bool inject_efb_fault) {
  auto rng = suite_rng(seed, 3);
  ForwardBackwardOptions efb_options;
  efb_options.flip_entropic_ratio = inject_efb_fault;
  double worst = 0.0;
  std::size_t checks = 0;
  for (std::size_t c = 0; c < cases; ++c) {
    const std::size_t n = random::uniform_int(rng, 2, 4);
    const std::size_t m = random::uniform_int(rng, 1, 5);
    const auto model = derive_hmm_posteriors(random::hmm(rng, n, m));
    for (std::size_t k = 0; k < kSequencesPerHmm; ++k) {
      const auto y = random::symbol_sequence(rng, m, random::uniform_int(rng, 1, 8));
      const auto fb = forward_backward(model, y);
      const auto efb = entropic_forward_backward(model, y, efb_options);
      worst = std::max(worst, max_abs_difference(fb, efb));
      ++checks;
    }
  }
  return finish("hmm_fb_vs_efb", cases, checks, worst);
}

SuiteResult verify_oracle(std::uint64_t seed, std::size_t cases) {
  auto rng = suite_rng(seed, 4);
  double worst = 0.0;
  std::size_t checks = 0;
  for (std::size_t c = 0; c < cases; ++c) {
    const std::size_t n = random::uniform_int(rng, 2, 4);
    const std::size_t m = random::uniform_int(rng, 1, 5);
    // Longest T with N^T <= 4096.
    std::size_t max_len = 1;
    for (std::size_t paths = n; paths * n <= 4096; paths *= n) ++max_len;
    const auto model = random::hmm(rng, n, m);
    const auto y = random::symbol_sequence(rng, m, random::uniform_int(rng, 1, std::min<std::size_t>(max_len, 8)));
    worst = std::max(worst, max_abs_difference(forward_backward(model, y), oracle::joint_enumeration_hmm(model, y)));

    const auto nb = random::naive_bayes(rng, random::uniform_int(rng, 2, 5), random::uniform_int(rng, 1, 6), 6);
    const auto symbols = random::symbols_for(rng, nb);
    worst = std::max(worst, max_abs_diff(nb_generative_posterior(nb, symbols),
                                         oracle::joint_enumeration_nb(nb, symbols)));
    checks += 2;
  }
  return finish("brute_force_oracle", cases, checks, worst);
}

VerifyReport run_verification(const VerifyConfig& config) {
  VerifyReport report;
  report.suites.push_back(verify_nb_forms(config.seed, config.cases));
  report.suites.push_back(verify_nb_logreg(config.seed, config.cases));
  report.suites.push_back(verify_fb_efb(config.seed, config.cases, config.inject_efb_fault));
  report.suites.push_back(verify_oracle(config.seed, config.cases));
  return report;
}

std::string format_report(const VerifyReport& report) {
  std::string out;
  char line[256];
  for (const auto& s : report.suites) {
    std::snprintf(line, sizeof line, "%-36s cases=%-6zu checks=%-7zu max_discrepancy=%.3e tolerance=%.0e %s\n",
                  s.name.c_str(), s.cases, s.checks, s.max_discrepancy, kEquivalenceTolerance,
                  s.passed ? "PASS" : "FAIL");
    out += line;
  }
  out += report.all_passed() ? "overall: PASS\n" : "overall: FAIL\n";
  return out;
}

}  // namespace discnb
