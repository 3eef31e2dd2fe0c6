#pragma once

// Randomized equivalence sweeps behind `discnb verify`:
//
//   nb_generative_vs_discriminative  NB posterior vs its discriminative rewrite
//   disc_nb_vs_logreg                disc NB <-> LR, both directions + round trip
//   hmm_fb_vs_efb                    forward-backward vs entropic forward-backward
//   brute_force_oracle               FB and NB posteriors vs path enumeration
//
// Each suite reports the largest absolute posterior discrepancy it saw and
// passes when that stays within kEquivalenceTolerance.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace discnb {

struct VerifyConfig {
  std::uint64_t seed = 20210101;
  std::size_t cases = 1000;  // random models per suite
  bool inject_efb_fault = false;
};

struct SuiteResult {
  std::string name;
  std::size_t cases = 0;
  std::size_t checks = 0;
  double max_discrepancy = 0.0;
  bool passed = false;
};

struct VerifyReport {
  std::vector<SuiteResult> suites;
  bool all_passed() const noexcept;
};

SuiteResult verify_nb_forms(std::uint64_t seed, std::size_t cases);
SuiteResult verify_nb_logreg(std::uint64_t seed, std::size_t cases, std::size_t observations_per_model = 100);
SuiteResult verify_fb_efb(std::uint64_t seed, std::size_t cases, bool inject_efb_fault = false);
SuiteResult verify_oracle(std::uint64_t seed, std::size_t cases);

VerifyReport run_verification(const VerifyConfig& config);

/// Fixed-format text: one line per suite followed by an overall verdict.
std::string format_report(const VerifyReport& report);

}  // namespace discnb
