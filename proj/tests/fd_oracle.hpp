#pragma once

// Central finite differences of loss_cross_entropy, coordinate by coordinate.
// Test-only: independent of the closed-form gradient it is compared against.

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "discnb/train.hpp"

namespace discnb::testing {

inline constexpr double kFiniteDifferenceStep = 1e-5;

struct GradientCheck {
  double max_relative_error = 0.0;
  std::size_t coordinates = 0;
};

/// |analytic - numeric| / max(|analytic|, |numeric|, 1e-3); the floor keeps
/// coordinates whose true gradient is zero from dividing by rounding noise.
inline double relative_error(double analytic, double numeric) {
  return std::abs(analytic - numeric) / std::max({std::abs(analytic), std::abs(numeric), 1e-3});
}

inline GradientCheck check_gradient(const DiscriminativeNBModel& model, std::span<const RealSample> data,
                                    double h = kFiniteDifferenceStep) {
  const Gradient analytic = gradient(model, data);
  const std::size_t n = model.num_labels();
  const std::size_t len = model.length();
  std::vector<double> logits(n);
  for (std::size_t i = 0; i < n; ++i) logits[i] = std::log(model.prior()[i]);

  auto loss_at = [&](const std::vector<double>& u, const Matrix& a, const Matrix& c) {
    return loss_cross_entropy(model_from_logits(model.labels(), u, a, c), data);
  };

  GradientCheck out;
  auto record = [&](double g, double plus, double minus) {
    const double numeric = (plus - minus) / (2.0 * h);
    out.max_relative_error = std::max(out.max_relative_error, relative_error(g, numeric));
    ++out.coordinates;
  };

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t t = 0; t < len; ++t) {
      Matrix up = model.slopes(), down = model.slopes();
      up(i, t) += h;
      down(i, t) -= h;
      record(analytic.slopes(i, t), loss_at(logits, up, model.intercepts()), loss_at(logits, down, model.intercepts()));

      up = model.intercepts();
      down = model.intercepts();
      up(i, t) += h;
      down(i, t) -= h;
      record(analytic.intercepts(i, t), loss_at(logits, model.slopes(), up), loss_at(logits, model.slopes(), down));
    }
    auto up = logits, down = logits;
    up[i] += h;
    down[i] -= h;
    record(analytic.prior_logits[i], loss_at(up, model.slopes(), model.intercepts()),
           loss_at(down, model.slopes(), model.intercepts()));
  }
  return out;
}

}  // namespace discnb::testing
