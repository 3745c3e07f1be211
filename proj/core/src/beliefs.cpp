#include "fdtsim/beliefs.hpp"

#include <cmath>

#include <fmt/format.h>

namespace fdtsim::beliefs {

void validate(const SignalModel& model) {
  if (!(model.accuracy >= 0.0 && model.accuracy <= 1.0)) {
    throw BeliefError(fmt::format("signal accuracy {} is not in [0, 1]", model.accuracy));
  }
  if (model.type_count < 2) {
    throw BeliefError(fmt::format("a signal needs at least 2 types, got {}", model.type_count));
  }
}

double signal_probability(std::size_t signal, std::size_t true_type, const SignalModel& model) {
  if (signal == true_type) return model.accuracy;
  return (1.0 - model.accuracy) / static_cast<double>(model.type_count - 1);
}

OddsVector likelihood(std::size_t signal, const SignalModel& model) {
  validate(model);
  if (signal >= model.type_count) {
    throw BeliefError(
        fmt::format("signal {} out of range for {} types", signal, model.type_count));
  }
  OddsVector out(model.type_count);
  for (std::size_t t = 0; t < model.type_count; ++t) out[t] = signal_probability(signal, t, model);
  return out;
}

std::vector<double> normalize(std::span<const double> odds) {
  if (odds.empty()) throw BeliefError("empty odds vector");
  double total = 0.0;
  for (double w : odds) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw BeliefError(fmt::format("odds entry {} is not a finite nonnegative number", w));
    }
    total += w;
  }
  if (total <= 0.0) throw BeliefError("odds vector is all zero");
  std::vector<double> out(odds.begin(), odds.end());
  for (double& w : out) w /= total;
  return out;
}

std::vector<double> posterior(std::span<const double> prior, std::size_t signal,
                              const SignalModel& model) {
  if (prior.size() != model.type_count) {
    throw BeliefError(fmt::format("prior has {} entries, signal model has {} types",
                                  prior.size(), model.type_count));
  }
  OddsVector odds = likelihood(signal, model);
  for (std::size_t t = 0; t < odds.size(); ++t) odds[t] *= prior[t];
  double total = 0.0;
  for (double w : odds) total += w;
  if (!(total > 0.0)) {
    throw BeliefError(fmt::format(
        "signal {} has zero probability under the prior (accuracy {})", signal, model.accuracy));
  }
  return normalize(odds);
}

}  // namespace fdtsim::beliefs
