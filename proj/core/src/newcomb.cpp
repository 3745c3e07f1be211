#include "fdtsim/newcomb.hpp"

#include <fmt/format.h>

namespace fdtsim::newcomb {

std::string_view to_string(AgentType type) {
  return type == AgentType::kCdt ? "cdt" : "fdt";
}

std::string_view to_string(Choice choice) {
  return choice == Choice::kOneBox ? "one-box" : "two-box";
}

void validate(const NewcombConfig& c) {
  if (!(c.high > c.low && c.low > 0.0)) {
    throw NewcombError(
        fmt::format("rewards must satisfy high > low > 0 (got high={}, low={})", c.high, c.low));
  }
  if (!(c.accuracy >= 0.0 && c.accuracy <= 1.0)) {
    throw NewcombError(fmt::format("predictor accuracy {} is not in [0, 1]", c.accuracy));
  }
}

double expected_utility(Choice choice, const NewcombConfig& c) {
  const double p = c.accuracy;
  if (choice == Choice::kOneBox) return p * c.high + (1.0 - p) * c.low;
  return (1.0 - p) * (c.high + c.low) + p * c.low;
}

Choice newcomb_decision(AgentType type, const NewcombConfig& config) {
  if (type == AgentType::kCdt) return Choice::kTwoBox;
  return expected_utility(Choice::kOneBox, config) > expected_utility(Choice::kTwoBox, config)
             ? Choice::kOneBox
             : Choice::kTwoBox;
}

double payoff(Choice choice, bool predictor_correct, const NewcombConfig& c) {
  const bool predicted_one_box = (choice == Choice::kOneBox) == predictor_correct;
  if (!predicted_one_box) return c.low;
  return choice == Choice::kOneBox ? c.high : c.high + c.low;
}

double newcomb_play_round(AgentType type, const NewcombConfig& config, RandomStream& rng) {
  const Choice choice = newcomb_decision(type, config);
  return payoff(choice, rng.bernoulli(config.accuracy), config);
}

}  // namespace fdtsim::newcomb
