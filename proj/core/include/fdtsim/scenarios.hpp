#ifndef FDTSIM_SCENARIOS_HPP_
#define FDTSIM_SCENARIOS_HPP_

// Builders for the classic one-shot decision problems: the smoking lesion
// (two graphs), Newcomb's problem, Parfit's hitchhiker, and the twin
// Prisoner's Dilemma. Every numeric ingredient is an overridable parameter
// whose default is the textbook value.

#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fdtsim/graphs.hpp"

namespace fdtsim::scenarios {

enum class ScenarioId { kSmokingEdt, kSmokingCdt, kNewcomb, kParfit, kTwinPd };

std::string_view to_string(ScenarioId id);
std::optional<ScenarioId> parse_scenario_id(std::string_view text);
std::span<const ScenarioId> all_scenarios();

class ScenarioError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ScenarioParams {
  ScenarioId id = ScenarioId::kNewcomb;
  std::map<std::string, double, std::less<>> overrides;
  // Which theory the problem will be handed to. Only the agent's prior over
  // its own disposition depends on it (see `prediction` below); the graph
  // structure does not.
  std::optional<graphs::Theory> theory;
};

struct ParameterInfo {
  std::string name;
  std::optional<double> default_value;  // nullopt: depends on the theory
  bool is_probability = false;
  std::string description;
};

// Accepted override keys for a scenario, in a stable order.
std::vector<ParameterInfo> parameters(ScenarioId id);

// Names of the variables the builders use.
inline constexpr std::string_view kDecisionFn = "DecisionFn";

// Newcomb and Parfit carry a `prediction` parameter: the probability, before
// deciding, that the predictor anticipates two-boxing (Newcomb) or that the
// driver anticipates payment (Parfit). CDT holds it fixed while it varies its
// action, so it is the only input that moves CDT's numbers. When omitted it
// defaults to the self-consistent value for a CDT agent (it certainly
// two-boxes / refuses, so the predictor sees that with the stated accuracy)
// and to 0.5 for the other theories, which need a non-degenerate prior over
// their own disposition to condition on either action.
//
// Throws ScenarioError on an unknown key, a probability outside [0,1],
// twin-PD payoffs that are not a Prisoner's Dilemma, or a prediction the
// stated accuracy cannot produce.
graphs::DecisionProblem build_scenario(const ScenarioParams& params);

}  // namespace fdtsim::scenarios

#endif  // FDTSIM_SCENARIOS_HPP_
