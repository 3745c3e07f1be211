#ifndef FDTSIM_NEWCOMB_HPP_
#define FDTSIM_NEWCOMB_HPP_

// Transparent Newcomb. Box A always holds `low`; box B holds `high` iff the
// predictor expected the agent to one-box, and the agent sees box B before
// choosing. An agent facing an empty box B takes box A.

#include <cstdint>
#include <stdexcept>
#include <string_view>

#include "fdtsim/random.hpp"

namespace fdtsim::newcomb {

enum class AgentType : std::uint8_t { kCdt = 0, kFdt = 1 };
inline constexpr std::size_t kTypeCount = 2;

enum class Choice : std::uint8_t { kOneBox, kTwoBox };

std::string_view to_string(AgentType type);
std::string_view to_string(Choice choice);

struct NewcombConfig {
  double high = 10000.0;
  double low = 1000.0;
  double accuracy = 0.99;

  bool operator==(const NewcombConfig&) const = default;
};

class NewcombError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Throws NewcombError unless high > low > 0 and accuracy is in [0, 1].
void validate(const NewcombConfig& config);

// Expected payoff of a policy that takes `choice` whenever box B is full.
double expected_utility(Choice choice, const NewcombConfig& config);

// FDT one-boxes iff that policy's expected payoff is strictly higher; CDT
// always two-boxes.
Choice newcomb_decision(AgentType type, const NewcombConfig& config);

// Realized payoff given the agent's full-box choice and whether the
// predictor read it correctly.
double payoff(Choice choice, bool predictor_correct, const NewcombConfig& config);

// One round; draws exactly one number from `rng`.
double newcomb_play_round(AgentType type, const NewcombConfig& config, RandomStream& rng);

}  // namespace fdtsim::newcomb

#endif  // FDTSIM_NEWCOMB_HPP_
