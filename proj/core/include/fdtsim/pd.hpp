#ifndef FDTSIM_PD_HPP_
#define FDTSIM_PD_HPP_

// Prisoner's Dilemma with noisy type signals. Before each game every player
// receives a signal naming the opponent's type (correct with probability
// `accuracy`, otherwise one of the other two types at random). Defectors
// always defect, Cooperators always cooperate, and FDT agents follow a
// signal -> move policy chosen to be self-consistent for the current
// population.

#include <array>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string_view>
#include <utility>
#include <vector>

#include "fdtsim/random.hpp"

namespace fdtsim::pd {

enum class AgentType : std::uint8_t { kDefector = 0, kCooperator = 1, kFdt = 2 };
inline constexpr std::size_t kTypeCount = 3;

// A signal is the index of the type it names.
using Signal = std::size_t;

enum class Move : std::uint8_t { kCooperate, kDefect };

std::string_view to_string(AgentType type);
char to_char(Move move);  // 'C' or 'D'

struct PdConfig {
  // Row player's payoff; the first letter is the row player's move.
  double cc = 7.0;
  double cd = 1.0;
  double dc = 10.0;
  double dd = 4.0;
  double accuracy = 0.9;

  bool operator==(const PdConfig&) const = default;
};

class PdError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Throws PdError unless DC > CC > DD > CD > 0 and accuracy is in [0, 1].
void validate(const PdConfig& config);

double payoff(const PdConfig& config, Move mine, Move theirs);

// Move taken on receiving signal s, indexed by s.
using PdPolicy = std::array<Move, kTypeCount>;
using Shares = std::array<double, kTypeCount>;

// Throws PdError unless shares are nonnegative and sum to 1 within 1e-9.
void validate_shares(const Shares& shares);

// EU of playing `move` on receiving `signal`, given the rest of the policy.
// An opponent of unknown type is weighed by the posterior over types. An
// FDT opponent runs the same policy on its own signal about us; when that
// signal equals ours it outputs whatever this component outputs, so the
// `move` being evaluated is mirrored there. Zero if `signal` cannot occur.
double component_eu(const PdConfig& config, const Shares& shares, const PdPolicy& policy,
                    Signal signal, Move move);

// component_eu split as constant + sum_s coefficient[s] * U(move, policy[s]),
// where the sum runs over the signals other than `signal` (whose coefficient
// is 0). The mirrored branch is folded into the constant.
struct ComponentTerms {
  double constant = 0.0;
  std::array<double, kTypeCount> coefficient{};
};
ComponentTerms component_terms(const PdConfig& config, const Shares& shares, Signal signal,
                               Move move);

// True if every component is a best response (within 1e-12) given the rest.
bool is_self_consistent(const PdConfig& config, const Shares& shares, const PdPolicy& policy);

// All 8 policies, S=1 most significant, D before C.
std::array<PdPolicy, 8> all_policies();

// The self-consistent policies, in all_policies() order.
std::vector<PdPolicy> fixed_points(const PdConfig& config, const Shares& shares);

// Self-consistent policy with the highest FDT population EU; ties go to D at
// S=1, then S=2, then S=3. Throws PdError if no fixed point exists.
PdPolicy solve_fdt_pd_policy(const PdConfig& config, const Shares& shares);

// Expected single-game payoff per type against a random member of the
// population, indexed by AgentType.
std::array<double, kTypeCount> pd_expected_utilities(const PdConfig& config, const Shares& shares,
                                                     const PdPolicy& policy);

Signal sample_signal(AgentType true_type, double accuracy, RandomStream& rng);

Move move_for(AgentType type, const PdPolicy& policy, Signal signal);

// Payoffs when player 1 observed `signal1` about player 2 and vice versa.
std::pair<double, double> pd_payoffs(const PdConfig& config, const PdPolicy& policy,
                                     AgentType type1, AgentType type2, Signal signal1,
                                     Signal signal2);

// One game. Both players draw a signal about the other (player 1 first);
// only FDT players act on it.
std::pair<double, double> pd_play_round(AgentType type1, AgentType type2, const PdPolicy& policy,
                                        const PdConfig& config, RandomStream& rng);

}  // namespace fdtsim::pd

#endif  // FDTSIM_PD_HPP_
