#ifndef FDTSIM_BEAUTY_HPP_
#define FDTSIM_BEAUTY_HPP_

// Keynesian beauty contest: everyone guesses a number, the target is
// `fraction` times the average guess, and utility is the reciprocal of the
// miss, capped. Random agents guess uniformly. CDT agents best-respond to
// everyone else's guesses treating their own as fixed; FDT agents know every
// FDT agent outputs the same number and solve for it jointly.

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string_view>

#include "fdtsim/random.hpp"

namespace fdtsim::beauty {

enum class AgentType : std::uint8_t { kRandom = 0, kCdt = 1, kFdt = 2 };
inline constexpr std::size_t kTypeCount = 3;

std::string_view to_string(AgentType type);

using Shares = std::array<double, kTypeCount>;

struct BeautyConfig {
  double fraction = 2.0 / 3.0;
  double guess_min = 0.0;
  double guess_max = 100.0;
  double cap = 1000.0;

  bool operator==(const BeautyConfig&) const = default;
};

class BeautyError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Throws BeautyError unless 0 < fraction < 1, guess_min < guess_max and cap > 0.
void validate(const BeautyConfig& config);

struct Guesses {
  double cdt = 0.0;
  double fdt = 0.0;
};

// Solves
//   CDT = f (rR m + rF FDT) / (rR + rF)
//   FDT = f (rR m + rC CDT + rF FDT)
// with m the mean random guess, then clamps to the guess range. CDT's guess
// is 0 when rR + rF = 0.
Guesses beauty_guesses(const Shares& shares, const BeautyConfig& config);

// min(cap, 1 / |target - guess|).
double utility(double target, double guess, const BeautyConfig& config);

struct ExpectedRound {
  Guesses guesses;
  double average = 0.0;
  double target = 0.0;
};
ExpectedRound expected_round(const Shares& shares, const BeautyConfig& config);

// One whole-population round. Random agents draw their guesses in index
// order; everyone else guesses from `guesses`. Writes each agent's utility.
void beauty_play_round(std::span<const AgentType> types, const Guesses& guesses,
                       const BeautyConfig& config, RandomStream& rng, std::span<double> utilities);

}  // namespace fdtsim::beauty

#endif  // FDTSIM_BEAUTY_HPP_
