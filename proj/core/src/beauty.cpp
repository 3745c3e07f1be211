#include "fdtsim/beauty.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <fmt/format.h>

namespace fdtsim::beauty {

std::string_view to_string(AgentType type) {
  switch (type) {
    case AgentType::kRandom: return "random";
    case AgentType::kCdt: return "cdt";
    case AgentType::kFdt: return "fdt";
  }
  return "?";
}

void validate(const BeautyConfig& c) {
  if (!(c.fraction > 0.0 && c.fraction < 1.0)) {
    throw BeautyError(fmt::format("fraction {} is not in (0, 1)", c.fraction));
  }
  if (!(c.guess_min < c.guess_max)) {
    throw BeautyError(fmt::format("empty guess range [{}, {}]", c.guess_min, c.guess_max));
  }
  if (!(c.cap > 0.0)) throw BeautyError(fmt::format("utility cap {} is not positive", c.cap));
}

Guesses beauty_guesses(const Shares& shares, const BeautyConfig& config) {
  const double f = config.fraction;
  const double m = 0.5 * (config.guess_min + config.guess_max);
  const auto [r_random, r_cdt, r_fdt] = shares;

  Guesses g;
  if (r_random + r_fdt > 0.0) {
    // CDT = c0 + a FDT; substitute into the FDT equation.
    const double a = f * r_fdt / (r_random + r_fdt);
    const double c0 = f * r_random * m / (r_random + r_fdt);
    g.fdt = f * (r_random * m + r_cdt * c0) / (1.0 - f * r_fdt - f * r_cdt * a);
    g.cdt = c0 + a * g.fdt;
  } else {
    g.cdt = 0.0;
    g.fdt = f * (r_random * m + r_cdt * g.cdt) / (1.0 - f * r_fdt);
  }
  g.cdt = std::clamp(g.cdt, config.guess_min, config.guess_max);
  g.fdt = std::clamp(g.fdt, config.guess_min, config.guess_max);
  return g;
}

double utility(double target, double guess, const BeautyConfig& config) {
  const double miss = std::abs(target - guess);
  if (miss * config.cap <= 1.0) return config.cap;
  return 1.0 / miss;
}

ExpectedRound expected_round(const Shares& shares, const BeautyConfig& config) {
  ExpectedRound r;
  r.guesses = beauty_guesses(shares, config);
  const double m = 0.5 * (config.guess_min + config.guess_max);
  r.average = shares[0] * m + shares[1] * r.guesses.cdt + shares[2] * r.guesses.fdt;
  r.target = config.fraction * r.average;
  return r;
}

void beauty_play_round(std::span<const AgentType> types, const Guesses& guesses,
                       const BeautyConfig& config, RandomStream& rng, std::span<double> utilities) {
  const std::size_t n = types.size();
  std::vector<double> guess(n);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    switch (types[i]) {
      case AgentType::kRandom: guess[i] = rng.uniform(config.guess_min, config.guess_max); break;
      case AgentType::kCdt: guess[i] = guesses.cdt; break;
      case AgentType::kFdt: guess[i] = guesses.fdt; break;
    }
    total += guess[i];
  }
  if (n == 0) return;
  const double target = config.fraction * total / static_cast<double>(n);
  const double u_cdt = utility(target, guesses.cdt, config);
  const double u_fdt = utility(target, guesses.fdt, config);
  for (std::size_t i = 0; i < n; ++i) {
    switch (types[i]) {
      case AgentType::kRandom: utilities[i] = utility(target, guess[i], config); break;
      case AgentType::kCdt: utilities[i] = u_cdt; break;
      case AgentType::kFdt: utilities[i] = u_fdt; break;
    }
  }
}

}  // namespace fdtsim::beauty
