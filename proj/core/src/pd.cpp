#include "fdtsim/pd.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "fdtsim/beliefs.hpp"

namespace fdtsim::pd {
namespace {

constexpr double kTolerance = 1e-12;

beliefs::SignalModel signal_model(const PdConfig& config) {
  return {config.accuracy, kTypeCount};
}

double likelihood(Signal signal, AgentType type, const PdConfig& config) {
  return beliefs::signal_probability(signal, static_cast<std::size_t>(type), signal_model(config));
}

Move other(Move m) { return m == Move::kCooperate ? Move::kDefect : Move::kCooperate; }

bool close_or_greater(double a, double b) {
  return a >= b - kTolerance * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

std::string_view to_string(AgentType type) {
  switch (type) {
    case AgentType::kDefector: return "defector";
    case AgentType::kCooperator: return "cooperator";
    case AgentType::kFdt: return "fdt";
  }
  return "?";
}

char to_char(Move move) { return move == Move::kCooperate ? 'C' : 'D'; }

void validate(const PdConfig& c) {
  if (!(c.dc > c.cc && c.cc > c.dd && c.dd > c.cd && c.cd > 0.0)) {
    throw PdError(fmt::format(
        "payoffs must satisfy DC > CC > DD > CD > 0 (got DC={}, CC={}, DD={}, CD={})", c.dc, c.cc,
        c.dd, c.cd));
  }
  if (!(c.accuracy >= 0.0 && c.accuracy <= 1.0)) {
    throw PdError(fmt::format("signal accuracy {} is not in [0, 1]", c.accuracy));
  }
}

double payoff(const PdConfig& c, Move mine, Move theirs) {
  const std::array<double, 4> table = {c.cc, c.cd, c.dc, c.dd};
  return table[2 * static_cast<std::size_t>(mine) + static_cast<std::size_t>(theirs)];
}

void validate_shares(const Shares& shares) {
  double total = 0.0;
  for (double s : shares) {
    if (!(s >= 0.0)) throw PdError(fmt::format("negative share {}", s));
    total += s;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw PdError(fmt::format("shares sum to {}, not 1", total));
  }
}

ComponentTerms component_terms(const PdConfig& config, const Shares& shares, Signal signal,
                               Move move) {
  ComponentTerms terms;
  const auto model = signal_model(config);
  double evidence = 0.0;
  for (std::size_t t = 0; t < kTypeCount; ++t) {
    evidence += shares[t] * beliefs::signal_probability(signal, t, model);
  }
  if (!(evidence > 0.0)) return terms;
  const auto post = beliefs::posterior(shares, signal, model);

  terms.constant += post[0] * payoff(config, move, Move::kDefect);
  terms.constant += post[1] * payoff(config, move, Move::kCooperate);
  for (Signal s = 0; s < kTypeCount; ++s) {
    const double w = post[2] * likelihood(s, AgentType::kFdt, config);
    if (s == signal) {
      terms.constant += w * payoff(config, move, move);
    } else {
      terms.coefficient[s] = w;
    }
  }
  return terms;
}

double component_eu(const PdConfig& config, const Shares& shares, const PdPolicy& policy,
                    Signal signal, Move move) {
  const auto terms = component_terms(config, shares, signal, move);
  double eu = terms.constant;
  for (Signal s = 0; s < kTypeCount; ++s) {
    if (s != signal) eu += terms.coefficient[s] * payoff(config, move, policy[s]);
  }
  return eu;
}

bool is_self_consistent(const PdConfig& config, const Shares& shares, const PdPolicy& policy) {
  for (Signal s = 0; s < kTypeCount; ++s) {
    const double chosen = component_eu(config, shares, policy, s, policy[s]);
    const double alternative = component_eu(config, shares, policy, s, other(policy[s]));
    if (!close_or_greater(chosen, alternative)) return false;
  }
  return true;
}

std::array<PdPolicy, 8> all_policies() {
  std::array<PdPolicy, 8> out{};
  for (unsigned mask = 0; mask < 8; ++mask) {
    for (Signal s = 0; s < kTypeCount; ++s) {
      const bool cooperate = (mask >> (kTypeCount - 1 - s)) & 1U;
      out[mask][s] = cooperate ? Move::kCooperate : Move::kDefect;
    }
  }
  return out;
}

std::vector<PdPolicy> fixed_points(const PdConfig& config, const Shares& shares) {
  std::vector<PdPolicy> out;
  for (const auto& policy : all_policies()) {
    if (is_self_consistent(config, shares, policy)) out.push_back(policy);
  }
  return out;
}

PdPolicy solve_fdt_pd_policy(const PdConfig& config, const Shares& shares) {
  validate(config);
  validate_shares(shares);
  const auto candidates = fixed_points(config, shares);
  if (candidates.empty()) {
    throw PdError(fmt::format(
        "no self-consistent policy for payoffs CC={} CD={} DC={} DD={}, accuracy {}, shares "
        "({}, {}, {})",
        config.cc, config.cd, config.dc, config.dd, config.accuracy, shares[0], shares[1],
        shares[2]));
  }
  const PdPolicy* best = nullptr;
  double best_value = 0.0;
  for (const auto& policy : candidates) {
    const double v = pd_expected_utilities(config, shares, policy)[2];
    if (best == nullptr || !close_or_greater(best_value, v)) {
      best = &policy;
      best_value = v;
    }
  }
  return *best;
}

std::array<double, kTypeCount> pd_expected_utilities(const PdConfig& config, const Shares& shares,
                                                     const PdPolicy& policy) {
  const auto u = [&](Move a, Move b) { return payoff(config, a, b); };
  const auto l = [&](Signal s, AgentType t) { return likelihood(s, t, config); };
  constexpr Move C = Move::kCooperate;
  constexpr Move D = Move::kDefect;

  // What an FDT opponent plays against an agent of type t, in expectation.
  const auto fdt_against = [&](AgentType t, Move mine) {
    double e = 0.0;
    for (Signal s = 0; s < kTypeCount; ++s) e += l(s, t) * u(mine, policy[s]);
    return e;
  };

  const double defector = shares[0] * u(D, D) + shares[1] * u(D, C) +
                          shares[2] * fdt_against(AgentType::kDefector, D);
  const double cooperator = shares[0] * u(C, D) + shares[1] * u(C, C) +
                            shares[2] * fdt_against(AgentType::kCooperator, C);

  double fdt = 0.0;
  for (Signal s = 0; s < kTypeCount; ++s) {
    fdt += shares[0] * l(s, AgentType::kDefector) * u(policy[s], D);
    fdt += shares[1] * l(s, AgentType::kCooperator) * u(policy[s], C);
    double vs_fdt = 0.0;
    for (Signal r = 0; r < kTypeCount; ++r) {
      vs_fdt += l(r, AgentType::kFdt) * u(policy[s], policy[r]);
    }
    fdt += shares[2] * l(s, AgentType::kFdt) * vs_fdt;
  }
  return {defector, cooperator, fdt};
}

Signal sample_signal(AgentType true_type, double accuracy, RandomStream& rng) {
  // One draw: the top 53 bits decide correctness, the lowest bit picks which
  // wrong type is named.
  const std::uint64_t x = rng();
  const double u = static_cast<double>(x >> 11) * 0x1.0p-53;
  const Signal wrong = u < accuracy ? 0 : 1 + (x & 1U);
  return (static_cast<Signal>(true_type) + wrong) % kTypeCount;
}

Move move_for(AgentType type, const PdPolicy& policy, Signal signal) {
  const std::array<Move, kTypeCount> by_type = {Move::kDefect, Move::kCooperate, policy[signal]};
  return by_type[static_cast<std::size_t>(type)];
}

std::pair<double, double> pd_payoffs(const PdConfig& config, const PdPolicy& policy,
                                     AgentType type1, AgentType type2, Signal signal1,
                                     Signal signal2) {
  const Move m1 = move_for(type1, policy, signal1);
  const Move m2 = move_for(type2, policy, signal2);
  return {payoff(config, m1, m2), payoff(config, m2, m1)};
}

std::pair<double, double> pd_play_round(AgentType type1, AgentType type2, const PdPolicy& policy,
                                        const PdConfig& config, RandomStream& rng) {
  const Signal s1 = sample_signal(type2, config.accuracy, rng);
  const Signal s2 = sample_signal(type1, config.accuracy, rng);
  return pd_payoffs(config, policy, type1, type2, s1, s2);
}

}  // namespace fdtsim::pd
