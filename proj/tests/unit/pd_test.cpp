#include "fdtsim/pd.hpp"

#include <gtest/gtest.h>

#include "oracles.hpp"

namespace fdtsim::pd {
namespace {

constexpr Move C = Move::kCooperate;
constexpr Move D = Move::kDefect;
const Shares kThirds = {1.0 / 3, 1.0 / 3, 1.0 / 3};

oracle::Policy to_oracle(const PdPolicy& p) {
  return {p[0] == C ? 0 : 1, p[1] == C ? 0 : 1, p[2] == C ? 0 : 1};
}

TEST(PdPolicy, BaselineCooperatesOnlyOnFdtSignal) {
  EXPECT_EQ(solve_fdt_pd_policy({}, kThirds), (PdPolicy{D, D, C}));
}

TEST(PdPolicy, WeakSignalDefects) {
  PdConfig c;
  c.accuracy = 0.6;
  EXPECT_EQ(solve_fdt_pd_policy(c, kThirds), (PdPolicy{D, D, D}));
  c.accuracy = 1.0 / 3.0;
  for (const Shares& s : {kThirds, Shares{0.2, 0.5, 0.3}, Shares{0.0, 0.0, 1.0}}) {
    EXPECT_EQ(solve_fdt_pd_policy(c, s), (PdPolicy{D, D, D}));
  }
}

TEST(PdPolicy, ComponentTermsAtBaseline) {
  const auto c = component_terms({}, kThirds, 2, C);
  const auto d = component_terms({}, kThirds, 2, D);
  EXPECT_NEAR(c.constant, 6.07, 1e-9);
  EXPECT_NEAR(d.constant, 3.94, 1e-9);
  for (Signal s : {0, 1}) {
    EXPECT_NEAR(c.coefficient[s], 0.045, 1e-9);
    EXPECT_NEAR(d.coefficient[s], 0.045, 1e-9);
  }
  EXPECT_EQ(c.coefficient[2], 0.0);
}

TEST(PdPolicy, ComponentEuMatchesOracle) {
  const auto u = oracle::pd_payoffs(7, 1, 10, 4);
  for (const auto& policy : all_policies()) {
    for (Signal s = 0; s < 3; ++s) {
      for (Move m : {C, D}) {
        EXPECT_NEAR(component_eu({}, Shares{0.5, 0.2, 0.3}, policy, s, m),
                    oracle::pd_component_eu(u, 0.9, {0.5, 0.2, 0.3}, to_oracle(policy),
                                            static_cast<int>(s), m == C ? 0 : 1),
                    1e-12);
      }
    }
  }
}

TEST(PdPolicy, TypeUtilitiesAtBaseline) {
  const auto eu = pd_expected_utilities({}, kThirds, {D, D, C});
  EXPECT_NEAR(eu[2], 6.8, 1e-12);
  EXPECT_NEAR(eu[0], 6.1, 1e-12);
  EXPECT_NEAR(eu[1], 3.1, 1e-12);
}

TEST(PdPolicy, TypeUtilitiesMatchOracle) {
  const auto u = oracle::pd_payoffs(7, 1, 10, 4);
  const Shares shares = {0.1, 0.6, 0.3};
  for (const auto& policy : all_policies()) {
    const auto mine = pd_expected_utilities({7, 1, 10, 4, 0.75}, shares, policy);
    const auto ref = oracle::pd_type_eus(u, 0.75, {0.1, 0.6, 0.3}, to_oracle(policy));
    for (int t = 0; t < 3; ++t) EXPECT_NEAR(mine[t], ref[t], 1e-12);
  }
}

TEST(PdPolicy, AllDefectMakesFdtADefector) {
  for (const Shares& s : {kThirds, Shares{0.7, 0.1, 0.2}}) {
    const auto eu = pd_expected_utilities({}, s, {D, D, D});
    EXPECT_DOUBLE_EQ(eu[2], eu[0]);
  }
}

TEST(PdPolicy, SolverAgreesWithOracleOnAGrid) {
  for (double p : {0.4, 0.55, 0.65, 0.7, 0.72, 0.8, 0.95, 1.0}) {
    for (double f = 0.05; f < 1.0; f += 0.15) {
      for (double d = 0.0; d <= 1.0 - f + 1e-12; d += 0.2) {
        const Shares s = {d, 1.0 - f - d < 0 ? 0.0 : 1.0 - f - d, f};
        PdConfig c;
        c.accuracy = p;
        const auto policy = solve_fdt_pd_policy(c, s);
        EXPECT_TRUE(is_self_consistent(c, s, policy));
        EXPECT_EQ(to_oracle(policy),
                  oracle::pd_best_fixed_point(oracle::pd_payoffs(7, 1, 10, 4), p, {s[0], s[1], s[2]}))
            << "p=" << p << " shares " << s[0] << "," << s[1] << "," << s[2];
      }
    }
  }
}

TEST(PdPolicy, RejectsInvalidConfig) {
  EXPECT_THROW(solve_fdt_pd_policy({7, 1, 10, 8, 0.9}, kThirds), PdError);
  EXPECT_THROW(solve_fdt_pd_policy({7, 0, 10, 4, 0.9}, kThirds), PdError);
  EXPECT_THROW(solve_fdt_pd_policy({}, Shares{0.5, 0.5, 0.5}), PdError);
}

TEST(PdRound, FixedTypes) {
  RandomStream rng(1);
  EXPECT_EQ(pd_play_round(AgentType::kDefector, AgentType::kCooperator, {C, C, C}, {}, rng),
            std::make_pair(10.0, 1.0));
  EXPECT_EQ(pd_payoffs({}, {D, D, C}, AgentType::kFdt, AgentType::kFdt, 2, 2),
            std::make_pair(7.0, 7.0));
  // FDT misreads a defector as FDT and cooperates.
  EXPECT_EQ(pd_payoffs({}, {D, D, C}, AgentType::kFdt, AgentType::kDefector, 2, 0),
            std::make_pair(1.0, 10.0));
}

TEST(PdRound, SignalFrequencies) {
  RandomStream rng(99);
  std::array<int, 3> counts{};
  const int n = 300000;
  for (int i = 0; i < n; ++i) ++counts[sample_signal(AgentType::kCooperator, 0.9, rng)];
  EXPECT_NEAR(counts[1] / double(n), 0.9, 0.003);
  EXPECT_NEAR(counts[0] / double(n), 0.05, 0.002);
  EXPECT_NEAR(counts[2] / double(n), 0.05, 0.002);
}

}  // namespace
}  // namespace fdtsim::pd
