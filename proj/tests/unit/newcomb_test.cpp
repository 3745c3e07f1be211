#include "fdtsim/newcomb.hpp"

#include <gtest/gtest.h>

namespace fdtsim::newcomb {
namespace {

TEST(Newcomb, Decisions) {
  EXPECT_EQ(newcomb_decision(AgentType::kFdt, {}), Choice::kOneBox);
  EXPECT_EQ(newcomb_decision(AgentType::kCdt, {}), Choice::kTwoBox);
  EXPECT_EQ(newcomb_decision(AgentType::kFdt, {10000, 1000, 0.5}), Choice::kTwoBox);
  EXPECT_EQ(newcomb_decision(AgentType::kCdt, {1e6, 1, 1.0}), Choice::kTwoBox);
}

TEST(Newcomb, ExpectedUtilities) {
  EXPECT_NEAR(expected_utility(Choice::kOneBox, {}), 9910.0, 1e-9);
  EXPECT_NEAR(expected_utility(Choice::kTwoBox, {}), 1100.0, 1e-9);
}

TEST(Newcomb, Payoffs) {
  const NewcombConfig c;
  EXPECT_EQ(payoff(Choice::kOneBox, true, c), 10000.0);
  EXPECT_EQ(payoff(Choice::kOneBox, false, c), 1000.0);
  EXPECT_EQ(payoff(Choice::kTwoBox, true, c), 1000.0);
  EXPECT_EQ(payoff(Choice::kTwoBox, false, c), 11000.0);
}

TEST(Newcomb, PerfectPredictor) {
  RandomStream rng(5);
  const NewcombConfig c{10000, 1000, 1.0};
  for (int i = 0; i < 1000; ++i) {
    EXPECT_EQ(newcomb_play_round(AgentType::kFdt, c, rng), 10000.0);
    EXPECT_EQ(newcomb_play_round(AgentType::kCdt, c, rng), 1000.0);
  }
}

TEST(Newcomb, MonotoneInHighAndAccuracy) {
  for (double p = 0.5; p <= 1.0; p += 0.01) {
    for (double high = 1100; high < 50000; high *= 1.3) {
      const NewcombConfig base{high, 1000, p};
      if (newcomb_decision(AgentType::kFdt, base) != Choice::kOneBox) continue;
      EXPECT_EQ(newcomb_decision(AgentType::kFdt, {high * 1.5, 1000, p}), Choice::kOneBox);
      EXPECT_EQ(newcomb_decision(AgentType::kFdt, {high, 1000, std::min(1.0, p + 0.05)}),
                Choice::kOneBox);
    }
  }
}

TEST(Newcomb, Validation) {
  EXPECT_THROW(validate({1000, 1000, 0.9}), NewcombError);
  EXPECT_THROW(validate({1000, 0, 0.9}), NewcombError);
  EXPECT_THROW(validate({1000, 10, 1.5}), NewcombError);
}

}  // namespace
}  // namespace fdtsim::newcomb
