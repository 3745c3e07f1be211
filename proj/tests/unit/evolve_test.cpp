#include "fdtsim/evolve.hpp"

#include <gtest/gtest.h>

#include "fdtsim/adapters.hpp"

namespace fdtsim::evolve {
namespace {

EvolveConfig small_config() {
  EvolveConfig c;
  c.population = 200;
  c.generations = 5;
  c.rounds = 10;
  c.birth_rate = 0.05;
  c.mutation_rate = 0.01;
  c.seed = 7;
  return c;
}

TEST(Apportion, LargestRemainder) {
  EXPECT_EQ(apportion(10000, std::vector<double>{1.0 / 3, 1.0 / 3, 1.0 / 3}),
            (std::vector<std::size_t>{3334, 3333, 3333}));
  EXPECT_EQ(apportion(10, std::vector<double>{0.15, 0.15, 0.7}),
            (std::vector<std::size_t>{2, 1, 7}));
  EXPECT_EQ(apportion(3000, std::vector<double>{0.5, 0.5}), (std::vector<std::size_t>{1500, 1500}));
  EXPECT_THROW(apportion(10, std::vector<double>{0.5, 0.6}), EvolveError);
}

TEST(RunGeneration, PdPairScores) {
  PdAdapter adapter({});
  auto pop = Population::from_counts(std::vector<std::size_t>{1, 1, 0});
  EvolveConfig c = small_config();
  c.population = 2;
  c.rounds = 1;
  run_generation(pop, adapter, c, 1);
  EXPECT_EQ(pop.agents()[0].score, 10.0);
  EXPECT_EQ(pop.agents()[1].score, 1.0);
}

TEST(RunGeneration, OddPopulationSitsOneOut) {
  PdAdapter adapter({});
  auto pop = Population::from_counts(std::vector<std::size_t>{3, 0, 0});
  EvolveConfig c = small_config();
  c.population = 3;
  c.rounds = 1;
  run_generation(pop, adapter, c, 1);
  int zeros = 0;
  for (const auto& a : pop.agents()) {
    if (a.score == 0.0) ++zeros;
    else EXPECT_EQ(a.score, 4.0);
  }
  EXPECT_EQ(zeros, 1);
}

TEST(RunGeneration, NewcombPerfectPredictor) {
  NewcombAdapter adapter({10000, 1000, 1.0});
  auto pop = Population::from_counts(std::vector<std::size_t>{5, 5});
  EvolveConfig c = small_config();
  c.population = 10;
  c.rounds = 100;
  run_generation(pop, adapter, c, 1);
  for (const auto& a : pop.agents()) {
    EXPECT_EQ(a.score, a.type == 1 ? 1000000.0 : 100000.0);
  }
}

TEST(RunGeneration, BeautyAllRandomInBounds) {
  BeautyAdapter adapter({});
  auto pop = Population::from_counts(std::vector<std::size_t>{3, 0, 0});
  EvolveConfig c = small_config();
  c.population = 3;
  c.rounds = 1;
  run_generation(pop, adapter, c, 1);
  for (const auto& a : pop.agents()) {
    EXPECT_GE(a.score, 0.01);
    EXPECT_LE(a.score, 1000.0);
  }
}

TEST(Repopulate, ZeroRatesOnlyResetScores) {
  auto pop = Population::from_counts(std::vector<std::size_t>{3, 4, 5});
  for (auto& a : pop.agents()) a.score = 2.0;
  const auto before = pop.types();
  EvolveConfig c = small_config();
  c.population = 12;
  c.birth_rate = 0.0;
  c.mutation_rate = 0.0;
  repopulate(pop, c, 1);
  EXPECT_EQ(pop.types(), before);
  for (const auto& a : pop.agents()) EXPECT_EQ(a.score, 0.0);
}

TEST(Repopulate, ExactBirthCount) {
  // Distinct scores per type let us count replacements: type 0 agents can
  // only be replaced by type 1 parents when type 1 holds all the score mass.
  auto pop = Population::from_counts(std::vector<std::size_t>{5000, 5000});
  for (auto& a : pop.agents()) a.score = a.type == 0 ? 1e-12 : 1.0;
  EvolveConfig c = small_config();
  c.population = 10000;
  c.birth_rate = 0.01;
  c.mutation_rate = 0.0;
  EXPECT_EQ(birth_count(c), 100U);
  repopulate(pop, c, 1);
  EXPECT_EQ(pop.counts(), (std::vector<std::size_t>{4900, 5100}));
}

TEST(Repopulate, WeightsFollowScores) {
  // Two agents with scores 100 and 1: the first is the parent 100:1 and the
  // victim 1:100.
  EvolveConfig c = small_config();
  c.population = 2;
  c.birth_rate = 0.5;
  c.mutation_rate = 0.0;
  int first_parent = 0;
  int first_victim = 0;
  const int trials = 20000;
  for (int t = 0; t < trials; ++t) {
    auto pop = Population::from_counts(std::vector<std::size_t>{1, 1});
    pop.agents()[0].score = 100.0;
    pop.agents()[1].score = 1.0;
    c.seed = static_cast<std::uint64_t>(t);
    repopulate(pop, c, 1);
    const auto types = pop.types();
    if (types == std::vector<TypeIndex>{0, 0}) ++first_parent;
    if (types == std::vector<TypeIndex>{1, 1}) ++first_victim;
  }
  // P(first is parent and second is victim) = 100/101 * 100/101.
  EXPECT_NEAR(first_parent / double(trials), (100.0 / 101) * (100.0 / 101), 0.01);
  EXPECT_NEAR(first_victim / double(trials), (1.0 / 101) * (1.0 / 101), 0.003);
}

TEST(Repopulate, ZeroScoresDieFirstUnderInverseWeighting) {
  EvolveConfig c = small_config();
  c.population = 6;
  c.birth_rate = 2.0 / 6.0;
  c.mutation_rate = 0.0;
  for (std::uint64_t g = 0; g < 200; ++g) {
    auto pop = Population::from_counts(std::vector<std::size_t>{2, 4});
    for (auto& a : pop.agents()) a.score = a.type == 0 ? 0.0 : 5.0;
    repopulate(pop, c, g);
    EXPECT_EQ(pop.counts(), (std::vector<std::size_t>{0, 6}));
  }
}

TEST(Repopulate, AllZeroScoresThrow) {
  auto pop = Population::from_counts(std::vector<std::size_t>{2, 2});
  EvolveConfig c = small_config();
  c.population = 4;
  c.birth_rate = 0.5;
  EXPECT_THROW(repopulate(pop, c, 0), EvolveError);
}

TEST(Repopulate, NegativeScoreNamesAgent) {
  auto pop = Population::from_counts(std::vector<std::size_t>{2, 2});
  for (auto& a : pop.agents()) a.score = 1.0;
  pop.agents()[2].score = -1.0;
  EvolveConfig c = small_config();
  c.population = 4;
  c.birth_rate = 0.5;
  try {
    repopulate(pop, c, 3);
    FAIL() << "expected EvolveError";
  } catch (const EvolveError& e) {
    EXPECT_NE(std::string(e.what()).find("agent 2"), std::string::npos) << e.what();
  }
}

TEST(RunExperiment, SizeConservedAndSharesSumToOne) {
  PdAdapter adapter({});
  const auto traj = run_experiment(small_config(), adapter);
  ASSERT_EQ(traj.records.size(), 5U);
  for (const auto& r : traj.records) {
    std::size_t total = 0;
    double share = 0.0;
    for (std::size_t t = 0; t < 3; ++t) {
      total += r.counts[t];
      share += r.shares[t];
    }
    EXPECT_EQ(total, 200U);
    EXPECT_NEAR(share, 1.0, 1e-12);
  }
}

TEST(RunExperiment, NoBirthNoMutationKeepsCounts) {
  PdAdapter adapter({});
  auto c = small_config();
  c.birth_rate = 0.0;
  c.mutation_rate = 0.0;
  c.initial_shares = {0.2, 0.3, 0.5};
  const auto traj = run_experiment(c, adapter);
  for (const auto& r : traj.records) EXPECT_EQ(r.counts, traj.initial_counts);
}

TEST(RunExperiment, DeterministicAcrossThreadCounts) {
  for (int game = 0; game < 3; ++game) {
    auto make = [&]() -> std::unique_ptr<GameAdapter> {
      if (game == 0) return std::make_unique<PdAdapter>(pd::PdConfig{});
      if (game == 1) return std::make_unique<NewcombAdapter>(newcomb::NewcombConfig{});
      return std::make_unique<BeautyAdapter>(beauty::BeautyConfig{});
    };
    auto c = small_config();
    c.threads = 1;
    auto a1 = make();
    const auto t1 = run_experiment(c, *a1);
    c.threads = 4;
    auto a4 = make();
    const auto t4 = run_experiment(c, *a4);
    ASSERT_EQ(t1.records.size(), t4.records.size());
    for (std::size_t i = 0; i < t1.records.size(); ++i) {
      EXPECT_EQ(t1.records[i].counts, t4.records[i].counts);
      EXPECT_EQ(t1.records[i].mean_scores, t4.records[i].mean_scores);
    }
  }
}

TEST(RunExperiment, SeedMatters) {
  PdAdapter a({});
  auto c = small_config();
  const auto t1 = run_experiment(c, a);
  c.seed = 8;
  const auto t2 = run_experiment(c, a);
  EXPECT_NE(t1.records.back().mean_scores, t2.records.back().mean_scores);
}

TEST(Validate, RejectsBadRates) {
  auto c = small_config();
  c.birth_rate = 1.5;
  EXPECT_THROW(validate(c, 3), EvolveError);
  c = small_config();
  c.population = 10;
  c.birth_rate = 0.001;
  EXPECT_THROW(validate(c, 3), EvolveError);
  c = small_config();
  c.initial_shares = {0.5, 0.5};
  EXPECT_THROW(validate(c, 3), EvolveError);
}

}  // namespace
}  // namespace fdtsim::evolve
