#include "fdtsim/experiment.hpp"

#include <sstream>

#include <gtest/gtest.h>

#include "fdtsim/presets.hpp"

namespace fdtsim {
namespace {

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

TEST(Config, DefaultsFromEmptyDocument) {
  const auto c = parse_config("{}");
  EXPECT_EQ(c.game, GameId::kPd);
  EXPECT_EQ(c.evolve.population, 10000U);
  EXPECT_EQ(c.evolve.generations, 750U);
  EXPECT_EQ(c.evolve.rounds, 100U);
  EXPECT_EQ(c.evolve.birth_rate, 0.01);
  EXPECT_EQ(c.evolve.mutation_rate, 0.001);
  EXPECT_EQ(c.pd, pd::PdConfig{});
  EXPECT_EQ(c.evolve.initial_shares.size(), 3U);
}

TEST(Config, NewcombDefaults) {
  const auto c = parse_config(R"({"game": "newcomb"})");
  EXPECT_EQ(c.evolve.population, 3000U);
  EXPECT_EQ(c.evolve.generations, 100U);
  EXPECT_EQ(c.evolve.initial_shares, (std::vector<double>{0.5, 0.5}));
}

TEST(Config, ParsesEveryField) {
  const auto c = parse_config(R"({
    "game": "beauty", "seed": 12345678901234, "population": 50, "generations": 7,
    "rounds": 3, "birth_rate": 0.1, "mutation_rate": 0.02,
    "initial_shares": {"random": 0.1, "cdt": 0.8, "fdt": 0.1},
    "death_weighting": "max-minus-score", "snapshot_every": 2, "threads": 3,
    "output": "x.csv", "beauty": {"fraction": 0.5, "cap": 10}
  })");
  EXPECT_EQ(c.game, GameId::kBeauty);
  EXPECT_EQ(c.evolve.seed, 12345678901234ULL);
  EXPECT_EQ(c.evolve.initial_shares, (std::vector<double>{0.1, 0.8, 0.1}));
  EXPECT_EQ(c.evolve.death_weighting, evolve::DeathWeighting::kMaxMinusScore);
  EXPECT_EQ(c.snapshot_every, 2U);
  EXPECT_EQ(c.evolve.threads, 3U);
  EXPECT_EQ(c.output, "x.csv");
  EXPECT_EQ(c.beauty.fraction, 0.5);
  EXPECT_EQ(c.beauty.cap, 10.0);
}

TEST(Config, RoundTripIsIdentity) {
  for (auto name : preset_names()) {
    const auto c = *preset(name);
    const auto once = parse_config(serialize_config(c));
    EXPECT_EQ(once, c) << name;
    EXPECT_EQ(parse_config(serialize_config(once)), once) << name;
  }
  auto odd = default_config(GameId::kNewcomb);
  odd.newcomb = {123456.789, 0.1 + 0.2, 0.6180339887498949};
  odd.evolve.seed = ~0ULL;
  EXPECT_EQ(parse_config(serialize_config(odd)), odd);
}

TEST(Config, Rejections) {
  EXPECT_THROW(parse_config("{"), ConfigError);
  EXPECT_THROW(parse_config("[]"), ConfigError);
  EXPECT_THROW(parse_config(R"({"game": "chess"})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"populaton": 10})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"population": -1})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"population": "ten"})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"pd": {"cc": 20}})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"pd": {"typo": 1}})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"initial_shares": {"fdt": 0.5}})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"initial_shares": {"alien": 1.0}})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"snapshot_every": 0})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"death_weighting": "random"})"), ConfigError);
}

TEST(Presets, KnownNames) {
  for (auto name : preset_names()) EXPECT_TRUE(preset(name).has_value()) << name;
  EXPECT_FALSE(preset("nope").has_value());
  const auto inv = *preset("pd-invasion");
  EXPECT_EQ(inv.evolve.initial_shares, (std::vector<double>{0.9, 0.0, 0.1}));
  EXPECT_EQ(inv.evolve.generations, 1500U);
  EXPECT_EQ(preset("beauty-cdt-heavy")->evolve.initial_shares,
            (std::vector<double>{0.1, 0.8, 0.1}));
}

TEST(Csv, HeaderMetadataAndRowCount) {
  auto c = default_config(GameId::kPd);
  c.evolve.population = 40;
  c.evolve.generations = 10;
  c.evolve.rounds = 2;
  c.evolve.birth_rate = 0.05;
  c.snapshot_every = 3;
  std::ostringstream out;
  write_csv(out, c, run_experiment(c));
  const auto l = lines(out.str());
  ASSERT_GE(l.size(), 4U);
  EXPECT_EQ(l[0].rfind("# fdtsim ", 0), 0U);
  EXPECT_EQ(l[1], "# seed 1");
  EXPECT_EQ(l[2].rfind("# config {", 0), 0U);
  EXPECT_EQ(l[3],
            "generation,defector_count,defector_share,defector_mean_score,cooperator_count,"
            "cooperator_share,cooperator_mean_score,fdt_count,fdt_share,fdt_mean_score");
  // Rows at 3, 6, 9 and the final 10.
  ASSERT_EQ(l.size(), 4U + 4U);
  EXPECT_EQ(l[4].substr(0, 2), "3,");
  EXPECT_EQ(l[7].substr(0, 3), "10,");
}

TEST(Csv, MetadataOmitsRuntimeFields) {
  auto c = default_config(GameId::kNewcomb);
  c.evolve.generations = 2;
  c.evolve.population = 20;
  c.evolve.birth_rate = 0.05;
  c.output = "a.csv";
  c.evolve.threads = 1;
  std::ostringstream a;
  write_csv(a, c, run_experiment(c));
  c.output = "b.csv";
  c.evolve.threads = 3;
  std::ostringstream b;
  write_csv(b, c, run_experiment(c));
  EXPECT_EQ(a.str(), b.str());
}

TEST(Csv, RowCountIsCeilOfGenerationsOverInterval) {
  for (std::size_t g : {1, 5, 12}) {
    for (std::size_t s : {1, 2, 5, 20}) {
      auto c = default_config(GameId::kNewcomb);
      c.evolve.population = 10;
      c.evolve.rounds = 1;
      c.evolve.birth_rate = 0.1;
      c.evolve.generations = g;
      c.snapshot_every = s;
      std::ostringstream out;
      write_csv(out, c, run_experiment(c));
      EXPECT_EQ(lines(out.str()).size() - 4, (g + s - 1) / s) << g << "/" << s;
    }
  }
}

}  // namespace
}  // namespace fdtsim
