#ifndef FDTSIM_ADAPTERS_HPP_
#define FDTSIM_ADAPTERS_HPP_

#include <array>
#include <memory>
#include <string>

#include "fdtsim/beauty.hpp"
#include "fdtsim/evolve.hpp"
#include "fdtsim/newcomb.hpp"
#include "fdtsim/pd.hpp"

namespace fdtsim {

// Signal PD. The FDT policy is re-solved from the shares at every prepare().
class PdAdapter final : public evolve::GameAdapter {
 public:
  explicit PdAdapter(pd::PdConfig config);

  std::string_view game_id() const override { return "pd"; }
  std::span<const std::string> type_names() const override { return names_; }
  Interaction interaction() const override { return Interaction::kPairwise; }
  void prepare(std::span<const double> shares) override;
  std::pair<double, double> play_pair(evolve::TypeIndex a, evolve::TypeIndex b,
                                      RandomStream& rng) const override;

  const pd::PdConfig& config() const { return config_; }
  const pd::PdPolicy& policy() const { return policy_; }

 private:
  pd::PdConfig config_;
  pd::PdPolicy policy_{};
  std::array<std::string, pd::kTypeCount> names_;
};

class NewcombAdapter final : public evolve::GameAdapter {
 public:
  explicit NewcombAdapter(newcomb::NewcombConfig config);

  std::string_view game_id() const override { return "newcomb"; }
  std::span<const std::string> type_names() const override { return names_; }
  Interaction interaction() const override { return Interaction::kSolo; }
  void prepare(std::span<const double>) override {}
  double play_solo(evolve::TypeIndex type, RandomStream& rng) const override;

 private:
  newcomb::NewcombConfig config_;
  std::array<std::string, newcomb::kTypeCount> names_;
};

// Beauty contest. Guesses are re-solved from the shares at every prepare().
class BeautyAdapter final : public evolve::GameAdapter {
 public:
  explicit BeautyAdapter(beauty::BeautyConfig config);

  std::string_view game_id() const override { return "beauty"; }
  std::span<const std::string> type_names() const override { return names_; }
  Interaction interaction() const override { return Interaction::kPopulation; }
  void prepare(std::span<const double> shares) override;
  void play_population(std::span<const evolve::TypeIndex> types, RandomStream& rng,
                       std::span<double> payoffs) const override;

  const beauty::Guesses& guesses() const { return guesses_; }

 private:
  beauty::BeautyConfig config_;
  beauty::Guesses guesses_;
  std::array<std::string, beauty::kTypeCount> names_;
};

}  // namespace fdtsim

#endif  // FDTSIM_ADAPTERS_HPP_
