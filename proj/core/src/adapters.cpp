#include "fdtsim/adapters.hpp"

#include <vector>

namespace fdtsim {
namespace {

template <std::size_t N>
std::array<double, N> to_array(std::span<const double> shares) {
  if (shares.size() != N) throw evolve::EvolveError("share vector has the wrong length");
  std::array<double, N> out{};
  std::copy(shares.begin(), shares.end(), out.begin());
  return out;
}

}  // namespace

PdAdapter::PdAdapter(pd::PdConfig config)
    : config_(config),
      names_{std::string(pd::to_string(pd::AgentType::kDefector)),
             std::string(pd::to_string(pd::AgentType::kCooperator)),
             std::string(pd::to_string(pd::AgentType::kFdt))} {
  pd::validate(config_);
}

void PdAdapter::prepare(std::span<const double> shares) {
  policy_ = pd::solve_fdt_pd_policy(config_, to_array<pd::kTypeCount>(shares));
}

std::pair<double, double> PdAdapter::play_pair(evolve::TypeIndex a, evolve::TypeIndex b,
                                               RandomStream& rng) const {
  return pd::pd_play_round(static_cast<pd::AgentType>(a), static_cast<pd::AgentType>(b), policy_,
                           config_, rng);
}

NewcombAdapter::NewcombAdapter(newcomb::NewcombConfig config)
    : config_(config),
      names_{std::string(newcomb::to_string(newcomb::AgentType::kCdt)),
             std::string(newcomb::to_string(newcomb::AgentType::kFdt))} {
  newcomb::validate(config_);
}

double NewcombAdapter::play_solo(evolve::TypeIndex type, RandomStream& rng) const {
  return newcomb::newcomb_play_round(static_cast<newcomb::AgentType>(type), config_, rng);
}

BeautyAdapter::BeautyAdapter(beauty::BeautyConfig config)
    : config_(config),
      names_{std::string(beauty::to_string(beauty::AgentType::kRandom)),
             std::string(beauty::to_string(beauty::AgentType::kCdt)),
             std::string(beauty::to_string(beauty::AgentType::kFdt))} {
  beauty::validate(config_);
}

void BeautyAdapter::prepare(std::span<const double> shares) {
  guesses_ = beauty::beauty_guesses(to_array<beauty::kTypeCount>(shares), config_);
}

void BeautyAdapter::play_population(std::span<const evolve::TypeIndex> types, RandomStream& rng,
                                    std::span<double> payoffs) const {
  std::vector<beauty::AgentType> as_agents(types.size());
  for (std::size_t i = 0; i < types.size(); ++i) {
    as_agents[i] = static_cast<beauty::AgentType>(types[i]);
  }
  beauty::beauty_play_round(as_agents, guesses_, config_, rng, payoffs);
}

}  // namespace fdtsim
