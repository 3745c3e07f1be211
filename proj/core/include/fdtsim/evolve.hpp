#ifndef FDTSIM_EVOLVE_HPP_
#define FDTSIM_EVOLVE_HPP_

// Generational population dynamics. Each generation the game adapter sees
// the current type shares, the population plays `rounds` rounds, and then a
// fixed fraction of agents is replaced: parents are drawn in proportion to
// score, victims in inverse proportion, and a few agents mutate.
//
// Every random draw comes from a stream addressed by (seed, generation,
// round, index), so a run is a pure function of its configuration and the
// thread count only changes how fast it finishes.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fdtsim/random.hpp"

namespace fdtsim::evolve {

using TypeIndex = std::uint8_t;

class EvolveError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Game logic as seen by the generation loop. After prepare() returns, the
// play_* methods must be safe to call concurrently.
class GameAdapter {
 public:
  enum class Interaction { kPairwise, kSolo, kPopulation };

  virtual ~GameAdapter() = default;

  virtual std::string_view game_id() const = 0;
  virtual std::span<const std::string> type_names() const = 0;
  virtual Interaction interaction() const = 0;

  // Called once per generation, before any play, with the current shares.
  virtual void prepare(std::span<const double> shares) = 0;

  virtual std::pair<double, double> play_pair(TypeIndex a, TypeIndex b, RandomStream& rng) const;
  virtual double play_solo(TypeIndex type, RandomStream& rng) const;
  virtual void play_population(std::span<const TypeIndex> types, RandomStream& rng,
                               std::span<double> payoffs) const;

  std::size_t type_count() const { return type_names().size(); }
};

struct Agent {
  TypeIndex type = 0;
  double score = 0.0;
};

class Population {
 public:
  Population() = default;
  Population(std::vector<Agent> agents, std::size_t type_count);

  // Largest-remainder apportionment of `size` agents to `shares`, grouped by
  // type in index order.
  static Population from_shares(std::size_t size, std::span<const double> shares);
  static Population from_counts(std::span<const std::size_t> counts);

  std::size_t size() const { return agents_.size(); }
  std::size_t type_count() const { return type_count_; }
  std::span<Agent> agents() { return agents_; }
  std::span<const Agent> agents() const { return agents_; }
  std::vector<TypeIndex> types() const;

  std::vector<std::size_t> counts() const;
  std::vector<double> shares() const;
  void reset_scores();

 private:
  std::vector<Agent> agents_;
  std::size_t type_count_ = 0;
};

// Largest-remainder rounding; ties go to the lower index.
std::vector<std::size_t> apportion(std::size_t total, std::span<const double> shares);

enum class DeathWeighting {
  kInverse,        // weight 1 / score
  kMaxMinusScore,  // weight max_score - score + epsilon
};

std::string_view to_string(DeathWeighting weighting);

struct EvolveConfig {
  std::size_t population = 10000;
  std::size_t generations = 750;
  std::size_t rounds = 100;
  double birth_rate = 0.01;
  double mutation_rate = 0.001;
  std::vector<double> initial_shares;  // empty: even split
  std::uint64_t seed = 1;
  unsigned threads = 1;  // 0: hardware concurrency
  DeathWeighting death_weighting = DeathWeighting::kInverse;

  bool operator==(const EvolveConfig&) const = default;
};

// Throws EvolveError on an invalid configuration for a game with
// `type_count` types.
void validate(const EvolveConfig& config, std::size_t type_count);

std::size_t birth_count(const EvolveConfig& config);
std::size_t mutation_count(const EvolveConfig& config);

// Calls adapter.prepare() with the population's shares and plays all rounds
// of generation `generation`, adding payoffs to each agent's score. Pairwise
// games draw a fresh uniform matching each round; with odd N the agent left
// over sits the round out.
void run_generation(Population& population, GameAdapter& adapter, const EvolveConfig& config,
                    std::uint64_t generation);

// Births and deaths are drawn from the same scored snapshot and applied
// together; then mutation; then scores are reset. Throws EvolveError naming
// the agent if a score is negative or not finite while births are due, or if
// every score is zero.
void repopulate(Population& population, const EvolveConfig& config, std::uint64_t generation);

struct GenerationRecord {
  std::size_t generation = 0;  // 1-based
  std::vector<std::size_t> counts;  // after repopulation
  std::vector<double> shares;       // after repopulation
  // Per-round mean score of each type's agents during this generation,
  // i.e. before repopulation; 0 if the type was absent.
  std::vector<double> mean_scores;
};

struct Trajectory {
  std::vector<std::string> type_names;
  std::vector<std::size_t> initial_counts;
  std::vector<GenerationRecord> records;
};

using GenerationObserver = std::function<void(const GenerationRecord&)>;

Trajectory run_experiment(const EvolveConfig& config, GameAdapter& adapter,
                          const GenerationObserver& observer = {});

}  // namespace fdtsim::evolve

#endif  // FDTSIM_EVOLVE_HPP_
