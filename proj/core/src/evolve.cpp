#include "fdtsim/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>

#include <fmt/format.h>

namespace fdtsim::evolve {

std::pair<double, double> GameAdapter::play_pair(TypeIndex, TypeIndex, RandomStream&) const {
  throw EvolveError(fmt::format("game '{}' is not played in pairs", game_id()));
}

double GameAdapter::play_solo(TypeIndex, RandomStream&) const {
  throw EvolveError(fmt::format("game '{}' is not played solo", game_id()));
}

void GameAdapter::play_population(std::span<const TypeIndex>, RandomStream&,
                                  std::span<double>) const {
  throw EvolveError(fmt::format("game '{}' is not a whole-population game", game_id()));
}

Population::Population(std::vector<Agent> agents, std::size_t type_count)
    : agents_(std::move(agents)), type_count_(type_count) {
  for (std::size_t i = 0; i < agents_.size(); ++i) {
    if (agents_[i].type >= type_count_) {
      throw EvolveError(fmt::format("agent {} has type {} but there are only {} types", i,
                                    agents_[i].type, type_count_));
    }
  }
}

std::vector<std::size_t> apportion(std::size_t total, std::span<const double> shares) {
  if (shares.empty()) throw EvolveError("no types to apportion");
  double sum = 0.0;
  for (double s : shares) {
    if (!(s >= 0.0) || !std::isfinite(s)) throw EvolveError(fmt::format("invalid share {}", s));
    sum += s;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw EvolveError(fmt::format("shares sum to {}, not 1", sum));

  std::vector<std::size_t> counts(shares.size());
  std::vector<double> remainder(shares.size());
  std::size_t assigned = 0;
  for (std::size_t i = 0; i < shares.size(); ++i) {
    const double exact = shares[i] / sum * static_cast<double>(total);
    counts[i] = static_cast<std::size_t>(std::floor(exact));
    remainder[i] = exact - static_cast<double>(counts[i]);
    assigned += counts[i];
  }
  std::vector<std::size_t> order(shares.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return remainder[a] > remainder[b]; });
  for (std::size_t k = 0; assigned < total; k = (k + 1) % order.size()) {
    ++counts[order[k]];
    ++assigned;
  }
  while (assigned > total) {
    // Only reachable through rounding noise in floor(); take from the largest.
    auto it = std::max_element(counts.begin(), counts.end());
    --*it;
    --assigned;
  }
  return counts;
}

Population Population::from_counts(std::span<const std::size_t> counts) {
  std::vector<Agent> agents;
  for (std::size_t t = 0; t < counts.size(); ++t) {
    agents.insert(agents.end(), counts[t], Agent{static_cast<TypeIndex>(t), 0.0});
  }
  return Population(std::move(agents), counts.size());
}

Population Population::from_shares(std::size_t size, std::span<const double> shares) {
  const auto counts = apportion(size, shares);
  return from_counts(counts);
}

std::vector<TypeIndex> Population::types() const {
  std::vector<TypeIndex> out(agents_.size());
  for (std::size_t i = 0; i < agents_.size(); ++i) out[i] = agents_[i].type;
  return out;
}

std::vector<std::size_t> Population::counts() const {
  std::vector<std::size_t> out(type_count_, 0);
  for (const Agent& a : agents_) ++out[a.type];
  return out;
}

std::vector<double> Population::shares() const {
  const auto c = counts();
  std::vector<double> out(c.size(), 0.0);
  if (agents_.empty()) return out;
  for (std::size_t t = 0; t < c.size(); ++t) {
    out[t] = static_cast<double>(c[t]) / static_cast<double>(agents_.size());
  }
  return out;
}

void Population::reset_scores() {
  for (Agent& a : agents_) a.score = 0.0;
}

std::string_view to_string(DeathWeighting weighting) {
  return weighting == DeathWeighting::kInverse ? "inverse" : "max-minus-score";
}

std::size_t birth_count(const EvolveConfig& config) {
  return static_cast<std::size_t>(
      std::llround(static_cast<double>(config.population) * config.birth_rate));
}

std::size_t mutation_count(const EvolveConfig& config) {
  return static_cast<std::size_t>(
      std::llround(static_cast<double>(config.population) * config.mutation_rate));
}

void validate(const EvolveConfig& c, std::size_t type_count) {
  if (c.population == 0) throw EvolveError("population must be positive");
  if (c.population > (std::size_t{1} << 32)) throw EvolveError("population is too large");
  if (!(c.birth_rate >= 0.0 && c.birth_rate <= 1.0)) {
    throw EvolveError(fmt::format("birth rate {} is not in [0, 1]", c.birth_rate));
  }
  if (!(c.mutation_rate >= 0.0 && c.mutation_rate <= 1.0)) {
    throw EvolveError(fmt::format("mutation rate {} is not in [0, 1]", c.mutation_rate));
  }
  if (c.birth_rate > 0.0 && birth_count(c) == 0) {
    throw EvolveError(fmt::format("birth rate {} rounds to zero births in a population of {}",
                                  c.birth_rate, c.population));
  }
  if (!c.initial_shares.empty()) {
    if (c.initial_shares.size() != type_count) {
      throw EvolveError(fmt::format("{} initial shares given for {} types",
                                    c.initial_shares.size(), type_count));
    }
    apportion(c.population, c.initial_shares);
  }
}

namespace {

// Plays one round into `payoffs` (size N, overwritten).
void play_round(std::span<const TypeIndex> types, const GameAdapter& adapter,
                const EvolveConfig& config, std::uint64_t generation, std::uint64_t round,
                std::vector<std::uint32_t>& order, std::span<double> payoffs) {
  const std::size_t n = types.size();
  switch (adapter.interaction()) {
    case GameAdapter::Interaction::kPairwise: {
      order.resize(n);
      std::iota(order.begin(), order.end(), std::uint32_t{0});
      auto matching =
          RandomStream::derive(config.seed, StreamPurpose::kMatching, generation, round);
      shuffle(std::span<std::uint32_t>(order), matching);
      if (n % 2 == 1) payoffs[order.back()] = 0.0;
      const auto pairs = RandomStream::derive(config.seed, StreamPurpose::kPair, generation, round);
      for (std::size_t i = 0; i + 1 < n; i += 2) {
        const std::uint32_t a = order[i];
        const std::uint32_t b = order[i + 1];
        auto rng = pairs.child(i / 2);
        const auto [pa, pb] = adapter.play_pair(types[a], types[b], rng);
        payoffs[a] = pa;
        payoffs[b] = pb;
      }
      break;
    }
    case GameAdapter::Interaction::kSolo: {
      const auto solo = RandomStream::derive(config.seed, StreamPurpose::kSolo, generation, round);
      for (std::size_t i = 0; i < n; ++i) {
        auto rng = solo.child(i);
        payoffs[i] = adapter.play_solo(types[i], rng);
      }
      break;
    }
    case GameAdapter::Interaction::kPopulation: {
      auto rng =
          RandomStream::derive(config.seed, StreamPurpose::kPopulationRound, generation, round);
      adapter.play_population(types, rng, payoffs);
      break;
    }
  }
}

unsigned resolve_threads(unsigned requested) {
  if (requested != 0) return requested;
  return std::max(1U, std::thread::hardware_concurrency());
}

}  // namespace

void run_generation(Population& population, GameAdapter& adapter, const EvolveConfig& config,
                    std::uint64_t generation) {
  const auto shares = population.shares();
  adapter.prepare(shares);

  const std::size_t n = population.size();
  const auto types = population.types();
  auto agents = population.agents();
  const std::size_t rounds = config.rounds;
  const std::size_t workers = std::min<std::size_t>(resolve_threads(config.threads), rounds);

  // Scores are accumulated round by round in order, whatever the number of
  // workers, so the floating-point sums are identical.
  if (workers <= 1) {
    std::vector<double> payoffs(n);
    std::vector<std::uint32_t> order;
    for (std::size_t r = 0; r < rounds; ++r) {
      play_round(types, adapter, config, generation, r, order, payoffs);
      for (std::size_t i = 0; i < n; ++i) agents[i].score += payoffs[i];
    }
    return;
  }

  std::vector<std::vector<double>> buffers(workers, std::vector<double>(n));
  std::vector<std::vector<std::uint32_t>> orders(workers);
  for (std::size_t first = 0; first < rounds; first += workers) {
    const std::size_t batch = std::min(workers, rounds - first);
    {
      std::vector<std::jthread> pool;
      pool.reserve(batch);
      for (std::size_t k = 0; k < batch; ++k) {
        pool.emplace_back([&, k] {
          play_round(types, adapter, config, generation, first + k, orders[k], buffers[k]);
        });
      }
    }
    for (std::size_t k = 0; k < batch; ++k) {
      for (std::size_t i = 0; i < n; ++i) agents[i].score += buffers[k][i];
    }
  }
}

void repopulate(Population& population, const EvolveConfig& config, std::uint64_t generation) {
  auto agents = population.agents();
  const std::size_t n = agents.size();
  auto rng = RandomStream::derive(config.seed, StreamPurpose::kRepopulation, generation);

  const std::size_t births = std::min(birth_count(config), n);
  if (births > 0) {
    double max_score = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double s = agents[i].score;
      if (!(s >= 0.0) || !std::isfinite(s)) {
        throw EvolveError(fmt::format(
            "agent {} (type {}) has score {} in generation {}; repopulation needs finite "
            "nonnegative scores",
            i, agents[i].type, s, generation));
      }
      max_score = std::max(max_score, s);
    }

    // Parents: with replacement, proportional to score.
    std::vector<double> cumulative(n);
    double running = 0.0;
    for (std::size_t i = 0; i < n; ++i) cumulative[i] = running += agents[i].score;
    if (!(running > 0.0)) {
      throw EvolveError(
          fmt::format("every agent scored zero in generation {}; no parent can be drawn", generation));
    }
    std::vector<TypeIndex> parent_types(births);
    for (auto& t : parent_types) {
      const double u = rng.uniform01() * running;
      auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
      const auto idx = std::min<std::size_t>(static_cast<std::size_t>(it - cumulative.begin()), n - 1);
      t = agents[idx].type;
    }

    // Victims: without replacement via Efraimidis-Spirakis keys log(u) / w;
    // the `births` largest keys die. Under inverse weighting a zero score has
    // infinite weight, so those agents go first, in random order.
    const double epsilon = 1e-9 * std::max(1.0, max_score);
    std::vector<std::pair<double, std::uint32_t>> keys(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double s = agents[i].score;
      const double u = rng.uniform_open01();
      double key = 0.0;
      if (config.death_weighting == DeathWeighting::kMaxMinusScore) {
        key = std::log(u) / (max_score - s + epsilon);
      } else {
        key = s > 0.0 ? std::log(u) * s : 1.0 + u;
      }
      keys[i] = {key, static_cast<std::uint32_t>(i)};
    }
    const auto larger = [](const auto& a, const auto& b) {
      return a.first != b.first ? a.first > b.first : a.second < b.second;
    };
    std::partial_sort(keys.begin(), keys.begin() + static_cast<std::ptrdiff_t>(births), keys.end(),
                      larger);
    for (std::size_t k = 0; k < births; ++k) agents[keys[k].second].type = parent_types[k];
  }

  const std::size_t mutations = std::min(mutation_count(config), n);
  if (mutations > 0) {
    std::vector<std::uint32_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::uint32_t{0});
    for (std::size_t k = 0; k < mutations; ++k) {
      const auto j = k + static_cast<std::size_t>(rng.below(n - k));
      std::swap(idx[k], idx[j]);
      agents[idx[k]].type = static_cast<TypeIndex>(rng.below(population.type_count()));
    }
  }

  population.reset_scores();
}

Trajectory run_experiment(const EvolveConfig& config, GameAdapter& adapter,
                          const GenerationObserver& observer) {
  const std::size_t k = adapter.type_count();
  validate(config, k);
  std::vector<double> shares = config.initial_shares;
  if (shares.empty()) shares.assign(k, 1.0 / static_cast<double>(k));
  Population population = Population::from_shares(config.population, shares);

  Trajectory trajectory;
  const auto names = adapter.type_names();
  trajectory.type_names.assign(names.begin(), names.end());
  trajectory.initial_counts = population.counts();
  trajectory.records.reserve(config.generations);

  for (std::size_t g = 1; g <= config.generations; ++g) {
    run_generation(population, adapter, config, g);

    GenerationRecord record;
    record.generation = g;
    std::vector<double> totals(k, 0.0);
    const auto before = population.counts();
    for (const Agent& a : population.agents()) totals[a.type] += a.score;
    record.mean_scores.assign(k, 0.0);
    for (std::size_t t = 0; t < k; ++t) {
      if (before[t] > 0 && config.rounds > 0) {
        record.mean_scores[t] =
            totals[t] / static_cast<double>(before[t]) / static_cast<double>(config.rounds);
      }
    }

    repopulate(population, config, g);
    record.counts = population.counts();
    record.shares = population.shares();
    if (observer) observer(record);
    trajectory.records.push_back(std::move(record));
  }
  return trajectory;
}

}  // namespace fdtsim::evolve
