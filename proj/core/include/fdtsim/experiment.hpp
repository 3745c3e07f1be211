#ifndef FDTSIM_EXPERIMENT_HPP_
#define FDTSIM_EXPERIMENT_HPP_

// A complete evolutionary experiment: which game, its parameters, the
// population dynamics, and where the trajectory goes. Configs are JSON
// documents; every key is optional and defaults to the baseline value.
//
//   {
//     "game": "pd",
//     "seed": 1,
//     "population": 10000, "generations": 750, "rounds": 100,
//     "birth_rate": 0.01, "mutation_rate": 0.001,
//     "initial_shares": {"defector": 0.5, "cooperator": 0.0, "fdt": 0.5},
//     "death_weighting": "inverse",
//     "snapshot_every": 1,
//     "threads": 1,
//     "output": "pd.csv",
//     "pd": {"cc": 7, "cd": 1, "dc": 10, "dd": 4, "accuracy": 0.9},
//     "newcomb": {"high": 10000, "low": 1000, "accuracy": 0.99},
//     "beauty": {"fraction": 0.6667, "guess_min": 0, "guess_max": 100, "cap": 1000}
//   }

#include <cstddef>
#include <iosfwd>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fdtsim/beauty.hpp"
#include "fdtsim/evolve.hpp"
#include "fdtsim/newcomb.hpp"
#include "fdtsim/pd.hpp"

namespace fdtsim {

enum class GameId { kPd, kNewcomb, kBeauty };

std::string_view to_string(GameId game);
std::optional<GameId> parse_game_id(std::string_view text);

// Type names in index order, as used in configs and CSV headers.
std::vector<std::string> type_names(GameId game);

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ExperimentConfig {
  GameId game = GameId::kPd;
  evolve::EvolveConfig evolve;  // initial_shares always filled in by parse
  std::size_t snapshot_every = 1;
  std::string output;
  pd::PdConfig pd;
  newcomb::NewcombConfig newcomb;
  beauty::BeautyConfig beauty;

  bool operator==(const ExperimentConfig&) const = default;
};

// Baseline values for `game`, with even initial shares.
ExperimentConfig default_config(GameId game);

// Throws ConfigError on malformed JSON, unknown keys, wrong value types, or
// values that fail validate().
ExperimentConfig parse_config(std::string_view json_text);

// With include_runtime = false, `threads` and `output` are left out; they do
// not affect results, so the CSV metadata omits them.
std::string serialize_config(const ExperimentConfig& config, bool include_runtime = true);

// Throws ConfigError naming the first invalid field.
void validate(const ExperimentConfig& config);

// Sets initial shares by type name; unnamed types get 0.
void set_initial_shares(ExperimentConfig& config,
                        const std::vector<std::pair<std::string, double>>& shares);

std::unique_ptr<evolve::GameAdapter> make_adapter(const ExperimentConfig& config);

evolve::Trajectory run_experiment(const ExperimentConfig& config,
                                  const evolve::GenerationObserver& observer = {});

// True for the generations that get a CSV row: every multiple of
// snapshot_every, plus the last.
bool is_snapshot(const ExperimentConfig& config, std::size_t generation);

// `#` metadata lines (version, seed, config), a header
// generation,<type>_count,<type>_share,<type>_mean_score,... and one row per
// snapshot.
void write_csv(std::ostream& out, const ExperimentConfig& config,
               const evolve::Trajectory& trajectory);

}  // namespace fdtsim

#endif  // FDTSIM_EXPERIMENT_HPP_
