#ifndef FDTSIM_SWEEP_HPP_
#define FDTSIM_SWEEP_HPP_

// Batches of independent runs over drawn or gridded parameters.
//
//   pd-signal-sweep  PD accuracy 0.5, 0.55, ..., 0.9; 2,000 generations each
//   pd-payoff-sweep  6 runs, PD payoffs random integers in [1, 1000] with
//                    DC > CC > DD > CD; 1,000 generations each
//   newcomb-sweep    6 runs, rewards uniform in [1, 1e6] with high > low,
//                    accuracy uniform in (0.5, 1); 500 generations each

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fdtsim/experiment.hpp"

namespace fdtsim {

enum class SweepKind { kPdSignal, kPdPayoff, kNewcomb };

std::string_view to_string(SweepKind kind);
std::optional<SweepKind> parse_sweep_kind(std::string_view text);

struct SweepSpec {
  SweepKind kind = SweepKind::kPdPayoff;
  std::size_t runs = 6;
  ExperimentConfig base;
  std::vector<double> accuracy_grid;  // kPdSignal; cycled if runs exceeds it
  double payoff_min = 1.0;             // kPdPayoff, integers
  double payoff_max = 1000.0;
  double reward_min = 1.0;  // kNewcomb
  double reward_max = 1e6;
  double accuracy_min = 0.5;  // kNewcomb, open interval
  double accuracy_max = 1.0;
};

std::span<const std::string_view> sweep_preset_names();
std::optional<SweepSpec> sweep_preset(std::string_view name);

// Throws ConfigError if a range is empty or cannot produce a valid game.
void validate(const SweepSpec& spec);

struct SweepRun {
  std::size_t index = 0;
  ExperimentConfig config;  // seed and drawn parameters applied
  std::vector<std::pair<std::string, double>> parameters;
};

// The configs the sweep will run; a pure function of `spec`. Run i gets
// its own seed and parameter draws derived from (base seed, i).
std::vector<SweepRun> plan_sweep(const SweepSpec& spec);

struct SweepResult {
  SweepRun run;
  std::string file;
  std::vector<double> final_shares;
};

// Runs every planned config (up to `threads` at a time, 0 = all cores),
// writing run-NNN.csv and summary.csv into `out_dir`. Throws
// std::filesystem::filesystem_error or std::ios_base::failure on I/O errors.
std::vector<SweepResult> run_sweep(const SweepSpec& spec, const std::filesystem::path& out_dir,
                                   unsigned threads = 1,
                                   const std::function<void(const SweepResult&)>& on_done = {});

void write_summary(std::ostream& out, const SweepSpec& spec,
                   std::span<const SweepResult> results);

}  // namespace fdtsim

#endif  // FDTSIM_SWEEP_HPP_
