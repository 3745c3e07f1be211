#include "fdtsim/sweep.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <fstream>
#include <mutex>
#include <ostream>
#include <thread>

#include <fmt/format.h>

#include "fdtsim/presets.hpp"

namespace fdtsim {
namespace {

constexpr std::array<std::string_view, 3> kSweepNames = {"pd-signal-sweep", "pd-payoff-sweep",
                                                          "newcomb-sweep"};

double random_integer(RandomStream& rng, double lo, double hi) {
  const auto a = static_cast<std::uint64_t>(std::ceil(lo));
  const auto b = static_cast<std::uint64_t>(std::floor(hi));
  return static_cast<double>(a + rng.below(b - a + 1));
}

// Uniform on the open interval (lo, hi).
double open_uniform(RandomStream& rng, double lo, double hi) {
  while (true) {
    const double x = rng.uniform(lo, hi);
    if (x > lo && x < hi) return x;
  }
}

void write_file(const std::filesystem::path& path, const ExperimentConfig& config,
                const evolve::Trajectory& trajectory) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::filesystem::filesystem_error("cannot open for writing", path,
                                            std::make_error_code(std::errc::io_error));
  }
  write_csv(out, config, trajectory);
  out.close();
  if (!out) {
    throw std::filesystem::filesystem_error("write failed", path,
                                            std::make_error_code(std::errc::io_error));
  }
}

}  // namespace

std::string_view to_string(SweepKind kind) {
  switch (kind) {
    case SweepKind::kPdSignal: return "pd-signal";
    case SweepKind::kPdPayoff: return "pd-payoff";
    case SweepKind::kNewcomb: return "newcomb";
  }
  return "?";
}

std::optional<SweepKind> parse_sweep_kind(std::string_view text) {
  for (auto k : {SweepKind::kPdSignal, SweepKind::kPdPayoff, SweepKind::kNewcomb}) {
    if (to_string(k) == text) return k;
  }
  return std::nullopt;
}

std::span<const std::string_view> sweep_preset_names() { return kSweepNames; }

std::optional<SweepSpec> sweep_preset(std::string_view name) {
  SweepSpec spec;
  if (name == "pd-signal-sweep") {
    spec.kind = SweepKind::kPdSignal;
    spec.base = *preset("pd-baseline");
    spec.base.evolve.generations = 2000;
    for (int i = 0; i <= 8; ++i) spec.accuracy_grid.push_back(0.5 + 0.05 * i);
    spec.runs = spec.accuracy_grid.size();
  } else if (name == "pd-payoff-sweep") {
    spec.kind = SweepKind::kPdPayoff;
    spec.base = *preset("pd-baseline");
    spec.base.evolve.generations = 1000;
    spec.runs = 6;
  } else if (name == "newcomb-sweep") {
    spec.kind = SweepKind::kNewcomb;
    spec.base = *preset("newcomb-baseline");
    spec.base.evolve.generations = 500;
    spec.runs = 6;
  } else {
    return std::nullopt;
  }
  spec.base.output.clear();
  return spec;
}

void validate(const SweepSpec& spec) {
  switch (spec.kind) {
    case SweepKind::kPdSignal:
      if (spec.runs > 0 && spec.accuracy_grid.empty()) {
        throw ConfigError("signal sweep needs at least one accuracy");
      }
      for (double p : spec.accuracy_grid) {
        if (!(p >= 0.0 && p <= 1.0)) throw ConfigError(fmt::format("accuracy {} not in [0, 1]", p));
      }
      break;
    case SweepKind::kPdPayoff:
      // Four distinct positive integers are needed for DC > CC > DD > CD.
      if (!(spec.payoff_min >= 1.0 && std::floor(spec.payoff_max) - std::ceil(spec.payoff_min) >= 3)) {
        throw ConfigError(fmt::format("payoff range [{}, {}] holds fewer than 4 positive integers",
                                      spec.payoff_min, spec.payoff_max));
      }
      break;
    case SweepKind::kNewcomb:
      if (!(spec.reward_min > 0.0 && spec.reward_max > spec.reward_min)) {
        throw ConfigError(fmt::format("reward range [{}, {}] is empty or not positive",
                                      spec.reward_min, spec.reward_max));
      }
      if (!(spec.accuracy_min >= 0.0 && spec.accuracy_max <= 1.0 &&
            spec.accuracy_min < spec.accuracy_max)) {
        throw ConfigError(fmt::format("accuracy range ({}, {}) is empty", spec.accuracy_min,
                                      spec.accuracy_max));
      }
      break;
  }
  validate(spec.base);
}

std::vector<SweepRun> plan_sweep(const SweepSpec& spec) {
  validate(spec);
  std::vector<SweepRun> runs;
  const std::uint64_t master = spec.base.evolve.seed;
  for (std::size_t i = 0; i < spec.runs; ++i) {
    SweepRun run;
    run.index = i;
    run.config = spec.base;
    run.config.evolve.seed = RandomStream::derive(master, StreamPurpose::kSweep, i)();
    auto rng = RandomStream::derive(master, StreamPurpose::kSweep, i, 1);
    switch (spec.kind) {
      case SweepKind::kPdSignal: {
        const double p = spec.accuracy_grid[i % spec.accuracy_grid.size()];
        run.config.pd.accuracy = p;
        run.parameters = {{"accuracy", p}};
        break;
      }
      case SweepKind::kPdPayoff: {
        auto& pd = run.config.pd;
        do {
          pd.cc = random_integer(rng, spec.payoff_min, spec.payoff_max);
          pd.cd = random_integer(rng, spec.payoff_min, spec.payoff_max);
          pd.dc = random_integer(rng, spec.payoff_min, spec.payoff_max);
          pd.dd = random_integer(rng, spec.payoff_min, spec.payoff_max);
        } while (!(pd.dc > pd.cc && pd.cc > pd.dd && pd.dd > pd.cd));
        run.parameters = {{"cc", pd.cc}, {"cd", pd.cd}, {"dc", pd.dc}, {"dd", pd.dd}};
        break;
      }
      case SweepKind::kNewcomb: {
        auto& nc = run.config.newcomb;
        double a = 0.0;
        double b = 0.0;
        do {
          a = rng.uniform(spec.reward_min, spec.reward_max);
          b = rng.uniform(spec.reward_min, spec.reward_max);
        } while (a == b);
        nc.high = std::max(a, b);
        nc.low = std::min(a, b);
        nc.accuracy = open_uniform(rng, spec.accuracy_min, spec.accuracy_max);
        run.parameters = {{"high", nc.high}, {"low", nc.low}, {"accuracy", nc.accuracy}};
        break;
      }
    }
    run.config.output = fmt::format("run-{:03}.csv", i);
    runs.push_back(std::move(run));
  }
  return runs;
}

std::vector<SweepResult> run_sweep(const SweepSpec& spec, const std::filesystem::path& out_dir,
                                   unsigned threads,
                                   const std::function<void(const SweepResult&)>& on_done) {
  auto plan = plan_sweep(spec);
  std::filesystem::create_directories(out_dir);

  std::vector<SweepResult> results(plan.size());
  std::atomic<std::size_t> next{0};
  std::mutex mutex;
  std::exception_ptr failure;

  const auto work = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= plan.size()) return;
      try {
        SweepResult& r = results[i];
        r.run = plan[i];
        r.run.config.evolve.threads = 1;
        const auto trajectory = run_experiment(r.run.config);
        r.file = r.run.config.output;
        write_file(out_dir / r.file, r.run.config, trajectory);
        if (!trajectory.records.empty()) {
          r.final_shares = trajectory.records.back().shares;
        } else {
          const double n = static_cast<double>(r.run.config.evolve.population);
          for (std::size_t c : trajectory.initial_counts) {
            r.final_shares.push_back(static_cast<double>(c) / n);
          }
        }
        std::lock_guard lock(mutex);
        if (on_done) on_done(r);
      } catch (...) {
        std::lock_guard lock(mutex);
        if (!failure) failure = std::current_exception();
        next = plan.size();
      }
    }
  };

  unsigned workers = threads == 0 ? std::max(1U, std::thread::hardware_concurrency()) : threads;
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(plan.size(), 1)));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);

  const auto summary_path = out_dir / "summary.csv";
  std::ofstream summary(summary_path, std::ios::binary);
  if (!summary) {
    throw std::filesystem::filesystem_error("cannot open for writing", summary_path,
                                            std::make_error_code(std::errc::io_error));
  }
  write_summary(summary, spec, results);
  summary.close();
  if (!summary) {
    throw std::filesystem::filesystem_error("write failed", summary_path,
                                            std::make_error_code(std::errc::io_error));
  }
  return results;
}

void write_summary(std::ostream& out, const SweepSpec& spec,
                   std::span<const SweepResult> results) {
  std::vector<std::string> params;
  switch (spec.kind) {
    case SweepKind::kPdSignal: params = {"accuracy"}; break;
    case SweepKind::kPdPayoff: params = {"cc", "cd", "dc", "dd"}; break;
    case SweepKind::kNewcomb: params = {"high", "low", "accuracy"}; break;
  }
  std::string header = "run,seed,file";
  for (const auto& p : params) header += "," + p;
  for (const auto& name : type_names(spec.base.game)) header += fmt::format(",{}_final_share", name);
  out << header << '\n';
  for (const auto& r : results) {
    std::string row = fmt::format("{},{},{}", r.run.index, r.run.config.evolve.seed, r.file);
    for (const auto& [name, value] : r.run.parameters) row += fmt::format(",{}", value);
    for (double s : r.final_shares) row += fmt::format(",{}", s);
    out << row << '\n';
  }
}

}  // namespace fdtsim
