#include "cli/commands.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "fdtsim/experiment.hpp"
#include "fdtsim/graphs.hpp"
#include "fdtsim/presets.hpp"
#include "fdtsim/scenarios.hpp"
#include "fdtsim/sweep.hpp"

namespace fdtsim::cli {
namespace {

class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::pair<std::string, std::string> split_assignment(const std::string& text,
                                                     std::string_view what) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw ValidationError(fmt::format("expected {} as NAME=VALUE, got '{}'", what, text));
  }
  return {text.substr(0, eq), text.substr(eq + 1)};
}

double parse_number(const std::string& text, std::string_view what) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw ValidationError(fmt::format("{}: '{}' is not a number", what, text));
  }
  return value;
}

// ---------------------------------------------------------------- scenario

struct ScenarioOptions {
  std::string id;
  std::string theory;
  std::optional<double> rho;
  std::optional<double> accuracy;
  std::optional<double> prediction;
  std::optional<double> gene_prior;
  std::vector<std::string> sets;
  std::vector<std::string> evidence;
};

void print_report(std::ostream& out, const graphs::EvaluationReport& report) {
  out << fmt::format("{}\n", graphs::to_string(report.theory));
  for (const auto& v : report.values) {
    out << fmt::format("  {:<12} {:.10g}\n", v.action, v.expected_utility);
  }
  out << fmt::format("  chosen       {}\n", report.chosen);
  if (report.policy_value) out << fmt::format("  policy value {:.10g}\n", *report.policy_value);
}

int scenario_command(const ScenarioOptions& o, std::ostream& out) {
  const auto id = scenarios::parse_scenario_id(o.id);
  if (!id) {
    std::string known;
    for (auto s : scenarios::all_scenarios()) known += fmt::format(" {}", scenarios::to_string(s));
    throw ValidationError(fmt::format("unknown scenario '{}' (known:{})", o.id, known));
  }

  scenarios::ScenarioParams params;
  params.id = *id;
  if (o.rho) params.overrides["rho"] = *o.rho;
  if (o.accuracy) params.overrides["accuracy"] = *o.accuracy;
  if (o.prediction) params.overrides["prediction"] = *o.prediction;
  if (o.gene_prior) params.overrides["gene_prior"] = *o.gene_prior;
  for (const auto& s : o.sets) {
    const auto [key, value] = split_assignment(s, "--set");
    params.overrides[key] = parse_number(value, key);
  }

  std::vector<graphs::Theory> theories;
  if (o.theory.empty()) {
    theories = {graphs::Theory::kEdt, graphs::Theory::kCdt, graphs::Theory::kFdt};
  } else {
    const auto t = graphs::parse_theory(o.theory);
    if (!t) throw ValidationError(fmt::format("unknown theory '{}' (edt, cdt, fdt)", o.theory));
    theories = {*t};
  }

  out << fmt::format("{}\n", scenarios::to_string(*id));
  for (auto theory : theories) {
    params.theory = theory;
    auto problem = scenarios::build_scenario(params);
    for (const auto& e : o.evidence) {
      const auto [var, label] = split_assignment(e, "--evidence");
      problem.evidence[var] = label;
    }
    if (theory == graphs::Theory::kFdt && !problem.decision_fn_var) {
      if (o.theory.empty()) {
        out << "fdt\n  not applicable: no decision-function node\n";
        continue;
      }
      throw ValidationError(
          fmt::format("scenario '{}' has no decision-function node", scenarios::to_string(*id)));
    }
    print_report(out, graphs::decide(problem, theory));
  }
  return kExitOk;
}

// ---------------------------------------------------------- evolve / sweep

struct RunOverrides {
  std::string config_path;
  std::string preset;
  std::string game;
  std::string out;
  std::string death_weighting;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> generations;
  std::optional<std::size_t> population;
  std::optional<std::size_t> rounds;
  std::optional<std::size_t> snapshot_every;
  std::optional<double> birth_rate;
  std::optional<double> mutation_rate;
  std::optional<double> accuracy;
  std::optional<unsigned> threads;
  std::vector<std::string> shares;
  std::vector<std::string> sets;
};

void add_run_options(CLI::App& cmd, RunOverrides& o) {
  cmd.add_option("--config", o.config_path, "JSON experiment config");
  cmd.add_option("--seed", o.seed, "master seed");
  cmd.add_option("--out", o.out, "output path");
  cmd.add_option("--generations", o.generations);
  cmd.add_option("--population", o.population);
  cmd.add_option("--rounds", o.rounds, "rounds per generation");
  cmd.add_option("--birth-rate", o.birth_rate);
  cmd.add_option("--mutation-rate", o.mutation_rate);
  cmd.add_option("--snapshot-every", o.snapshot_every, "CSV row interval");
  cmd.add_option("--threads", o.threads, "worker threads, 0 = all cores");
  cmd.add_option("--accuracy", o.accuracy, "signal or predictor accuracy of the game");
  cmd.add_option("--death-weighting", o.death_weighting, "inverse | max-minus-score");
  cmd.add_option("--share", o.shares, "initial share as TYPE=F (repeatable)");
  cmd.add_option("--set", o.sets, "game parameter as BLOCK.KEY=V, e.g. pd.cc=8 (repeatable)");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(fmt::format("cannot read '{}'", path));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError(fmt::format("error reading '{}'", path));
  return buffer.str();
}

void set_game_parameter(ExperimentConfig& c, const std::string& key, double v) {
  if (key == "pd.cc") c.pd.cc = v;
  else if (key == "pd.cd") c.pd.cd = v;
  else if (key == "pd.dc") c.pd.dc = v;
  else if (key == "pd.dd") c.pd.dd = v;
  else if (key == "pd.accuracy") c.pd.accuracy = v;
  else if (key == "newcomb.high") c.newcomb.high = v;
  else if (key == "newcomb.low") c.newcomb.low = v;
  else if (key == "newcomb.accuracy") c.newcomb.accuracy = v;
  else if (key == "beauty.fraction") c.beauty.fraction = v;
  else if (key == "beauty.guess_min") c.beauty.guess_min = v;
  else if (key == "beauty.guess_max") c.beauty.guess_max = v;
  else if (key == "beauty.cap") c.beauty.cap = v;
  else throw ValidationError(fmt::format("unknown game parameter '{}'", key));
}

ExperimentConfig base_config(const RunOverrides& o, std::string_view default_preset) {
  ExperimentConfig config;
  if (!o.config_path.empty() && !o.preset.empty()) {
    throw ValidationError("--config and --preset are mutually exclusive");
  }
  if (!o.config_path.empty()) {
    config = parse_config(read_file(o.config_path));
  } else if (!o.preset.empty()) {
    const auto p = preset(o.preset);
    if (!p) {
      std::string known;
      for (auto n : preset_names()) known += fmt::format(" {}", n);
      throw ValidationError(fmt::format("unknown preset '{}' (known:{})", o.preset, known));
    }
    config = *p;
  } else if (!o.game.empty()) {
    const auto g = parse_game_id(o.game);
    if (!g) throw ValidationError(fmt::format("unknown game '{}' (pd, newcomb, beauty)", o.game));
    config = default_config(*g);
  } else {
    config = *preset(default_preset);
  }
  if (!o.game.empty() && to_string(config.game) != o.game) {
    throw ValidationError(fmt::format("--game {} conflicts with the {} config", o.game,
                                      to_string(config.game)));
  }
  return config;
}

void apply_overrides(ExperimentConfig& c, const RunOverrides& o) {
  auto& e = c.evolve;
  if (o.seed) e.seed = *o.seed;
  if (o.generations) e.generations = *o.generations;
  if (o.population) e.population = *o.population;
  if (o.rounds) e.rounds = *o.rounds;
  if (o.snapshot_every) c.snapshot_every = *o.snapshot_every;
  if (o.birth_rate) e.birth_rate = *o.birth_rate;
  if (o.mutation_rate) e.mutation_rate = *o.mutation_rate;
  if (o.threads) e.threads = *o.threads;
  if (!o.death_weighting.empty()) {
    if (o.death_weighting == "inverse") {
      e.death_weighting = evolve::DeathWeighting::kInverse;
    } else if (o.death_weighting == "max-minus-score") {
      e.death_weighting = evolve::DeathWeighting::kMaxMinusScore;
    } else {
      throw ValidationError(fmt::format("unknown death weighting '{}'", o.death_weighting));
    }
  }
  if (o.accuracy) {
    switch (c.game) {
      case GameId::kPd: c.pd.accuracy = *o.accuracy; break;
      case GameId::kNewcomb: c.newcomb.accuracy = *o.accuracy; break;
      case GameId::kBeauty: throw ValidationError("the beauty contest has no accuracy");
    }
  }
  if (!o.shares.empty()) {
    std::vector<std::pair<std::string, double>> entries;
    for (const auto& s : o.shares) {
      const auto [name, value] = split_assignment(s, "--share");
      entries.emplace_back(name, parse_number(value, name));
    }
    set_initial_shares(c, entries);
  }
  for (const auto& s : o.sets) {
    const auto [key, value] = split_assignment(s, "--set");
    set_game_parameter(c, key, parse_number(value, key));
  }
}

std::string describe_shares(const std::vector<std::string>& names, const std::vector<double>& s) {
  std::string text;
  for (std::size_t t = 0; t < names.size(); ++t) {
    text += fmt::format("{}{}={:.4f}", t == 0 ? "" : " ", names[t], s[t]);
  }
  return text;
}

int evolve_command(const RunOverrides& o, std::ostream& out, std::ostream& err) {
  ExperimentConfig config = base_config(o, "pd-baseline");
  apply_overrides(config, o);
  if (!o.out.empty()) config.output = o.out;
  if (config.output.empty()) config.output = fmt::format("{}.csv", to_string(config.game));
  validate(config);

  const auto trajectory = run_experiment(config);

  const bool to_stdout = config.output == "-";
  if (to_stdout) {
    write_csv(out, config, trajectory);
  } else {
    std::ofstream file(config.output, std::ios::binary);
    if (!file) throw IoError(fmt::format("cannot write '{}'", config.output));
    write_csv(file, config, trajectory);
    file.close();
    if (!file) throw IoError(fmt::format("error writing '{}'", config.output));
  }

  std::vector<double> final_shares;
  if (!trajectory.records.empty()) {
    final_shares = trajectory.records.back().shares;
  } else {
    for (auto c : trajectory.initial_counts) {
      final_shares.push_back(static_cast<double>(c) /
                             static_cast<double>(config.evolve.population));
    }
  }
  std::ostream& summary = to_stdout ? err : out;
  summary << fmt::format("{} generations, final shares {}{}\n", config.evolve.generations,
                         describe_shares(trajectory.type_names, final_shares),
                         to_stdout ? "" : fmt::format(", wrote {}", config.output));
  return kExitOk;
}

struct SweepOptions {
  RunOverrides run;
  std::string kind;
  std::optional<std::size_t> runs;
};

int sweep_command(const SweepOptions& o, std::ostream& out) {
  SweepSpec spec;
  if (!o.run.preset.empty()) {
    const auto p = sweep_preset(o.run.preset);
    if (!p) {
      std::string known;
      for (auto n : sweep_preset_names()) known += fmt::format(" {}", n);
      throw ValidationError(fmt::format("unknown sweep preset '{}' (known:{})", o.run.preset, known));
    }
    spec = *p;
  } else {
    const std::string kind = o.kind.empty() ? "pd-payoff" : o.kind;
    const auto k = parse_sweep_kind(kind);
    if (!k) {
      throw ValidationError(
          fmt::format("unknown sweep kind '{}' (pd-signal, pd-payoff, newcomb)", kind));
    }
    spec = *sweep_preset(*k == SweepKind::kPdSignal   ? "pd-signal-sweep"
                         : *k == SweepKind::kPdPayoff ? "pd-payoff-sweep"
                                                      : "newcomb-sweep");
  }
  if (!o.run.preset.empty() && !o.kind.empty() && to_string(spec.kind) != o.kind) {
    throw ValidationError(fmt::format("--kind {} conflicts with preset {}", o.kind, o.run.preset));
  }
  if (!o.run.config_path.empty()) {
    spec.base = parse_config(read_file(o.run.config_path));
    const GameId needed = spec.kind == SweepKind::kNewcomb ? GameId::kNewcomb : GameId::kPd;
    if (spec.base.game != needed) {
      throw ValidationError(fmt::format("a {} sweep cannot use a {} config", to_string(spec.kind),
                                        to_string(spec.base.game)));
    }
  }
  apply_overrides(spec.base, o.run);
  if (o.runs) spec.runs = *o.runs;

  const std::filesystem::path dir = o.run.out.empty() ? "sweep" : o.run.out;
  const unsigned threads = o.run.threads.value_or(1);
  std::vector<SweepResult> results;
  try {
    results = run_sweep(spec, dir, threads);
  } catch (const std::filesystem::filesystem_error& e) {
    throw IoError(e.what());
  }
  write_summary(out, spec, results);
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Decision-theory scenarios and evolutionary experiments", "fdtsim"};
  app.require_subcommand(1);

  ScenarioOptions scenario;
  auto* scenario_cmd = app.add_subcommand("scenario", "evaluate a one-shot decision problem");
  scenario_cmd->add_option("id", scenario.id, "smoking-edt | smoking-cdt | newcomb | parfit | twin-pd")
      ->required();
  scenario_cmd->add_option("--theory", scenario.theory, "edt | cdt | fdt (default: all)");
  scenario_cmd->add_option("--rho", scenario.rho, "twin correlation");
  scenario_cmd->add_option("--accuracy", scenario.accuracy, "predictor accuracy");
  scenario_cmd->add_option("--prediction", scenario.prediction, "prior on the prediction");
  scenario_cmd->add_option("--gene-prior", scenario.gene_prior, "smoking-cdt gene prior");
  scenario_cmd->add_option("--set", scenario.sets, "any scenario parameter as KEY=V (repeatable)");
  scenario_cmd->add_option("--evidence", scenario.evidence, "observation as VAR=LABEL (repeatable)");

  RunOverrides evolve;
  auto* evolve_cmd = app.add_subcommand("evolve", "run an evolutionary experiment to CSV");
  add_run_options(*evolve_cmd, evolve);
  evolve_cmd->add_option("--preset", evolve.preset, "named experiment");
  evolve_cmd->add_option("--game", evolve.game, "pd | newcomb | beauty");

  SweepOptions sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "run a batch of experiments with drawn parameters");
  add_run_options(*sweep_cmd, sweep.run);
  sweep_cmd->add_option("--preset", sweep.run.preset, "named sweep");
  sweep_cmd->add_option("--kind", sweep.kind, "pd-signal | pd-payoff | newcomb");
  sweep_cmd->add_option("--runs", sweep.runs, "number of runs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (*scenario_cmd) return scenario_command(scenario, out);
    if (*evolve_cmd) return evolve_command(evolve, out, err);
    if (*sweep_cmd) return sweep_command(sweep, out);
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::ios_base::failure& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return kExitValidation;
}

}  // namespace fdtsim::cli
