#include "fdtsim/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <set>

#include <fmt/format.h>
#include <fmt/ranges.h>
#include <json.hpp>

#include "fdtsim/adapters.hpp"
#include "fdtsim/version.hpp"

namespace fdtsim {
namespace {

using Json = nlohmann::ordered_json;

void reject_unknown_keys(const Json& object, std::string_view where,
                         std::initializer_list<std::string_view> allowed) {
  for (const auto& [key, value] : object.items()) {
    bool ok = false;
    for (auto a : allowed) ok = ok || key == a;
    if (!ok) throw ConfigError(fmt::format("unknown key '{}' in {}", key, where));
  }
}

const Json& object_at(const Json& parent, std::string_view key) {
  const Json& value = parent.at(std::string(key));
  if (!value.is_object()) throw ConfigError(fmt::format("'{}' must be an object", key));
  return value;
}

template <class T>
void read(const Json& object, std::string_view key, T& target) {
  const auto it = object.find(std::string(key));
  if (it == object.end()) return;
  try {
    if constexpr (std::is_same_v<T, double>) {
      if (!it->is_number()) throw ConfigError("");
      target = it->template get<double>();
    } else if constexpr (std::is_integral_v<T>) {
      if (!it->is_number_unsigned()) throw ConfigError("");
      target = it->template get<T>();
    } else {
      target = it->template get<T>();
    }
  } catch (const std::exception&) {
    throw ConfigError(fmt::format("'{}' has the wrong type: {}", key, it->dump()));
  }
}

std::optional<evolve::DeathWeighting> parse_weighting(std::string_view text) {
  if (text == "inverse") return evolve::DeathWeighting::kInverse;
  if (text == "max-minus-score") return evolve::DeathWeighting::kMaxMinusScore;
  return std::nullopt;
}

void fill_even_shares(ExperimentConfig& config) {
  const auto n = type_names(config.game).size();
  config.evolve.initial_shares.assign(n, 1.0 / static_cast<double>(n));
}

}  // namespace

std::string_view to_string(GameId game) {
  switch (game) {
    case GameId::kPd: return "pd";
    case GameId::kNewcomb: return "newcomb";
    case GameId::kBeauty: return "beauty";
  }
  return "?";
}

std::optional<GameId> parse_game_id(std::string_view text) {
  for (GameId g : {GameId::kPd, GameId::kNewcomb, GameId::kBeauty}) {
    if (to_string(g) == text) return g;
  }
  return std::nullopt;
}

std::vector<std::string> type_names(GameId game) {
  switch (game) {
    case GameId::kPd: return {"defector", "cooperator", "fdt"};
    case GameId::kNewcomb: return {"cdt", "fdt"};
    case GameId::kBeauty: return {"random", "cdt", "fdt"};
  }
  return {};
}

ExperimentConfig default_config(GameId game) {
  ExperimentConfig config;
  config.game = game;
  if (game == GameId::kNewcomb) {
    config.evolve.population = 3000;
    config.evolve.generations = 100;
  }
  fill_even_shares(config);
  return config;
}

void set_initial_shares(ExperimentConfig& config,
                        const std::vector<std::pair<std::string, double>>& shares) {
  const auto names = type_names(config.game);
  std::vector<double> values(names.size(), 0.0);
  std::set<std::string> seen;
  for (const auto& [name, value] : shares) {
    const auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) {
      throw ConfigError(fmt::format("game '{}' has no type '{}' (types: {})",
                                    to_string(config.game), name, fmt::join(names, ", ")));
    }
    if (!seen.insert(name).second) throw ConfigError(fmt::format("share for '{}' given twice", name));
    values[static_cast<std::size_t>(it - names.begin())] = value;
  }
  config.evolve.initial_shares = std::move(values);
}

ExperimentConfig parse_config(std::string_view json_text) {
  Json doc;
  try {
    doc = Json::parse(json_text);
  } catch (const Json::parse_error& e) {
    throw ConfigError(fmt::format("invalid JSON: {}", e.what()));
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  reject_unknown_keys(doc, "config",
                      {"game", "seed", "population", "generations", "rounds", "birth_rate",
                       "mutation_rate", "initial_shares", "death_weighting", "snapshot_every",
                       "threads", "output", "pd", "newcomb", "beauty"});

  std::string game_text = "pd";
  read(doc, "game", game_text);
  const auto game = parse_game_id(game_text);
  if (!game) throw ConfigError(fmt::format("unknown game '{}'", game_text));
  ExperimentConfig config = default_config(*game);

  auto& e = config.evolve;
  read(doc, "seed", e.seed);
  read(doc, "population", e.population);
  read(doc, "generations", e.generations);
  read(doc, "rounds", e.rounds);
  read(doc, "birth_rate", e.birth_rate);
  read(doc, "mutation_rate", e.mutation_rate);
  read(doc, "threads", e.threads);
  read(doc, "snapshot_every", config.snapshot_every);
  read(doc, "output", config.output);

  if (doc.contains("death_weighting")) {
    std::string text;
    read(doc, "death_weighting", text);
    const auto w = parse_weighting(text);
    if (!w) throw ConfigError(fmt::format("unknown death_weighting '{}'", text));
    e.death_weighting = *w;
  }

  if (doc.contains("initial_shares")) {
    const Json& shares = object_at(doc, "initial_shares");
    std::vector<std::pair<std::string, double>> entries;
    for (const auto& [name, value] : shares.items()) {
      if (!value.is_number()) {
        throw ConfigError(fmt::format("initial share for '{}' must be a number", name));
      }
      entries.emplace_back(name, value.get<double>());
    }
    set_initial_shares(config, entries);
  }

  if (doc.contains("pd")) {
    const Json& b = object_at(doc, "pd");
    reject_unknown_keys(b, "pd", {"cc", "cd", "dc", "dd", "accuracy"});
    read(b, "cc", config.pd.cc);
    read(b, "cd", config.pd.cd);
    read(b, "dc", config.pd.dc);
    read(b, "dd", config.pd.dd);
    read(b, "accuracy", config.pd.accuracy);
  }
  if (doc.contains("newcomb")) {
    const Json& b = object_at(doc, "newcomb");
    reject_unknown_keys(b, "newcomb", {"high", "low", "accuracy"});
    read(b, "high", config.newcomb.high);
    read(b, "low", config.newcomb.low);
    read(b, "accuracy", config.newcomb.accuracy);
  }
  if (doc.contains("beauty")) {
    const Json& b = object_at(doc, "beauty");
    reject_unknown_keys(b, "beauty", {"fraction", "guess_min", "guess_max", "cap"});
    read(b, "fraction", config.beauty.fraction);
    read(b, "guess_min", config.beauty.guess_min);
    read(b, "guess_max", config.beauty.guess_max);
    read(b, "cap", config.beauty.cap);
  }

  validate(config);
  return config;
}

std::string serialize_config(const ExperimentConfig& config, bool include_runtime) {
  const auto& e = config.evolve;
  Json doc;
  doc["game"] = to_string(config.game);
  doc["seed"] = e.seed;
  doc["population"] = e.population;
  doc["generations"] = e.generations;
  doc["rounds"] = e.rounds;
  doc["birth_rate"] = e.birth_rate;
  doc["mutation_rate"] = e.mutation_rate;
  Json shares = Json::object();
  const auto names = type_names(config.game);
  for (std::size_t i = 0; i < names.size() && i < e.initial_shares.size(); ++i) {
    shares[names[i]] = e.initial_shares[i];
  }
  doc["initial_shares"] = shares;
  doc["death_weighting"] = evolve::to_string(e.death_weighting);
  doc["snapshot_every"] = config.snapshot_every;
  if (include_runtime) {
    doc["threads"] = e.threads;
    doc["output"] = config.output;
  }
  doc["pd"] = {{"cc", config.pd.cc},
               {"cd", config.pd.cd},
               {"dc", config.pd.dc},
               {"dd", config.pd.dd},
               {"accuracy", config.pd.accuracy}};
  doc["newcomb"] = {{"high", config.newcomb.high},
                    {"low", config.newcomb.low},
                    {"accuracy", config.newcomb.accuracy}};
  doc["beauty"] = {{"fraction", config.beauty.fraction},
                   {"guess_min", config.beauty.guess_min},
                   {"guess_max", config.beauty.guess_max},
                   {"cap", config.beauty.cap}};
  return doc.dump();
}

void validate(const ExperimentConfig& config) {
  try {
    evolve::validate(config.evolve, type_names(config.game).size());
    switch (config.game) {
      case GameId::kPd: pd::validate(config.pd); break;
      case GameId::kNewcomb: newcomb::validate(config.newcomb); break;
      case GameId::kBeauty: beauty::validate(config.beauty); break;
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& ex) {
    throw ConfigError(ex.what());
  }
  if (config.snapshot_every == 0) throw ConfigError("snapshot_every must be positive");
}

std::unique_ptr<evolve::GameAdapter> make_adapter(const ExperimentConfig& config) {
  switch (config.game) {
    case GameId::kPd: return std::make_unique<PdAdapter>(config.pd);
    case GameId::kNewcomb: return std::make_unique<NewcombAdapter>(config.newcomb);
    case GameId::kBeauty: return std::make_unique<BeautyAdapter>(config.beauty);
  }
  throw ConfigError("unknown game");
}

evolve::Trajectory run_experiment(const ExperimentConfig& config,
                                  const evolve::GenerationObserver& observer) {
  validate(config);
  auto adapter = make_adapter(config);
  return evolve::run_experiment(config.evolve, *adapter, observer);
}

bool is_snapshot(const ExperimentConfig& config, std::size_t generation) {
  return generation % config.snapshot_every == 0 || generation == config.evolve.generations;
}

void write_csv(std::ostream& out, const ExperimentConfig& config,
               const evolve::Trajectory& trajectory) {
  out << fmt::format("# fdtsim {}\n", kVersion);
  out << fmt::format("# seed {}\n", config.evolve.seed);
  out << fmt::format("# config {}\n", serialize_config(config, false));

  std::string header = "generation";
  for (const auto& name : trajectory.type_names) {
    header += fmt::format(",{0}_count,{0}_share,{0}_mean_score", name);
  }
  out << header << '\n';

  std::string row;
  for (const auto& r : trajectory.records) {
    if (!is_snapshot(config, r.generation)) continue;
    row = fmt::format("{}", r.generation);
    for (std::size_t t = 0; t < trajectory.type_names.size(); ++t) {
      row += fmt::format(",{},{},{}", r.counts[t], r.shares[t], r.mean_scores[t]);
    }
    out << row << '\n';
  }
}

}  // namespace fdtsim
