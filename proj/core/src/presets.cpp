#include "fdtsim/presets.hpp"

#include <array>

namespace fdtsim {
namespace {

constexpr std::array<std::string_view, 5> kNames = {
    "pd-baseline", "pd-invasion", "newcomb-baseline", "beauty-baseline", "beauty-cdt-heavy"};

}  // namespace

std::span<const std::string_view> preset_names() { return kNames; }

std::optional<ExperimentConfig> preset(std::string_view name) {
  if (name == "pd-baseline") {
    auto c = default_config(GameId::kPd);
    c.output = "pd-baseline.csv";
    return c;
  }
  if (name == "pd-invasion") {
    auto c = default_config(GameId::kPd);
    c.evolve.generations = 1500;
    set_initial_shares(c, {{"defector", 0.9}, {"fdt", 0.1}});
    c.output = "pd-invasion.csv";
    return c;
  }
  if (name == "newcomb-baseline") {
    auto c = default_config(GameId::kNewcomb);
    c.output = "newcomb-baseline.csv";
    return c;
  }
  if (name == "beauty-baseline") {
    auto c = default_config(GameId::kBeauty);
    c.output = "beauty-baseline.csv";
    return c;
  }
  if (name == "beauty-cdt-heavy") {
    auto c = default_config(GameId::kBeauty);
    set_initial_shares(c, {{"random", 0.1}, {"cdt", 0.8}, {"fdt", 0.1}});
    c.output = "beauty-cdt-heavy.csv";
    return c;
  }
  return std::nullopt;
}

}  // namespace fdtsim
