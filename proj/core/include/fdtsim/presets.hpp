#ifndef FDTSIM_PRESETS_HPP_
#define FDTSIM_PRESETS_HPP_

// Named experiment setups reproducing the reference runs:
//
//   pd-baseline       signal PD, 10,000 agents, 750 generations, even thirds
//   pd-invasion       signal PD starting at 90% defectors / 10% FDT, 1,500 generations
//   newcomb-baseline  transparent Newcomb, 3,000 agents, 100 generations, even split
//   beauty-baseline   beauty contest, 10,000 agents, 750 generations, even thirds
//   beauty-cdt-heavy  beauty contest starting at 10% random / 80% CDT / 10% FDT

#include <optional>
#include <span>
#include <string_view>

#include "fdtsim/experiment.hpp"

namespace fdtsim {

std::span<const std::string_view> preset_names();
std::optional<ExperimentConfig> preset(std::string_view name);

}  // namespace fdtsim

#endif  // FDTSIM_PRESETS_HPP_
