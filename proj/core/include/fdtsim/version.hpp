#ifndef FDTSIM_VERSION_HPP_
#define FDTSIM_VERSION_HPP_

#include <string_view>

namespace fdtsim {

inline constexpr std::string_view kVersion = "0.1.0";

}  // namespace fdtsim

#endif  // FDTSIM_VERSION_HPP_
