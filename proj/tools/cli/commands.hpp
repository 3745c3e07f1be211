#ifndef FDTSIM_TOOLS_COMMANDS_HPP_
#define FDTSIM_TOOLS_COMMANDS_HPP_

#include <iosfwd>

namespace fdtsim::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitIo = 2;

// Entry point of the fdtsim tool, with the streams injectable for tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fdtsim::cli

#endif  // FDTSIM_TOOLS_COMMANDS_HPP_
