#pragma once

#include <iosfwd>

namespace yigmag {

inline constexpr int exit_ok = 0;
inline constexpr int exit_config_error = 2;
inline constexpr int exit_numerical_error = 3;

// Entry point of the yigmag tool. Subcommands: run, fit-leeson,
// extract-kappas, limits, demod, asd, synth, figures.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace yigmag
