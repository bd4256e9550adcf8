#ifndef FETIP_CLI_HPP
#define FETIP_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace fetip::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitNumerical = 2;

/// Entry point shared by the executable and the tests. `args` excludes the program name.
///   simulate <config.json> [--out FILE]
///   fit power-sum|single-power|fn-radius <data.csv> [flags] [--out FILE]
///   keldysh [flags]
///   constants
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fetip::cli

#endif
