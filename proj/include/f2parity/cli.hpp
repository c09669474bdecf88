#ifndef F2PARITY_CLI_HPP
#define F2PARITY_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace f2parity::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitViolation = 2;

/// Runs one subcommand. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace f2parity::cli

#endif  // F2PARITY_CLI_HPP
