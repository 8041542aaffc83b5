#ifndef SPECTER_CLI_HPP
#define SPECTER_CLI_HPP

#include <istream>
#include <ostream>
#include <string>
#include <vector>

namespace specter {

inline constexpr int kExitOk = 0;
inline constexpr int kExitAssertion = 1;  // assertion failed or witness found
inline constexpr int kExitUsage = 2;

// args excludes the program name. Never throws.
int run_subcommand(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
                   std::ostream& err);

}  // namespace specter

#endif  // SPECTER_CLI_HPP
