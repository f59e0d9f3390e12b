#ifndef PARETO_JUDGE_CLI_HPP
#define PARETO_JUDGE_CLI_HPP

#include <iosfwd>
#include <span>
#include <string>

namespace pareto_judge::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalidInput = 1;
inline constexpr int kExitUsage = 2;

// Runs one subcommand. `args` excludes the program name. Regular output goes
// to `out`, diagnostics to `err`.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

} // namespace pareto_judge::cli

#endif // PARETO_JUDGE_CLI_HPP
