#ifndef SIC_TOOLS_CLI_H_
#define SIC_TOOLS_CLI_H_

#include <iosfwd>

namespace sic::cli {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitIo = 2;
inline constexpr int kExitNumerical = 3;

// Entry point shared by the `sic` binary and the CLI tests.
int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err);

}  // namespace sic::cli

#endif  // SIC_TOOLS_CLI_H_
