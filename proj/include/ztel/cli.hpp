#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ztel {

// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerdict = 1;  // a check or decay verdict failed
inline constexpr int kExitConfig = 2;   // bad config, bad arguments, NotUnimodular

// Runs the tool; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// The committed Heisenberg fixture config, embedded at build time.
const char* embedded_heisenberg_config();

}  // namespace ztel
