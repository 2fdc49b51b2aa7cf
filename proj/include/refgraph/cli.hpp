#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "refgraph/io.hpp"

namespace refgraph {

enum ExitCode : int { kExitOk = 0, kExitNegative = 1, kExitUsage = 2, kExitInconclusive = 3 };

/// Runs one command. `args` excludes the program name. The JSON envelope
/// {command, args, result | error, exit_code} goes to `out` (as JSON or as
/// text rendered from it); usage errors go to `err`. Returns the exit code.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Text form of an envelope; depends on nothing but the JSON.
std::string render_text(const json& envelope);

}  // namespace refgraph
