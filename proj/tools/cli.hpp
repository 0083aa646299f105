#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace coh::cli {

/// Dispatches one command line (without the program name). Returns the
/// process exit status: 0 for success and positive verdicts, 1 for
/// negative verdicts (NotEqual, ModelDistinct, unreachable, failed
/// checks), 2 for usage, parse, typing and budget errors.
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

} // namespace coh::cli
