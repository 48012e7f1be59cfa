#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace permprime::cli {

// Runs one command. args excludes the program name. Returns the process
// exit code: 0 success (Composite verdicts are answers, not failures),
// 1 invalid usage, 2 a work budget was exceeded (Unknown under --strict,
// or a factoring/search budget ran out).
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

} // namespace permprime::cli
