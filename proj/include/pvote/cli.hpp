#pragma once

namespace pvote {

// Dispatches the subcommands (constants | bounds | gen-instance | simulate |
// oracle | verify-dual | sweep). Returns 0 on success, 1 on validation or
// domain failure, 2 on usage errors.
int run_cli(int argc, const char* const* argv);

}  // namespace pvote
