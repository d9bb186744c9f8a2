// cli.hpp — command-line entry point, callable in-process for tests.
//
// Subcommands: run (execute a configured experiment), oracle (print
// per-task solution-cell counts), report (compare experiment directories),
// dump-stats (summarize an archive dump). Exit codes are a stable contract:
// 0 success, 1 config/domain/runtime error with a diagnostic on stderr,
// 2 usage error with the usage text.
#pragma once

namespace mtmb {

int cli_main(int argc, const char* const* argv);

} // namespace mtmb
