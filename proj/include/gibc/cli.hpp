#ifndef GIBC_CLI_HPP
#define GIBC_CLI_HPP

namespace gibc {

/// Runs the command-line front end. Exit codes: 0 success, 1 usage or
/// argument error, 2 numerical failure (surfaced in the JSON summary).
int cli_run(int argc, const char* const* argv);

} // namespace gibc

#endif
