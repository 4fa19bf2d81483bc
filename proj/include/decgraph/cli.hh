#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace decgraph
{
    /// Exit codes shared by every subcommand.
    enum ExitCode : int
    {
        exit_positive = 0,
        exit_negative = 1,
        exit_invalid = 2,
        exit_budget = 3
    };

    /// Runs the command line; args[0] is the program name.
    auto run_cli(const std::vector<std::string> & args, std::ostream & out, std::ostream & err) -> int;

    /// Filesystem-safe spelling of a token: [A-Za-z0-9_-] kept, other bytes as ~XX.
    auto sanitize_filename(const std::string & text) -> std::string;
}
