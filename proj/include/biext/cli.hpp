#pragma once

// Command-line front end: subcommands produce deterministic JSON reports.

#include <string>
#include <vector>

namespace biext {

struct CommandResult {
    int exit_code = 0;   // 0 success, 1 computation failure, 2 input error
    std::string output;  // report document or help text
    std::string error;
};

/// `args` excludes the program name.
CommandResult run_command(const std::vector<std::string>& args);

/// Motive file used by `check --builtin`.
const std::string& builtin_motive_file();

}  // namespace biext
