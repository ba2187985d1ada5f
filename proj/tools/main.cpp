#include "biext/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    const std::vector<std::string> args(argv + 1, argv + argc);
    const biext::CommandResult r = biext::run_command(args);
    std::cout << r.output;
    if (!r.error.empty()) std::cerr << "error: " << r.error << "\n";
    return r.exit_code;
}
