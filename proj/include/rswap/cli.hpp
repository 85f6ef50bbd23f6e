#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rswap::cli {

enum ExitCode : int {
    ok = 0,
    check_failed = 1,
    input_error = 2,  // parse or domain error
    arbitrage = 3,    // scan raised at least one flag
    usage = 64,
};

/// Runs the command line; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rswap::cli
