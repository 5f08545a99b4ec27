#pragma once

#include <string>

#include "reson/config.hpp"

namespace reson {

// 0 success, 2 solver non-convergence (partial results in `output`),
// 3 invalid configuration.
struct RunResult {
    int exit_code = 0;
    std::string output;  // rendered table (csv or json)
    std::string log;     // verbose diagnostics
};

RunResult run(const RunConfig& cfg);

}  // namespace reson
