#pragma once

/*
 * Command dispatch shared by the CLI binary and the tests. Every command
 * produces the same report twice: a deterministic text rendering and a
 * schema-stable JSON document (identical across runs except for the
 * top-level timing_ms field).
 *
 * Exit codes: 0 certified/verified, 1 refuted (witness in the report),
 * 2 inconclusive, 3 input error.
 */

#include <string>
#include <vector>

namespace csl {

struct RunResult {
    int exit_code = 3;
    std::string text;
    std::string json;
};

RunResult run(const std::vector<std::string>& args);

} // namespace csl
