#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tt3/absorber.hpp"
#include "tt3/lex_tiling.hpp"

namespace tt3 {

struct NonextremalConfig {
    double sigma = 0.2;  // absorber share of the vertex set, before rounding
    int retries = 3;
    long long lex_move_budget = 4'000'000;
    AbsorberConfig absorber{};
    SolveBudget solve_budget{};
};

// One end-to-end run: absorber construction, lex cover of the remainder,
// leftover absorption. failed_stage is "build-absorber" or "absorb-leftover";
// trace records per-attempt progress, leftover and capacity describe the last
// attempt.
struct NonextremalOutcome {
    bool success = false;
    Tiling tiling;
    std::string failed_stage;
    std::string detail;
    std::vector<std::string> trace;
    std::uint64_t seed = 0;
    int leftover = 0;
    int capacity = 0;
    long long wall_ms = 0;
};

NonextremalOutcome nonextremal_tile(const OrientedGraph& g, std::uint64_t seed,
                                    const NonextremalConfig& cfg = {});

}  // namespace tt3
