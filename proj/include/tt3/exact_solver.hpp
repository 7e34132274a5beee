#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tt3/graph.hpp"

namespace tt3 {

struct SolveBudget {
    long long node_limit = 200'000'000;
    long long wall_ms = 60'000;

    static SolveBudget nodes(long long k) { return {k, 1ll << 40}; }
    static SolveBudget millis(long long ms) { return {1ll << 50, ms}; }
};

enum class SolveStatus { Tiling, NoTiling, BudgetExceeded };

const char* to_string(SolveStatus s);

struct SolveOutcome {
    SolveStatus status = SolveStatus::BudgetExceeded;
    Tiling tiling;  // populated iff status == Tiling
    long long nodes = 0;
    long long wall_ms = 0;
};

// Exact-cover search over all transitive triangles as candidate tiles.
// Definitive within budget; n not divisible by 3 answers NoTiling at once.
SolveOutcome find_perfect_tiling(const OrientedGraph& g, const SolveBudget& budget = {});

struct MaxTilingResult {
    Tiling tiling;
    bool optimal = false;  // proven within budget
    int upper_bound = 0;   // best bound established (== size when optimal)
    long long nodes = 0;
    long long wall_ms = 0;
};

// Branch and bound maximizing tile count; greedy lower bound; upper bounds
// from floor(remaining/3) and a greedy hitting set over live candidates.
MaxTilingResult max_tiling(const OrientedGraph& g, const SolveBudget& budget = {});

struct SmallExhaustiveReport {
    int n = 0;
    int min_semideg = 0;
    bool infeasible = false;  // 2d > n-1: no instance can exist
    bool supported = true;    // enumeration strategy available for (n, d)
    std::string note;
    long long instances = 0;
    long long tileable = 0;
    long long non_tileable = 0;  // counted only when n is divisible by 3
    std::vector<OrientedGraph> counterexamples;  // first few non-tileable instances
};

// Exhaustive labeled enumeration at micro scale. Supported regimes:
// n <= 5 with any bound (full 3^C(n,2) scan), and tournament-forcing bounds
// 2d = n-1 for n <= 9 (degree-constrained backtracking).
SmallExhaustiveReport decide_small_exhaustive(int n, int min_semideg);

}  // namespace tt3
