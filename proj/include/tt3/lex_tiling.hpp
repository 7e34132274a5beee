#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "tt3/graph.hpp"

namespace tt3 {

struct DirectedPath {
    int a, b, c;  // arcs a->b and b->c
    bool operator==(const DirectedPath&) const = default;
};

// Disjoint cover of V(G) by tiles, directed 3-paths, arcs, and singletons,
// locally maximal in (|tiles|, |paths|, |arcs|) under the move search of
// lex_max_tiling.
struct PartialCover {
    Tiling tiles;
    std::vector<DirectedPath> paths;
    std::vector<std::pair<int, int>> arcs;
    std::vector<int> singles;

    int n = 0;
    int min_semidegree = 0;
    bool move_budget_exceeded = false;
    long long moves_scanned = 0;
    int accepted_moves = 0;
    // potential (|tiles|, |paths|, |arcs|) after each accepted move
    std::vector<std::array<int, 3>> potential_log;

    std::array<int, 3> potential() const {
        return {static_cast<int>(tiles.size()), static_cast<int>(paths.size()),
                static_cast<int>(arcs.size())};
    }
    // vertices not covered by tiles
    int leftover() const {
        return 3 * static_cast<int>(paths.size()) + 2 * static_cast<int>(arcs.size()) +
               static_cast<int>(singles.size());
    }
};

struct CoverValidation {
    bool valid = false;
    std::string reason;
};

CoverValidation validate_partial_cover(const OrientedGraph& g, const PartialCover& pc);

// Local search maximizing (|T|,|P|,|F|) lexicographically: greedy start, then
// accepted moves of four kinds until fixation: take any transitive triangle
// among uncovered vertices; a tile-vertex/uncovered-vertex swap that enables
// one (depth 1 or 2); a swap that improves the greedy path/arc repack; with
// paths and arcs always re-derived greedily from the uncovered set.
// move_budget caps candidate evaluations; exceeding it returns the best cover
// so far with move_budget_exceeded set.
PartialCover lex_max_tiling(const OrientedGraph& g, long long move_budget = 4'000'000);

struct CoverBoundsReport {
    int p_count = 0, f_count = 0, i_count = 0;
    bool hypothesis_holds = false;  // 18 * min_semidegree >= 7 * n
    bool p_ok = false, f_ok = false, i_ok = false;  // |P|<=2, |F|<=1, |I|<=3
    bool flagged = false;                           // some bound violated
};

// Diagnostic: a locally maximal cover of a dense-enough graph is expected to
// have |P| <= 2, |F| <= 1, |I| <= 3; violations are flagged, not fatal.
CoverBoundsReport cover_structure_bounds(const PartialCover& pc);

}  // namespace tt3
