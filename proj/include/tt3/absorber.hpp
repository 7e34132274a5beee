#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tt3/exact_solver.hpp"
#include "tt3/graph.hpp"
#include "tt3/links.hpp"

namespace tt3 {

// 18 vertices that tile on their own and together with the ordered triple x,
// so swapping tiling_u for tiling_ux absorbs x into any tiling that already
// covers everything else.
struct AbsorbingSet {
    std::array<int, 3> x{-1, -1, -1};
    std::vector<int> u;
    Tiling tiling_u;   // 6 tiles covering exactly u
    Tiling tiling_ux;  // 7 tiles covering exactly u plus x
};

bool absorbing_set_ok(const OrientedGraph& g, const AbsorbingSet& a);

// Randomized gadget search: a triangle disjoint from x, then for each corner
// a 2-link chain to the matching x_i; the chain heads tile u, the chain tails
// plus the triangle tile u and x. nullopt when the budget runs out or some
// x_i lies in no transitive triangle at all.
std::optional<AbsorbingSet> find_absorbing_set(const OrientedGraph& g, std::array<int, 3> x,
                                               SearchBudget budget = {}, std::uint64_t seed = 0,
                                               const Bitset* forbidden = nullptr);

// A reusable absorbing 18-set: tiles on its own, and absorbs a triple t
// whenever G[u + t] tiles.
struct AbsorberCore {
    std::vector<int> u;
    Tiling tiling_u;
};

// Solves G[core.u + x] exactly; nullopt when no tiling exists (or the triple
// overlaps the core).
std::optional<AbsorbingSet> make_absorbing_set(const OrientedGraph& g, const AbsorberCore& core,
                                               std::array<int, 3> x, SolveBudget budget = {});

struct AbsorberConfig {
    int reserve_count = 3;     // disjoint cores required per sampled triple
    int coverage_triples = 100;
    int probe_triples = 8;     // quick screen while building a core
    int probe_min = 6;
    int core_attempts = 50;    // absorbing-set searches per core slot
    SearchBudget link_budget{2000, 5'000};
    SolveBudget solve_budget{};
};

struct CoverageEntry {
    std::array<int, 3> triple{-1, -1, -1};
    std::vector<int> core_ids;  // cores that absorb it
};

struct AbsorberBuild {
    bool ok = false;
    std::vector<AbsorberCore> cores;
    std::vector<int> u_all;  // sorted union of the cores
    std::vector<CoverageEntry> coverage;
    std::array<int, 3> weakest_triple{-1, -1, -1};
    int weakest_count = 0;
    int capacity = 0;  // core slots allowed by sigma
    std::uint64_t seed = 0;
    std::string note;
};

// Builds up to floor(3*sigma*n)/18 pairwise disjoint cores, then samples
// coverage_triples random triples outside the cores and checks each is
// absorbed by at least reserve_count cores. ok reflects that coverage check;
// a failed build is data, not an exception.
AbsorberBuild build_absorber(const OrientedGraph& g, double sigma, std::uint64_t seed,
                             const AbsorberConfig& cfg = {});

}  // namespace tt3
