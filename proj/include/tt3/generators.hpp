#pragma once

#include <cstdint>
#include <optional>

#include "tt3/graph.hpp"

namespace tt3 {

struct BadN : GraphError {
    explicit BadN(const std::string& what) : GraphError(what) {}
};
struct Exhausted : GraphError {
    explicit Exhausted(int tries)
        : GraphError("sampling exhausted after " + std::to_string(tries) + " tries"), tries(tries) {}
    int tries;
};

struct ExtremalSpec {
    int n;
    std::array<int, 3> w_sizes;
    int u1_size, u2_size;

    static ExtremalSpec for_order(int n);
};

struct CFamilySpec {
    int m;
    int n;  // 18m
    // block layout: W1 = [0,4m), W2 = [4m,8m), W3 = [8m,12m), U = [12m,18m)
};

struct GeneratedGraph {
    OrientedGraph graph;
    VertexSetPartition partition;
};

// Five-block family with no perfect tiling: every transitive triangle meets
// U1 ∪ U2 and |U1 ∪ U2| = n/3 - 1. Blocks occupy consecutive id ranges in
// order W1, W2, W3, U1, U2.
GeneratedGraph extremal_graph(int n);

// Complete cyclic tripartite graph, parts of size floor((n+i-1)/3).
GeneratedGraph cyclic_blowup(int n);

// n = 18m: independent U of size 6m, cyclic blow-up W with parts of size 4m,
// every w in W with exactly 3m out- and 3m in-arcs to U (seed-deterministic
// circulant pattern with U relabeled by a seeded permutation).
GeneratedGraph c_family_graph(int m, std::uint64_t seed);

// Each unordered pair independently: u->v w.p. arc_prob/2, v->u w.p.
// arc_prob/2, no arc otherwise.
OrientedGraph random_oriented_graph(int n, double arc_prob, std::uint64_t seed);
OrientedGraph random_tournament(int n, std::uint64_t seed);

// Rejection-samples random_oriented_graph(n, arc_prob, ...) until the minimum
// semidegree reaches d. Throws Exhausted after max_tries failures.
OrientedGraph random_with_min_semidegree(int n, int d, std::uint64_t seed, int max_tries,
                                         double arc_prob = 1.0);
std::optional<OrientedGraph> try_random_with_min_semidegree(int n, int d, std::uint64_t seed,
                                                            int max_tries, double arc_prob = 1.0);

// Deletes a seeded random maximal set of arcs subject to: every vertex loses
// at most per_vertex_budget incident arcs.
OrientedGraph perturb(const OrientedGraph& g, int per_vertex_budget, std::uint64_t seed);

}  // namespace tt3
