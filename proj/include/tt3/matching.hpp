#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "tt3/bitset.hpp"
#include "tt3/graph.hpp"

namespace tt3 {

struct SizeMismatch : GraphError {
    SizeMismatch(int nx, int ny)
        : GraphError("bipartite sides differ: |X|=" + std::to_string(nx) +
                     " |Y|=" + std::to_string(ny)) {}
};

// Undirected host for the matching routines.
class SimpleGraph {
public:
    explicit SimpleGraph(int n) : n_(n), adj_(n, Bitset(n)) {}

    static SimpleGraph underlying(const OrientedGraph& g);

    int order() const { return n_; }
    bool has_edge(int u, int v) const { return adj_[u].test(v); }
    void add_edge(int u, int v);
    const Bitset& nbrs(int v) const { return adj_[v]; }
    int degree(int v) const { return adj_[v].count(); }
    int min_degree() const;
    long long edge_count() const;

private:
    int n_;
    std::vector<Bitset> adj_;
};

struct Matching {
    std::vector<std::pair<int, int>> edges;
    int size() const { return (int)edges.size(); }
};

// Maximum-cardinality matching via augmenting-path search with blossom
// contraction (greedy start). O(V^3), plenty at this scale.
Matching max_matching(const SimpleGraph& g);

// X-side indexed [0,nx), Y-side [0,ny); adj[x] is a subset of the Y side.
struct BipartiteGraph {
    int nx = 0, ny = 0;
    std::vector<Bitset> adj;

    BipartiteGraph(int nx, int ny) : nx(nx), ny(ny), adj(nx, Bitset(ny)) {}
    void add_edge(int x, int y) { adj[x].set(y); }
    int xdeg(int x) const { return adj[x].count(); }
    int ydeg(int y) const {
        int d = 0;
        for (int x = 0; x < nx; ++x) d += adj[x].test(y);
        return d;
    }
};

struct HallResult {
    // Exactly one branch is populated: a perfect matching (pairs (x,y)), or a
    // witness X' with |N(X')| < |X'|.
    std::optional<Matching> matching;
    std::vector<int> violating_set;
    std::vector<int> violating_nbrs;

    bool perfect() const { return matching.has_value(); }
};

HallResult hall_perfect_matching(const BipartiteGraph& b);

// Maximum bipartite matching as x->y assignment (-1 when unmatched); helper
// shared with hall_perfect_matching, also used directly on unbalanced sides.
std::vector<int> max_bipartite_matching(const BipartiteGraph& b);

// Seeded uniform split into halves whose sizes differ by at most one (odd
// inputs place the extra element on a random side).
std::pair<std::vector<int>, std::vector<int>> random_equitable_split(const std::vector<int>& set,
                                                                     std::uint64_t seed);

}  // namespace tt3
