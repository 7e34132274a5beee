#pragma once

// Brute-force reference implementations for cross-checking the solvers on
// small instances. Deliberately simple recursions over raw vertex sets with
// no pruning beyond feasibility.

#include <optional>
#include <vector>

#include "tt3/graph.hpp"
#include "tt3/matching.hpp"

namespace oracle {

inline bool naive_perfect_rec(const tt3::OrientedGraph& g, std::vector<bool>& used, int covered,
                              tt3::Tiling& out) {
    int n = g.order();
    if (covered == n) return true;
    int v = 0;
    while (used[v]) ++v;
    for (int a = 0; a < n; ++a) {
        if (used[a] || a == v) continue;
        for (int b = a + 1; b < n; ++b) {
            if (used[b] || b == v) continue;
            auto tt = g.tt_on(v, a, b);
            if (!tt) continue;
            used[v] = used[a] = used[b] = true;
            out.push_back(*tt);
            if (naive_perfect_rec(g, used, covered + 3, out)) return true;
            out.pop_back();
            used[v] = used[a] = used[b] = false;
        }
    }
    return false;
}

inline std::optional<tt3::Tiling> naive_perfect_tiling(const tt3::OrientedGraph& g) {
    if (g.order() % 3 != 0) return std::nullopt;
    std::vector<bool> used(g.order(), false);
    tt3::Tiling out;
    if (naive_perfect_rec(g, used, 0, out)) return out;
    return std::nullopt;
}

inline int naive_max_rec(const tt3::OrientedGraph& g, std::vector<bool>& used, int from) {
    int n = g.order();
    int v = from;
    while (v < n && used[v]) ++v;
    if (v >= n) return 0;
    used[v] = true;
    int best = naive_max_rec(g, used, v + 1);  // leave v uncovered
    for (int a = 0; a < n; ++a) {
        if (used[a]) continue;
        for (int b = a + 1; b < n; ++b) {
            if (used[b]) continue;
            if (!g.tt_on(v, a, b)) continue;
            used[a] = used[b] = true;
            best = std::max(best, 1 + naive_max_rec(g, used, v + 1));
            used[a] = used[b] = false;
        }
    }
    used[v] = false;
    return best;
}

// Maximum number of vertex-disjoint transitive triangles, by full recursion.
inline int naive_max_tiling_size(const tt3::OrientedGraph& g) {
    std::vector<bool> used(g.order(), false);
    return naive_max_rec(g, used, 0);
}

inline int naive_matching_rec(const tt3::SimpleGraph& g, std::vector<bool>& used, int from) {
    int n = g.order();
    int v = from;
    while (v < n && used[v]) ++v;
    if (v >= n) return 0;
    used[v] = true;
    int best = naive_matching_rec(g, used, v + 1);
    for (int u = 0; u < n; ++u) {
        if (used[u] || !g.has_edge(v, u)) continue;
        used[u] = true;
        best = std::max(best, 1 + naive_matching_rec(g, used, v + 1));
        used[u] = false;
    }
    used[v] = false;
    return best;
}

// Maximum matching size in a simple graph by full recursion.
inline int naive_max_matching_size(const tt3::SimpleGraph& g) {
    std::vector<bool> used(g.order(), false);
    return naive_matching_rec(g, used, 0);
}

}  // namespace oracle
