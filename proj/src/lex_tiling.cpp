#include "tt3/lex_tiling.hpp"

#include <algorithm>
#include <cassert>
#include <optional>

namespace tt3 {

namespace {

struct Repack {
    std::vector<DirectedPath> paths;
    std::vector<std::pair<int, int>> arcs;
    std::vector<int> singles;

    std::pair<int, int> pf() const {
        return {static_cast<int>(paths.size()), static_cast<int>(arcs.size())};
    }
};

// Greedy lexicographic decomposition of the uncovered set into directed
// 3-paths, then arcs, then singletons. Vertices only leave the free pool, so
// a remaining all-free path or arc would have been found when its first
// vertex was scanned: one pass per layer yields a maximal layer.
Repack repack(const OrientedGraph& g, const std::vector<int>& r) {
    Repack out;
    int m = static_cast<int>(r.size());
    std::vector<char> used(m, 0);
    for (int i = 0; i < m; ++i) {
        if (used[i]) continue;
        bool taken = false;
        for (int j = 0; j < m && !taken; ++j) {
            if (j == i || used[j] || !g.has_arc(r[i], r[j])) continue;
            for (int k = 0; k < m; ++k) {
                if (k == i || k == j || used[k] || !g.has_arc(r[j], r[k])) continue;
                out.paths.push_back({r[i], r[j], r[k]});
                used[i] = used[j] = used[k] = 1;
                taken = true;
                break;
            }
        }
    }
    for (int i = 0; i < m; ++i) {
        if (used[i]) continue;
        for (int j = 0; j < m; ++j) {
            if (j == i || used[j] || !g.has_arc(r[i], r[j])) continue;
            out.arcs.emplace_back(r[i], r[j]);
            used[i] = used[j] = 1;
            break;
        }
    }
    for (int i = 0; i < m; ++i)
        if (!used[i]) out.singles.push_back(r[i]);
    return out;
}

struct LexSearch {
    const OrientedGraph& g;
    int n;
    Bitset covered;
    Tiling tiles;
    long long budget;
    long long scanned = 0;
    bool exceeded = false;

    LexSearch(const OrientedGraph& graph, long long move_budget)
        : g(graph), n(graph.order()), covered(n > 0 ? n : 1), budget(move_budget) {}

    bool charge() {
        ++scanned;
        if (scanned > budget) {
            exceeded = true;
            return false;
        }
        return true;
    }

    std::vector<int> uncovered() const {
        std::vector<int> r;
        for (int v = 0; v < n; ++v)
            if (!covered.test(v)) r.push_back(v);
        return r;
    }

    void take(const TransitiveTriangle& t) {
        tiles.push_back(t);
        for (int v : t.vertices()) covered.set(v);
    }

    // lexicographically first TT within r; with must >= 0 only triples
    // containing that vertex are scanned
    std::optional<TransitiveTriangle> tt_in(const std::vector<int>& r, int must) {
        if (must < 0) {
            for (size_t i = 0; i < r.size(); ++i)
                for (size_t j = i + 1; j < r.size(); ++j)
                    for (size_t k = j + 1; k < r.size(); ++k) {
                        if (!charge()) return std::nullopt;
                        if (auto t = g.tt_on(r[i], r[j], r[k])) return t;
                    }
            return std::nullopt;
        }
        for (size_t i = 0; i < r.size(); ++i) {
            if (r[i] == must) continue;
            for (size_t j = i + 1; j < r.size(); ++j) {
                if (r[j] == must) continue;
                if (!charge()) return std::nullopt;
                if (auto t = g.tt_on(must, r[i], r[j])) return t;
            }
        }
        return std::nullopt;
    }

    struct Swap {
        int tile;      // index into tiles
        int out_v;     // vertex leaving the tile (uncovered afterwards)
        int in_v;      // uncovered vertex entering the tile
        TransitiveTriangle replacement;
    };

    void apply(const Swap& s) {
        tiles[s.tile] = s.replacement;
        covered.reset(s.out_v);
        covered.set(s.in_v);
    }

    void unapply(const Swap& s, const TransitiveTriangle& original) {
        tiles[s.tile] = original;
        covered.set(s.out_v);
        covered.reset(s.in_v);
    }

    // enumerate valid swaps of one tile vertex for one uncovered vertex
    template <typename F>
    bool for_each_swap(const std::vector<int>& r, F&& fn) {
        for (int ti = 0; ti < static_cast<int>(tiles.size()); ++ti) {
            auto vs = tiles[ti].vertices();
            for (int pos = 0; pos < 3; ++pos) {
                int keep1 = vs[(pos + 1) % 3], keep2 = vs[(pos + 2) % 3];
                for (int x : r) {
                    if (!charge()) return false;
                    auto rep = g.tt_on(keep1, keep2, x);
                    if (!rep) continue;
                    if (fn(Swap{ti, vs[pos], x, *rep})) return true;
                }
            }
        }
        return false;
    }
};

std::vector<int> swapped_set(const std::vector<int>& r, int drop, int add) {
    std::vector<int> out;
    out.reserve(r.size());
    for (int v : r)
        if (v != drop) out.push_back(v);
    out.insert(std::lower_bound(out.begin(), out.end(), add), add);
    return out;
}

}  // namespace

PartialCover lex_max_tiling(const OrientedGraph& g, long long move_budget) {
    LexSearch st(g, move_budget);
    PartialCover pc;
    pc.n = g.order();
    pc.min_semidegree = g.order() > 0 ? g.min_semidegree() : 0;

    // greedy start: disjoint TTs in lexicographic order
    for (const auto& t : g.transitive_triangles()) {
        auto vs = t.vertices();
        if (st.covered.test(vs[0]) || st.covered.test(vs[1]) || st.covered.test(vs[2])) continue;
        st.take(t);
    }

    auto log_potential = [&]() {
        auto r = st.uncovered();
        auto rp = repack(g, r);
        pc.potential_log.push_back({static_cast<int>(st.tiles.size()),
                                    static_cast<int>(rp.paths.size()),
                                    static_cast<int>(rp.arcs.size())});
        ++pc.accepted_moves;
    };

    log_potential();
    pc.accepted_moves = 0;  // the greedy start is not a move

    // fixation loop: cheapest improving move first, restart after any
    // acceptance so later (costlier) phases always run from a state the
    // earlier ones cannot improve
    bool progress = true;
    while (progress && !st.exceeded) {
        progress = false;
        auto r = st.uncovered();

        // direct: a transitive triangle among the uncovered vertices
        if (auto t = st.tt_in(r, -1)) {
            st.take(*t);
            log_potential();
            progress = true;
            continue;
        }
        if (st.exceeded) break;

        // depth 1: swap, then a TT through the vertex the swap released
        // (any TT avoiding it lies in r, which phase 1 just ruled out)
        bool done = st.for_each_swap(r, [&](const LexSearch::Swap& s1) {
            auto orig = st.tiles[s1.tile];
            st.apply(s1);
            auto r1 = swapped_set(r, s1.in_v, s1.out_v);
            if (auto t = st.tt_in(r1, s1.out_v)) {
                st.take(*t);
                return true;
            }
            st.unapply(s1, orig);
            return false;
        });
        if (done) {
            log_potential();
            progress = true;
            continue;
        }
        if (st.exceeded) break;

        // depth 2: two swaps, then a TT through the second released vertex
        done = st.for_each_swap(r, [&](const LexSearch::Swap& s1) {
            auto orig1 = st.tiles[s1.tile];
            st.apply(s1);
            auto r1 = swapped_set(r, s1.in_v, s1.out_v);
            bool inner = st.for_each_swap(r1, [&](const LexSearch::Swap& s2) {
                auto orig2 = st.tiles[s2.tile];
                st.apply(s2);
                auto r2 = swapped_set(r1, s2.in_v, s2.out_v);
                if (auto t = st.tt_in(r2, s2.out_v)) {
                    st.take(*t);
                    return true;
                }
                st.unapply(s2, orig2);
                return false;
            });
            if (inner) return true;
            st.unapply(s1, orig1);
            return false;
        });
        if (done) {
            log_potential();
            progress = true;
            continue;
        }
        if (st.exceeded) break;

        // tile count is locally maximal; try a swap that improves the greedy
        // path/arc repack of the uncovered set
        auto base = repack(g, r).pf();
        done = st.for_each_swap(r, [&](const LexSearch::Swap& s1) {
            auto r1 = swapped_set(r, s1.in_v, s1.out_v);
            if (repack(g, r1).pf() > base) {
                st.apply(s1);
                return true;
            }
            return false;
        });
        if (done) {
            log_potential();
            progress = true;
        }
    }

    auto rp = repack(g, st.uncovered());
    pc.tiles = std::move(st.tiles);
    pc.paths = std::move(rp.paths);
    pc.arcs = std::move(rp.arcs);
    pc.singles = std::move(rp.singles);
    pc.move_budget_exceeded = st.exceeded;
    pc.moves_scanned = st.scanned;

    for (size_t i = 1; i < pc.potential_log.size(); ++i)
        assert(pc.potential_log[i] > pc.potential_log[i - 1]);
    return pc;
}

CoverValidation validate_partial_cover(const OrientedGraph& g, const PartialCover& pc) {
    Bitset seen(g.order() > 0 ? g.order() : 1);
    int count = 0;
    auto touch = [&](int v, const char* where) -> const char* {
        if (v < 0 || v >= g.order()) return "vertex out of range";
        if (seen.test(v)) return where;
        seen.set(v);
        ++count;
        return nullptr;
    };
    for (const auto& t : pc.tiles) {
        for (int v : t.vertices())
            if (auto* r = touch(v, "overlapping tile")) return {false, r};
        if (!g.has_arc(t.source, t.middle) || !g.has_arc(t.middle, t.sink) ||
            !g.has_arc(t.source, t.sink))
            return {false, "tile is not a transitive triangle"};
    }
    for (const auto& p : pc.paths) {
        for (int v : {p.a, p.b, p.c})
            if (auto* r = touch(v, "overlapping path")) return {false, r};
        if (!g.has_arc(p.a, p.b) || !g.has_arc(p.b, p.c))
            return {false, "path element is not a directed path"};
    }
    for (auto [u, v] : pc.arcs) {
        if (auto* r = touch(u, "overlapping arc")) return {false, r};
        if (auto* r = touch(v, "overlapping arc")) return {false, r};
        if (!g.has_arc(u, v)) return {false, "arc element is not an arc"};
    }
    for (int v : pc.singles)
        if (auto* r = touch(v, "overlapping singleton")) return {false, r};
    if (count != g.order()) return {false, "cover does not span the vertex set"};
    return {true, ""};
}

CoverBoundsReport cover_structure_bounds(const PartialCover& pc) {
    CoverBoundsReport rep;
    rep.p_count = static_cast<int>(pc.paths.size());
    rep.f_count = static_cast<int>(pc.arcs.size());
    rep.i_count = static_cast<int>(pc.singles.size());
    rep.hypothesis_holds = 18 * pc.min_semidegree >= 7 * pc.n;
    rep.p_ok = rep.p_count <= 2;
    rep.f_ok = rep.f_count <= 1;
    rep.i_ok = rep.i_count <= 3;
    rep.flagged = !(rep.p_ok && rep.f_ok && rep.i_ok);
    return rep;
}

}  // namespace tt3
