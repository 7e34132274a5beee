#include "tt3/graph.hpp"

#include <algorithm>

namespace tt3 {

const std::vector<int>& VertexSetPartition::block(const std::string& name) const {
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return blocks[i];
    throw std::out_of_range("no partition block named " + name);
}

OrientedGraph::OrientedGraph(int n)
    : n_(n), out_(n, Bitset(n)), in_(n, Bitset(n)), outdeg_(n, 0), indeg_(n, 0) {
    if (n < 0) throw GraphError("negative vertex count");
}

void OrientedGraph::add_arc(int u, int v) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) throw LoopRejected(u);
    if (out_[v].test(u)) throw OrientationConflict(u, v);
    if (out_[u].test(v)) throw DuplicateArc(u, v);
    out_[u].set(v);
    in_[v].set(u);
    ++outdeg_[u];
    ++indeg_[v];
    ++arcs_;
}

bool OrientedGraph::remove_arc(int u, int v) {
    check_vertex(u);
    check_vertex(v);
    if (!out_[u].test(v)) return false;
    out_[u].reset(v);
    in_[v].reset(u);
    --outdeg_[u];
    --indeg_[v];
    --arcs_;
    return true;
}

int OrientedGraph::min_semidegree() const {
    if (n_ == 0) throw GraphError("min_semidegree of empty graph");
    int d = n_;
    for (int v = 0; v < n_; ++v) d = std::min(d, std::min(outdeg_[v], indeg_[v]));
    return d;
}

int OrientedGraph::min_degree() const {
    if (n_ == 0) throw GraphError("min_degree of empty graph");
    int d = n_;
    for (int v = 0; v < n_; ++v) d = std::min(d, deg(v));
    return d;
}

int OrientedGraph::max_degree() const {
    int d = 0;
    for (int v = 0; v < n_; ++v) d = std::max(d, deg(v));
    return d;
}

std::optional<TransitiveTriangle> OrientedGraph::tt_on(int a, int b, int c) const {
    if (!adjacent(a, b) || !adjacent(b, c) || !adjacent(a, c)) return std::nullopt;
    // All three pairs adjacent: the triangle is transitive iff not a 3-cycle,
    // and then the roles are forced by local outdegree (2 = source, 0 = sink).
    for (int s : {a, b, c}) {
        int m = -1, t = -1;
        for (int x : {a, b, c}) {
            if (x == s) continue;
            (m == -1 ? m : t) = x;
        }
        if (has_arc(s, m) && has_arc(s, t)) {
            if (has_arc(m, t)) return TransitiveTriangle{s, m, t};
            return TransitiveTriangle{s, t, m};
        }
    }
    return std::nullopt;  // cyclic
}

std::vector<TransitiveTriangle> OrientedGraph::transitive_triangles() const {
    std::vector<TransitiveTriangle> out;
    for (int s = 0; s < n_; ++s) {
        out_[s].for_each([&](int m) {
            (out_[s] & out_[m]).for_each([&](int t) { out.push_back({s, m, t}); });
        });
    }
    return out;
}

long long OrientedGraph::count_transitive_triangles() const {
    long long c = 0;
    for (int s = 0; s < n_; ++s)
        out_[s].for_each([&](int m) { c += out_[s].count_and(out_[m]); });
    return c;
}

std::vector<std::array<int, 3>> OrientedGraph::cyclic_triangles() const {
    std::vector<std::array<int, 3>> out;
    for (int a = 0; a < n_; ++a) {
        for (int b = out_[a].next(a + 1); b >= 0; b = out_[a].next(b + 1)) {
            Bitset closing = out_[b] & in_[a];
            for (int c = closing.next(a + 1); c >= 0; c = closing.next(c + 1))
                out.push_back({a, b, c});
        }
    }
    return out;
}

OrientedGraph OrientedGraph::induced(const std::vector<int>& verts, std::vector<int>* old_of) const {
    OrientedGraph h((int)verts.size());
    std::vector<int> new_of(n_, -1);
    for (std::size_t i = 0; i < verts.size(); ++i) {
        check_vertex(verts[i]);
        if (new_of[verts[i]] != -1) throw GraphError("induced: repeated vertex " + std::to_string(verts[i]));
        new_of[verts[i]] = (int)i;
    }
    for (std::size_t i = 0; i < verts.size(); ++i)
        out_[verts[i]].for_each([&](int w) {
            if (new_of[w] != -1) h.add_arc((int)i, new_of[w]);
        });
    if (old_of) *old_of = verts;
    return h;
}

OrientedGraph OrientedGraph::induced(const Bitset& s, std::vector<int>* old_of) const {
    return induced(s.to_vector(), old_of);
}

TilingValidation validate_tiling(const OrientedGraph& g, const Tiling& t) {
    TilingValidation r;
    std::vector<char> used(g.order(), 0);
    for (const auto& tile : t) {
        for (int v : tile.vertices()) {
            if (v < 0 || v >= g.order()) {
                r.reason = "tile vertex out of range: " + std::to_string(v);
                return r;
            }
            if (used[v]) {
                r.reason = "vertex " + std::to_string(v) + " covered twice";
                return r;
            }
            used[v] = 1;
        }
        if (!g.is_transitive_triangle(tile.source, tile.middle, tile.sink)) {
            r.reason = "triple (" + std::to_string(tile.source) + "," + std::to_string(tile.middle) +
                       "," + std::to_string(tile.sink) + ") is not a transitive triangle";
            return r;
        }
    }
    r.valid = true;
    r.perfect = 3 * (long long)t.size() == g.order();
    return r;
}

}  // namespace tt3
