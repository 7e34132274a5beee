#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tt3/bitset.hpp"

namespace tt3 {

struct GraphError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct LoopRejected : GraphError {
    explicit LoopRejected(int v) : GraphError("loop rejected at vertex " + std::to_string(v)) {}
};
struct OrientationConflict : GraphError {
    OrientationConflict(int u, int v)
        : GraphError("arc " + std::to_string(v) + "->" + std::to_string(u) +
                     " already present; cannot add " + std::to_string(u) + "->" + std::to_string(v)) {}
};
struct DuplicateArc : GraphError {
    DuplicateArc(int u, int v)
        : GraphError("arc " + std::to_string(u) + "->" + std::to_string(v) + " already present") {}
};
struct BadVertex : GraphError {
    explicit BadVertex(int v) : GraphError("vertex id out of range: " + std::to_string(v)) {}
};

// Transitive triangle with role order fixed: arcs source->middle, middle->sink,
// source->sink.
struct TransitiveTriangle {
    int source = -1, middle = -1, sink = -1;

    std::array<int, 3> vertices() const { return {source, middle, sink}; }
    bool operator==(const TransitiveTriangle&) const = default;
};

using Tiling = std::vector<TransitiveTriangle>;

struct VertexSetPartition {
    std::vector<std::string> names;
    std::vector<std::vector<int>> blocks;

    const std::vector<int>& block(const std::string& name) const;
};

class OrientedGraph {
public:
    OrientedGraph() : OrientedGraph(0) {}
    explicit OrientedGraph(int n);

    int order() const { return n_; }
    long long arc_count() const { return arcs_; }

    bool has_arc(int u, int v) const { return out_[u].test(v); }
    bool adjacent(int u, int v) const { return out_[u].test(v) || in_[u].test(v); }

    void add_arc(int u, int v);
    bool remove_arc(int u, int v);  // returns whether the arc existed

    int outdeg(int v) const { return outdeg_[v]; }
    int indeg(int v) const { return indeg_[v]; }
    int deg(int v) const { return outdeg_[v] + indeg_[v]; }

    const Bitset& out_nbrs(int v) const { return out_[v]; }
    const Bitset& in_nbrs(int v) const { return in_[v]; }
    Bitset nbrs(int v) const { return out_[v] | in_[v]; }

    // d^+(v, S), d^-(v, S), d(v, S)
    int outdeg_in(int v, const Bitset& s) const { return out_[v].count_and(s); }
    int indeg_in(int v, const Bitset& s) const { return in_[v].count_and(s); }
    int deg_in(int v, const Bitset& s) const { return outdeg_in(v, s) + indeg_in(v, s); }

    int min_semidegree() const;
    int min_degree() const;
    int max_degree() const;

    bool is_transitive_triangle(int s, int m, int t) const {
        return has_arc(s, m) && has_arc(m, t) && has_arc(s, t);
    }
    // Role discovery for an unordered vertex triple; nullopt if the three
    // vertices do not induce a transitive triangle.
    std::optional<TransitiveTriangle> tt_on(int a, int b, int c) const;

    // Lexicographic by (source, middle, sink); each TT once (roles are forced).
    std::vector<TransitiveTriangle> transitive_triangles() const;
    long long count_transitive_triangles() const;
    // Each directed 3-cycle once, as (a,b,c) with a minimal and arcs a->b->c->a.
    std::vector<std::array<int, 3>> cyclic_triangles() const;

    // Subgraph on verts; verts[i] becomes vertex i. old_of, when non-null,
    // receives the new->old relabeling map (a copy of verts).
    OrientedGraph induced(const std::vector<int>& verts, std::vector<int>* old_of = nullptr) const;
    OrientedGraph induced(const Bitset& s, std::vector<int>* old_of = nullptr) const;

    bool operator==(const OrientedGraph&) const = default;

private:
    void check_vertex(int v) const {
        if (v < 0 || v >= n_) throw BadVertex(v);
    }

    int n_ = 0;
    long long arcs_ = 0;
    std::vector<Bitset> out_, in_;
    std::vector<int> outdeg_, indeg_;
};

struct TilingValidation {
    bool valid = false;
    bool perfect = false;
    std::string reason;  // first violated constraint, empty when valid
};

TilingValidation validate_tiling(const OrientedGraph& g, const Tiling& t);

}  // namespace tt3
