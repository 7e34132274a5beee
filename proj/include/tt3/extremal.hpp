#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tt3/bitset.hpp"
#include "tt3/graph.hpp"

namespace tt3 {

// Stage-tagged failures of the structured tiling pipeline.
struct ExtremalError : GraphError {
    std::string stage;
    ExtremalError(std::string st, const std::string& what) : GraphError(what), stage(std::move(st)) {}
};
struct NoCyclicTriangle : ExtremalError {
    explicit NoCyclicTriangle(const std::string& where)
        : ExtremalError("cyclic-partition", "no cyclic triangle in " + where) {}
};
struct PlacementFailed : ExtremalError {
    int vertex;
    explicit PlacementFailed(int v)
        : ExtremalError("cyclic-partition",
                        "vertex " + std::to_string(v) + " fits no part of the cyclic triple"),
          vertex(v) {}
};
struct BalanceFailed : ExtremalError {
    explicit BalanceFailed(const std::string& why) : ExtremalError("balance", why) {}
};
struct AbsorbFailed : ExtremalError {
    int vertex;
    AbsorbFailed(int z, const std::string& why)
        : ExtremalError("absorb", "vertex " + std::to_string(z) + ": " + why), vertex(z) {}
};
struct EqualizeFailed : ExtremalError {
    explicit EqualizeFailed(const std::string& why) : ExtremalError("equalize", why) {}
};
struct FinishFailed : ExtremalError {
    explicit FinishFailed(const std::string& why) : ExtremalError("finish", why) {}
};

// Tolerances for the structured pipeline. "desk" is sized for the orders the
// exact solver can cross-check; "paper" carries the asymptotic relations
// (tau = beta/288, alpha = tau^3) and is far too strict at small n, which is
// expected. beta is handed to diagnostics only; nothing derives tau from it
// or vice versa outside the named preset.
struct ExtremalConfig {
    double alpha = 0.01;   // witness must have >= (2/3 - alpha) n vertices
    double tau = 0.05;     // low-degree threshold, stage budget |Y3| <= tau n
    double gamma = 0.05;   // cyclicity tolerance used for vertex labels
    double lambda = 0.05;  // equitability tolerance
    double beta = 1.0 / 24;  // near-completeness tolerance, logged only
    std::string name = "desk";

    static ExtremalConfig desk() { return {}; }
    static ExtremalConfig paper() {
        ExtremalConfig c;
        c.beta = 1.0 / 24;
        c.tau = c.beta / 288;
        c.alpha = c.tau * c.tau * c.tau;
        c.gamma = 2 * c.tau;
        c.lambda = 2 * c.tau * c.tau;
        c.name = "paper";
        return c;
    }
};

// Ordered triple of disjoint vertex sets with the intended orientation
// W1 -> W2 -> W3 -> W1 (indices mod 3).
struct CyclicTriple {
    std::array<std::vector<int>, 3> part;

    int size() const {
        return (int)(part[0].size() + part[1].size() + part[2].size());
    }
    std::vector<int> all() const;
};

// d^+(v, W_{i-1}) + d(v, W_i) + d^-(v, W_{i+1}): zero iff v sits perfectly in
// part i of the cyclic orientation.
int cyclicity_cost(const OrientedGraph& g, const CyclicTriple& t, int v, int i);

// v fits part i with slack gamma * g.order().
bool vertex_cyclic(const OrientedGraph& g, const CyclicTriple& t, int v, int i, double gamma);

// Every vertex of part i is (i, gamma)-cyclic.
bool triple_cyclic(const OrientedGraph& g, const CyclicTriple& t, double gamma);

// Part sizes differ by <= lambda n and the triple spans >= (2/3 - lambda) n.
bool triple_equitable(const CyclicTriple& t, int n, double lambda);

// For every v in part i: d^-(v, W_{i-1}) and d^+(v, W_{i+1}) are both at
// least |part| - (gamma + lambda) n. Consequence of cyclicity + equitability
// under the semidegree hypothesis; checked directly. On failure, *why names
// the offending vertex and bound when non-null.
bool good_degree_bounds_hold(const OrientedGraph& g, const CyclicTriple& t, double gamma,
                             double lambda, std::string* why = nullptr);

// Greedy search for a large vertex set whose induced subgraph has no
// transitive triangle: seed from cyclic triangles (in-neighbors of the
// successor corner meet out-neighbors of the predecessor corner), prune to a
// 0-cyclic triple, then extend with zero-cost outside vertices. The result is
// verified triangle-free by enumeration. nullopt when no candidate reaches
// min_size.
std::optional<std::vector<int>> find_tt3_free_witness(const OrientedGraph& g, int min_size);

// Partition a triangle-free set W into a 0-cyclic triple: corner
// neighborhoods of the lowest cyclic triangle in G[W] seed the parts, and
// each remaining vertex joins the unique part where its cost is zero.
// Throws NoCyclicTriangle or PlacementFailed.
CyclicTriple cyclic_partition(const OrientedGraph& g, const std::vector<int>& w);

// Witness triple plus the derived sets of the decomposition. After
// classify_vertices, triple holds the augmented parts W'_i = W_i u Z(i).
struct ExtremalDecomposition {
    CyclicTriple triple;
    ExtremalConfig cfg;
    std::vector<int> u;         // complement of the witness at classify time
    std::vector<int> u_prime;   // u minus the merged low-degree vertices
    std::vector<int> z;         // u-vertices with degree into W below |W| - tau n
    std::vector<int> z_prime;   // z minus z_dprime: must be absorbed by stage 2
    std::vector<int> z_dprime;  // z-vertices merged into the triple (union of Z(i))
    std::vector<int> label;     // per vertex: part index 0..2, or -1 when gamma-bad
    double gamma_used = 0;
};

// Label every vertex with the smallest i making it (i, gamma)-cyclic (or -1),
// split off the low-degree complement vertices by the tau rule, and merge the
// cyclic ones into their parts. Input needs triple and cfg set; the rest is
// computed fresh.
ExtremalDecomposition classify_vertices(const OrientedGraph& g, ExtremalDecomposition d,
                                        double gamma);

struct PlannedTriangle {
    TransitiveTriangle tri;
    std::string role;  // "w-surplus", "u-surplus", "bad-absorb", "equalize", "mod18"
};

// Disjoint triangle collections t1 (size balance), t2 (bad-vertex absorption),
// t3 (part equalization and divisibility); x1..x3 are their vertex sets.
struct BalancingPlan {
    ExtremalDecomposition d;
    std::vector<PlannedTriangle> t1, t2, t3;
    Bitset x1, x2, x3;
    int c = 0;                      // |W'| - 2n/3 measured by stage 1
    bool mod18_edges_used = false;  // stage 3 spent the three extra cross edges

    Bitset y(int upto) const;  // x1 | ... | x_upto
};

// Measured form of the plan's five structural properties.
struct PropertyReport {
    bool p1 = false;  // |W' \ Y_i| = 2 |U' \ Y_i| for every prefix
    bool p2 = false;  // every vertex of Z' is covered by t2
    bool p3 = false;  // |Y3| <= tau n
    bool p4 = false;  // residual parts equal
    bool p5 = false;  // 18 divides |V \ Y3|
    std::array<int, 3> residual_part{};
    int y3_size = 0;
    int residual_order = 0;
};
PropertyReport plan_properties(const OrientedGraph& g, const BalancingPlan& plan);

// Stage 1: restore |W'| = 2|U'| by removing |c| triangles, drawn inside the
// triple when W' is oversized and from two complement vertices plus one
// triple vertex when undersized. Throws BalanceFailed.
BalancingPlan balance_stage1(const OrientedGraph& g, const ExtremalDecomposition& d);

// Stage 2: consume every unmerged low-degree vertex with a triangle holding
// two triple vertices. Throws AbsorbFailed.
BalancingPlan absorb_bad_vertices(const OrientedGraph& g, BalancingPlan plan);

// Stage 3: equalize part sizes with cross-part edges completed through
// complement vertices; spends three extra edges (one per part pair) when
// needed to make the residual order divisible by 18. Throws EqualizeFailed,
// in particular when the equalization budget |Y3| <= tau n cannot hold.
BalancingPlan equalize_and_divide(const OrientedGraph& g, BalancingPlan plan);

// Tile the residual graph: split each residual part into random halves, pick
// perfect matchings in the three forward bipartite graphs between consecutive
// halves, then match complement vertices to matching edges that complete
// transitive triangles (Hall check, resampled up to retries). Returns the
// residual tiling; the plan's triangles are not included. Throws
// FinishFailed with the last deficiency seen.
Tiling finish_tiling(const OrientedGraph& g, const BalancingPlan& plan, std::uint64_t seed,
                     int retries = 8);

struct ExtremalOutcome {
    bool success = false;
    bool not_extremal = false;  // no large triangle-free set: use the randomized pipeline
    Tiling tiling;
    std::string failed_stage;  // empty unless a stage threw
    std::string detail;
    std::vector<std::string> trace;
    std::uint64_t seed = 0;
};

// Full structured pipeline: witness, partition, classification, three
// balancing stages, residual tiling, final validation.
ExtremalOutcome extremal_tile(const OrientedGraph& g, std::uint64_t seed,
                              const ExtremalConfig& cfg = ExtremalConfig::desk(),
                              int finish_retries = 8);

}  // namespace tt3
