#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tt3/exact_solver.hpp"
#include "tt3/graph.hpp"
#include "tt3/report.hpp"

namespace tt3 {

// Resolves a thread count: an explicit positive request wins, then the
// TT3_THREADS environment variable, then hardware concurrency.
int resolve_threads(int requested);

// Cubic lower bound on the transitive triangle count. Applicable whenever
// 18 * delta0 >= 7n; then holds means 54 * #TT >= n^3 (integer compare).
struct TtCountCheck {
    bool applicable = false;
    bool holds = true;
    long long tt = 0;
};

TtCountCheck tt_count_check(const OrientedGraph& g);

// Every vertex of every labeled 4-vertex tournament lies in a transitive
// triangle. Enumerates all 64 orientations.
Report verify_prop_tt4();

// For a cyclic triangle abc and an outside vertex x, at least two of the
// three cycle arcs extend to a transitive triangle with x. Enumerates all
// 8 orientations of x's arcs into the triangle.
Report verify_prop_cyctri();

// Semidegree-driven counting bounds on one graph, with slack = 3*delta0 - n:
// (a) every arc u->v has >= slack common neighbours in N(u) cap N^-(v),
// (b) every arc u->v has >= slack common neighbours in N(v) cap N^+(u),
// (c) every directed path u->v->w with u != w has >= 2*slack vertices x
//     such that {x,v,u} or {x,v,w} spans a transitive triangle.
// Vacuous when slack <= 0.
Report verify_prop_deg(const OrientedGraph& g, const std::string& label = "");

struct SweepOptions {
    SolveBudget exact_budget = SolveBudget::nodes(20'000'000);
    int threads = 0;           // 0 = resolve_threads default
    int sample_tries = 20'000; // rejection-sampling cap per instance
    long long lex_move_budget = 4'000'000;
};

// For each n in n_list (all multiples of 3): builds the extremal
// construction, records its computed minimum semidegree against the
// abstract bound floor(7n/18) - 1 and the closed-form block count
// floor(2n/9) + floor((n-3)/6) + 1, and runs the exact solver to certify
// that no perfect tiling exists.
Report sweep_extremal_bound(const std::vector<int>& n_list,
                            const SweepOptions& opt = {});

// Samples tournaments with minimum semidegree >= ceil(7n/18) for n cycling
// over [n_lo, n_hi], solves each for a maximum tiling, and checks that
// optimally solved instances leave at most 11 vertices uncovered and that
// the local-search tiler never beats the exact optimum. Sampling failures
// are tallied, not asserted on.
Report sweep_near_tiling(int n_lo, int n_hi, int samples, std::uint64_t seed,
                         const SweepOptions& opt = {});

// Exhaustive small-order scans: all oriented graphs on 3 vertices, the
// (infeasible) 6-vertex regular-tournament bound, and all 9-vertex
// tournaments with minimum semidegree 4.
Report small_exhaustive_probe();

}  // namespace tt3
