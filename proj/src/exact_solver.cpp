#include "tt3/exact_solver.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>

namespace tt3 {

namespace {

using Clock = std::chrono::steady_clock;

struct TriSet {
    std::vector<TransitiveTriangle> tris;
    std::vector<std::array<int, 3>> verts;
    std::vector<std::vector<int>> cand_of;

    explicit TriSet(const OrientedGraph& g) : cand_of(g.order()) {
        tris = g.transitive_triangles();
        verts.reserve(tris.size());
        for (int t = 0; t < static_cast<int>(tris.size()); ++t) {
            auto vs = tris[t].vertices();
            verts.push_back(vs);
            for (int v : vs) cand_of[v].push_back(t);
        }
    }
};

struct Search {
    const OrientedGraph& g;
    TriSet ts;
    int n;
    Bitset dead;  // covered by a chosen tile, or abandoned (max search)
    std::vector<int> chosen;
    long long nodes = 0;
    long long node_limit;
    Clock::time_point deadline;
    bool out_of_budget = false;

    int best = 0;  // max search incumbent
    std::vector<int> best_chosen;

    // scratch rebuilt per node, consumed before recursing
    std::vector<int> live;
    std::vector<int> vcount;
    std::vector<char> tri_alive;
    std::vector<int> hcount;

    Search(const OrientedGraph& graph, const SolveBudget& b)
        : g(graph),
          ts(graph),
          n(graph.order()),
          dead(n > 0 ? n : 1),
          node_limit(b.node_limit),
          deadline(Clock::now() + std::chrono::milliseconds(b.wall_ms)) {
        vcount.assign(n, 0);
        hcount.assign(n, 0);
    }

    bool enter_node() {
        ++nodes;
        if (nodes > node_limit) {
            out_of_budget = true;
            return false;
        }
        if ((nodes & 1023) == 0 && Clock::now() >= deadline) {
            out_of_budget = true;
            return false;
        }
        return true;
    }

    void refresh() {
        live.clear();
        std::fill(vcount.begin(), vcount.end(), 0);
        for (int t = 0; t < static_cast<int>(ts.verts.size()); ++t) {
            const auto& vs = ts.verts[t];
            if (dead.test(vs[0]) || dead.test(vs[1]) || dead.test(vs[2])) continue;
            live.push_back(t);
            ++vcount[vs[0]];
            ++vcount[vs[1]];
            ++vcount[vs[2]];
        }
    }

    // Greedy hitting set over the current live triangles, stopping once `cap`
    // vertices are picked. Disjoint tiles each consume a distinct hitting
    // vertex, so the return value bounds how many more tiles can fit.
    int hitting_bound(int cap) {
        if (cap <= 0) return 0;
        int m = static_cast<int>(live.size());
        tri_alive.assign(m, 1);
        std::copy(vcount.begin(), vcount.end(), hcount.begin());
        int remaining = m;
        int picks = 0;
        while (remaining > 0) {
            if (picks >= cap) return cap;
            int pick = -1;
            for (int v = 0; v < n; ++v)
                if (hcount[v] > 0 && (pick == -1 || hcount[v] > hcount[pick])) pick = v;
            ++picks;
            for (int i = 0; i < m; ++i) {
                if (!tri_alive[i]) continue;
                const auto& vs = ts.verts[live[i]];
                if (vs[0] != pick && vs[1] != pick && vs[2] != pick) continue;
                tri_alive[i] = 0;
                --remaining;
                --hcount[vs[0]];
                --hcount[vs[1]];
                --hcount[vs[2]];
            }
        }
        return picks;
    }

    std::vector<int> live_candidates(int v) {
        std::vector<int> cands;
        cands.reserve(vcount[v]);
        for (int t : ts.cand_of[v]) {
            const auto& vs = ts.verts[t];
            if (!dead.test(vs[0]) && !dead.test(vs[1]) && !dead.test(vs[2])) cands.push_back(t);
        }
        return cands;
    }

    void apply(int t) {
        const auto& vs = ts.verts[t];
        dead.set(vs[0]);
        dead.set(vs[1]);
        dead.set(vs[2]);
        chosen.push_back(t);
    }

    void undo(int t) {
        const auto& vs = ts.verts[t];
        chosen.pop_back();
        dead.reset(vs[0]);
        dead.reset(vs[1]);
        dead.reset(vs[2]);
    }

    bool perfect(int uncovered) {
        if (uncovered == 0) return true;
        if (!enter_node()) return false;
        refresh();
        int bv = -1;
        for (int v = 0; v < n; ++v) {
            if (dead.test(v)) continue;
            if (vcount[v] == 0) return false;
            if (bv == -1 || vcount[v] < vcount[bv]) bv = v;
        }
        int need = uncovered / 3;
        if (hitting_bound(need) < need) return false;
        for (int t : live_candidates(bv)) {
            apply(t);
            bool done = perfect(uncovered - 3);
            if (done) return true;
            undo(t);
            if (out_of_budget) return false;
        }
        return false;
    }

    void record() {
        if (static_cast<int>(chosen.size()) > best) {
            best = static_cast<int>(chosen.size());
            best_chosen = chosen;
        }
    }

    void maximize() {
        if (!enter_node()) return;
        refresh();
        int alive_v = 0;
        int bv = -1;
        for (int v = 0; v < n; ++v) {
            if (dead.test(v) || vcount[v] == 0) continue;
            ++alive_v;
            if (bv == -1 || vcount[v] < vcount[bv]) bv = v;
        }
        if (bv == -1) {
            record();
            return;
        }
        int have = static_cast<int>(chosen.size());
        int fl = alive_v / 3;
        if (have + fl <= best) return;
        int cap = std::min(fl, best - have + 1);
        if (have + std::min(fl, hitting_bound(cap)) <= best) return;
        for (int t : live_candidates(bv)) {
            apply(t);
            maximize();
            undo(t);
            if (out_of_budget) return;
        }
        dead.set(bv);
        maximize();
        dead.reset(bv);
    }
};

Tiling tiles_from(const TriSet& ts, const std::vector<int>& chosen) {
    Tiling out;
    out.reserve(chosen.size());
    for (int t : chosen) out.push_back(ts.tris[t]);
    return out;
}

long long elapsed_ms(Clock::time_point t0) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
}

}  // namespace

const char* to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::Tiling: return "Tiling";
        case SolveStatus::NoTiling: return "NoTiling";
        case SolveStatus::BudgetExceeded: return "BudgetExceeded";
    }
    return "?";
}

SolveOutcome find_perfect_tiling(const OrientedGraph& g, const SolveBudget& budget) {
    auto t0 = Clock::now();
    SolveOutcome out;
    if (g.order() % 3 != 0) {
        out.status = SolveStatus::NoTiling;
        out.wall_ms = elapsed_ms(t0);
        return out;
    }
    Search s(g, budget);
    bool found = s.perfect(g.order());
    out.nodes = s.nodes;
    out.wall_ms = elapsed_ms(t0);
    if (found) {
        out.status = SolveStatus::Tiling;
        out.tiling = tiles_from(s.ts, s.chosen);
        auto check = validate_tiling(g, out.tiling);
        assert(check.valid && check.perfect);
        (void)check;
    } else {
        out.status = s.out_of_budget ? SolveStatus::BudgetExceeded : SolveStatus::NoTiling;
    }
    return out;
}

MaxTilingResult max_tiling(const OrientedGraph& g, const SolveBudget& budget) {
    auto t0 = Clock::now();
    MaxTilingResult out;
    Search s(g, budget);

    // greedy incumbent: first-fit over lexicographic triangles
    {
        Bitset used(s.n > 0 ? s.n : 1);
        for (int t = 0; t < static_cast<int>(s.ts.verts.size()); ++t) {
            const auto& vs = s.ts.verts[t];
            if (used.test(vs[0]) || used.test(vs[1]) || used.test(vs[2])) continue;
            used.set(vs[0]);
            used.set(vs[1]);
            used.set(vs[2]);
            s.best_chosen.push_back(t);
        }
        s.best = static_cast<int>(s.best_chosen.size());
    }

    s.refresh();
    int alive_v = 0;
    for (int v = 0; v < s.n; ++v)
        if (s.vcount[v] > 0) ++alive_v;
    int fl = alive_v / 3;
    int ub_root = std::min(fl, s.hitting_bound(fl));

    if (s.best < ub_root) s.maximize();

    out.nodes = s.nodes;
    out.wall_ms = elapsed_ms(t0);
    out.tiling = tiles_from(s.ts, s.best_chosen);
    out.optimal = !s.out_of_budget;
    out.upper_bound = out.optimal ? s.best : ub_root;
    auto check = validate_tiling(g, out.tiling);
    assert(check.valid);
    (void)check;
    return out;
}

namespace {

// Allocation-free tiler over a vertex mask; independent of the search
// machinery above so the exhaustive scans stay cheap per instance.
bool mask_tileable(const OrientedGraph& g, std::uint32_t mask) {
    if (mask == 0) return true;
    int v = __builtin_ctz(mask);
    std::uint32_t rest = mask & (mask - 1);
    for (std::uint32_t am = rest; am != 0; am &= am - 1) {
        int a = __builtin_ctz(am);
        for (std::uint32_t bm = am & (am - 1); bm != 0; bm &= bm - 1) {
            int b = __builtin_ctz(bm);
            if (!g.tt_on(v, a, b)) continue;
            std::uint32_t next = mask & ~((1u << v) | (1u << a) | (1u << b));
            if (mask_tileable(g, next)) return true;
        }
    }
    return false;
}

void note_instance(SmallExhaustiveReport& rep, const OrientedGraph& h) {
    ++rep.instances;
    if (rep.n % 3 != 0) return;
    if (mask_tileable(h, (1u << rep.n) - 1)) {
        ++rep.tileable;
    } else {
        ++rep.non_tileable;
        if (rep.counterexamples.size() < 16) rep.counterexamples.push_back(h);
    }
}

void scan_all_orientations(SmallExhaustiveReport& rep) {
    int n = rep.n;
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
    long long total = 1;
    for (size_t k = 0; k < pairs.size(); ++k) total *= 3;
    for (long long code = 0; code < total; ++code) {
        OrientedGraph h(n);
        long long c = code;
        for (auto [i, j] : pairs) {
            int digit = static_cast<int>(c % 3);
            c /= 3;
            if (digit == 1) h.add_arc(i, j);
            else if (digit == 2) h.add_arc(j, i);
        }
        if (h.min_semidegree() < rep.min_semideg) continue;
        note_instance(rep, h);
    }
}

void scan_regular_tournaments(SmallExhaustiveReport& rep) {
    int n = rep.n;
    int d = rep.min_semideg;  // 2d == n-1, every instance is d-regular
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
    OrientedGraph h(n);
    std::vector<int> outd(n, 0), ind(n, 0);

    auto rec = [&](auto&& self, size_t k) -> void {
        if (k == pairs.size()) {
            note_instance(rep, h);
            return;
        }
        auto [i, j] = pairs[k];
        if (outd[i] < d && ind[j] < d) {
            h.add_arc(i, j);
            ++outd[i];
            ++ind[j];
            self(self, k + 1);
            --outd[i];
            --ind[j];
            h.remove_arc(i, j);
        }
        if (outd[j] < d && ind[i] < d) {
            h.add_arc(j, i);
            ++outd[j];
            ++ind[i];
            self(self, k + 1);
            --outd[j];
            --ind[i];
            h.remove_arc(j, i);
        }
    };
    rec(rec, 0);
}

}  // namespace

SmallExhaustiveReport decide_small_exhaustive(int n, int min_semideg) {
    SmallExhaustiveReport rep;
    rep.n = n;
    rep.min_semideg = min_semideg;
    if (n < 1) {
        rep.supported = false;
        rep.note = "order must be at least 1";
        return rep;
    }
    if (2ll * min_semideg > n - 1) {
        rep.infeasible = true;
        rep.note = "semidegree bound exceeds (n-1)/2: no oriented graph qualifies";
        return rep;
    }
    if (n <= 5) {
        scan_all_orientations(rep);
        return rep;
    }
    if (n <= 9 && 2 * min_semideg == n - 1) {
        scan_regular_tournaments(rep);
        return rep;
    }
    rep.supported = false;
    rep.note = "exhaustive scan supported for n<=5, or n<=9 with 2d=n-1";
    return rep;
}

}  // namespace tt3
