#include "tt3/absorber.hpp"

#include <algorithm>
#include <chrono>

#include "tt3/rng.hpp"

namespace tt3 {

namespace {

bool in_some_triangle(const OrientedGraph& g, int v) {
    auto nb = g.nbrs(v).to_vector();
    for (size_t i = 0; i < nb.size(); ++i)
        for (size_t j = i + 1; j < nb.size(); ++j)
            if (g.tt_on(v, nb[i], nb[j])) return true;
    return false;
}

// exact-cover check that a tiling uses each listed vertex exactly once
bool tiles_exactly(const OrientedGraph& g, const Tiling& tiling, Bitset want) {
    Bitset got(g.order());
    for (const auto& t : tiling) {
        if (!g.is_transitive_triangle(t.source, t.middle, t.sink)) return false;
        for (int v : t.vertices()) {
            if (v < 0 || v >= g.order() || got.test(v)) return false;
            got.set(v);
        }
    }
    return got == want;
}

}  // namespace

bool absorbing_set_ok(const OrientedGraph& g, const AbsorbingSet& a) {
    if (a.u.size() != 18) return false;
    Bitset uset(g.order());
    for (int v : a.u) {
        if (v < 0 || v >= g.order() || uset.test(v)) return false;
        uset.set(v);
    }
    Bitset uxset = uset;
    for (int v : a.x) {
        if (v < 0 || v >= g.order() || uxset.test(v)) return false;
        uxset.set(v);
    }
    return tiles_exactly(g, a.tiling_u, uset) && tiles_exactly(g, a.tiling_ux, uxset);
}

std::optional<AbsorbingSet> find_absorbing_set(const OrientedGraph& g, std::array<int, 3> x,
                                               SearchBudget budget, std::uint64_t seed,
                                               const Bitset* forbidden) {
    int n = g.order();
    for (int v : x)
        if (v < 0 || v >= n) throw BadVertex(v);
    if (x[0] == x[1] || x[0] == x[2] || x[1] == x[2]) throw BadVertex(x[1]);
    for (int v : x)
        if (!in_some_triangle(g, v)) return std::nullopt;

    Bitset base(n);
    if (forbidden) base = *forbidden;
    for (int v : x) base.set(v);

    std::vector<int> pool;
    for (int v = 0; v < n; ++v)
        if (!base.test(v)) pool.push_back(v);
    if (pool.size() < 18) return std::nullopt;

    auto rng = make_rng(seed);
    auto start = std::chrono::steady_clock::now();
    auto expired = [&] {
        return std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::steady_clock::now() - start)
                   .count() >= budget.wall_ms;
    };
    auto draw = [&] { return pool[uniform_int(rng, 0, static_cast<int>(pool.size()) - 1)]; };

    SearchBudget chain_budget{std::max(200, budget.attempts / 10),
                              std::max(50, budget.wall_ms / 20)};

    for (int attempt = 0; attempt < budget.attempts; ++attempt) {
        if (attempt > 0 && expired()) break;

        int a = draw(), b = draw(), c = draw();
        if (a == b || a == c || b == c) continue;
        auto tri = g.tt_on(a, b, c);
        if (!tri) continue;
        auto fv = tri->vertices();

        // which triangle corner feeds which x_i is free (the corners need
        // only induce a triangle), and in structured hosts only some
        // assignments admit chains, so try them all
        std::array<int, 3> perm{0, 1, 2};
        int pi = 0;
        do {
            std::array<int, 3> f{fv[perm[0]], fv[perm[1]], fv[perm[2]]};
            Bitset banned = base;
            for (int v : f) banned.set(v);

            std::array<LinkWitness, 3> chains;
            bool all = true;
            for (int i = 0; i < 3 && all; ++i) {
                auto w = find_link(g, f[i], x[i], 2, chain_budget,
                                   derive_seed(seed, 24ull * attempt + 4 * pi + 1 + i), &banned);
                if (!w) {
                    all = false;
                    break;
                }
                chains[i] = std::move(*w);
                for (size_t j = 1; j + 1 < chains[i].seq.size(); ++j) banned.set(chains[i].seq[j]);
            }
            ++pi;
            if (!all) continue;

            AbsorbingSet out;
            out.x = x;
            for (const auto& ch : chains) {
                out.u.insert(out.u.end(), ch.seq.begin(), ch.seq.end() - 1);
                out.tiling_u.insert(out.tiling_u.end(), ch.head.begin(), ch.head.end());
                out.tiling_ux.insert(out.tiling_ux.end(), ch.tail.begin(), ch.tail.end());
            }
            out.tiling_ux.push_back(*tri);
            if (absorbing_set_ok(g, out)) return out;
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    return std::nullopt;
}

std::optional<AbsorbingSet> make_absorbing_set(const OrientedGraph& g, const AbsorberCore& core,
                                               std::array<int, 3> x, SolveBudget budget) {
    Bitset uset(g.order());
    for (int v : core.u) uset.set(v);
    for (int v : x)
        if (v < 0 || v >= g.order() || uset.test(v)) return std::nullopt;

    std::vector<int> verts = core.u;
    verts.insert(verts.end(), x.begin(), x.end());
    std::sort(verts.begin(), verts.end());
    if (std::adjacent_find(verts.begin(), verts.end()) != verts.end()) return std::nullopt;

    std::vector<int> old_of;
    auto sub = g.induced(verts, &old_of);
    auto res = find_perfect_tiling(sub, budget);
    if (res.status != SolveStatus::Tiling) return std::nullopt;

    AbsorbingSet out;
    out.x = x;
    out.u = core.u;
    out.tiling_u = core.tiling_u;
    for (const auto& t : res.tiling)
        out.tiling_ux.push_back({old_of[t.source], old_of[t.middle], old_of[t.sink]});
    return absorbing_set_ok(g, out) ? std::optional(out) : std::nullopt;
}

AbsorberBuild build_absorber(const OrientedGraph& g, double sigma, std::uint64_t seed,
                             const AbsorberConfig& cfg) {
    int n = g.order();
    AbsorberBuild out;
    out.seed = seed;
    out.capacity = static_cast<int>(3.0 * sigma * n) / 18;

    if (sigma == 0.0) {
        out.ok = true;
        out.note = "sigma zero: empty absorber, nothing to cover";
        return out;
    }
    if (out.capacity == 0) {
        out.note = "capacity zero: 3*sigma*n is below one 18-set";
        return out;
    }

    auto rng = make_rng(derive_seed(seed, 0xab50));
    Bitset used(n);

    for (int slot = 0; slot < out.capacity; ++slot) {
        bool placed = false;
        for (int attempt = 0; attempt < cfg.core_attempts && !placed; ++attempt) {
            // draw a target triple outside everything used so far; the
            // absorbing set found for it tiles with and without its triple,
            // which screens the core toward absorbing in general
            std::vector<int> free;
            for (int v = 0; v < n; ++v)
                if (!used.test(v)) free.push_back(v);
            if (free.size() < 21) break;
            std::array<int, 3> probe;
            for (int& v : probe) v = free[uniform_int(rng, 0, static_cast<int>(free.size()) - 1)];
            if (probe[0] == probe[1] || probe[0] == probe[2] || probe[1] == probe[2]) continue;

            auto found = find_absorbing_set(g, probe, cfg.link_budget,
                                            derive_seed(seed, (slot + 1) * 1000 + attempt), &used);
            if (!found) continue;

            AbsorberCore core{found->u, found->tiling_u};
            std::sort(core.u.begin(), core.u.end());

            // screen: most random probe triples should be absorbable
            Bitset taken = used;
            for (int v : core.u) taken.set(v);
            std::vector<int> rest;
            for (int v = 0; v < n; ++v)
                if (!taken.test(v)) rest.push_back(v);
            int hits = 0;
            for (int pt = 0; pt < cfg.probe_triples && rest.size() >= 3; ++pt) {
                std::array<int, 3> t;
                for (int& v : t) v = rest[uniform_int(rng, 0, static_cast<int>(rest.size()) - 1)];
                if (t[0] == t[1] || t[0] == t[2] || t[1] == t[2]) {
                    --pt;  // redraw collisions, they carry no signal
                    continue;
                }
                if (make_absorbing_set(g, core, t, cfg.solve_budget)) ++hits;
            }
            if (hits < std::min(cfg.probe_min, cfg.probe_triples)) continue;

            used = taken;
            out.cores.push_back(std::move(core));
            placed = true;
        }
        if (!placed) break;
    }

    out.u_all = used.to_vector();
    if (static_cast<int>(out.cores.size()) < out.capacity)
        out.note = "capacity shortfall: built " + std::to_string(out.cores.size()) + " of " +
                   std::to_string(out.capacity) + " cores";
    if (out.cores.empty()) {
        out.note += out.note.empty() ? "" : "; ";
        out.note += "no cores built";
        return out;
    }

    // coverage: sampled triples outside the absorber must each be absorbed by
    // enough distinct cores
    std::vector<int> outside;
    for (int v = 0; v < n; ++v)
        if (!used.test(v)) outside.push_back(v);
    out.weakest_count = static_cast<int>(out.cores.size()) + 1;
    for (int ct = 0; ct < cfg.coverage_triples && outside.size() >= 3; ++ct) {
        CoverageEntry entry;
        for (int& v : entry.triple)
            v = outside[uniform_int(rng, 0, static_cast<int>(outside.size()) - 1)];
        if (entry.triple[0] == entry.triple[1] || entry.triple[0] == entry.triple[2] ||
            entry.triple[1] == entry.triple[2]) {
            --ct;
            continue;
        }
        for (size_t j = 0; j < out.cores.size(); ++j)
            if (make_absorbing_set(g, out.cores[j], entry.triple, cfg.solve_budget))
                entry.core_ids.push_back(static_cast<int>(j));
        if (static_cast<int>(entry.core_ids.size()) < out.weakest_count) {
            out.weakest_count = static_cast<int>(entry.core_ids.size());
            out.weakest_triple = entry.triple;
        }
        out.coverage.push_back(std::move(entry));
    }

    int needed = std::min(cfg.reserve_count, static_cast<int>(out.cores.size()));
    if (out.coverage.empty()) {
        out.weakest_count = 0;
        out.ok = true;  // nothing outside the absorber to cover
    } else {
        out.ok = out.weakest_count >= needed;
        if (!out.ok)
            out.note += (out.note.empty() ? "" : "; ") + std::string("coverage failed: weakest triple has ") +
                        std::to_string(out.weakest_count) + " absorbers, need " + std::to_string(needed);
    }
    return out;
}

}  // namespace tt3
