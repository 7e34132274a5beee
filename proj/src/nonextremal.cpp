#include "tt3/nonextremal.hpp"

#include <algorithm>
#include <chrono>
#include <map>

#include "tt3/generators.hpp"
#include "tt3/matching.hpp"
#include "tt3/rng.hpp"

namespace tt3 {

namespace {

std::string fmt_triple(const std::array<int, 3>& t) {
    return "{" + std::to_string(t[0]) + "," + std::to_string(t[1]) + "," + std::to_string(t[2]) +
           "}";
}

}  // namespace

NonextremalOutcome nonextremal_tile(const OrientedGraph& g, std::uint64_t seed,
                                    const NonextremalConfig& cfg) {
    int n = g.order();
    if (n % 3 != 0) throw BadN("order must be divisible by 3, got " + std::to_string(n));

    auto start = std::chrono::steady_clock::now();
    NonextremalOutcome out;
    out.seed = seed;
    auto finish = [&](NonextremalOutcome& o) -> NonextremalOutcome& {
        o.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - start)
                        .count();
        return o;
    };

    if (n == 0) {
        out.success = true;
        out.trace.push_back("empty graph: empty tiling is perfect");
        return finish(out);
    }

    for (int attempt = 0; attempt < cfg.retries; ++attempt) {
        std::uint64_t aseed = derive_seed(seed, attempt);
        out.failed_stage.clear();
        out.detail.clear();
        out.tiling.clear();
        out.trace.push_back("attempt " + std::to_string(attempt) + ": seed " +
                            std::to_string(aseed));

        auto build = build_absorber(g, cfg.sigma, aseed, cfg.absorber);
        out.capacity = build.capacity;
        out.trace.push_back("absorber: capacity " + std::to_string(build.capacity) + ", cores " +
                            std::to_string(build.cores.size()) +
                            (build.note.empty() ? "" : " (" + build.note + ")"));
        if (!build.ok && !build.cores.empty())
            out.trace.push_back("absorber coverage incomplete, proceeding: weakest triple " +
                                fmt_triple(build.weakest_triple) + " has " +
                                std::to_string(build.weakest_count) + " absorbers");

        Bitset uset = Bitset::of(n, build.u_all);
        std::vector<int> rest;
        for (int v = 0; v < n; ++v)
            if (!uset.test(v)) rest.push_back(v);

        std::vector<int> old_of;
        auto sub = g.induced(rest, &old_of);
        auto pc = lex_max_tiling(sub, cfg.lex_move_budget);
        out.leftover = pc.leftover();
        out.trace.push_back("lex cover: " + std::to_string(pc.tiles.size()) + " tiles, leftover " +
                            std::to_string(out.leftover) +
                            (pc.move_budget_exceeded ? " (move budget exceeded)" : ""));

        Tiling tiling;
        for (const auto& t : pc.tiles)
            tiling.push_back({old_of[t.source], old_of[t.middle], old_of[t.sink]});

        if (out.leftover == 0) {
            for (const auto& core : build.cores)
                tiling.insert(tiling.end(), core.tiling_u.begin(), core.tiling_u.end());
            auto v = validate_tiling(g, tiling);
            if (v.valid && v.perfect) {
                out.success = true;
                out.tiling = std::move(tiling);
                out.trace.push_back("perfect tiling assembled without absorption");
                return finish(out);
            }
            out.failed_stage = "assemble";
            out.detail = v.reason;
            continue;
        }

        if (build.cores.empty()) {
            out.failed_stage = "build-absorber";
            out.detail = build.capacity == 0
                             ? "no absorber capacity at sigma=" + std::to_string(cfg.sigma) +
                                   " and leftover " + std::to_string(out.leftover) + " > 0"
                             : build.note;
            out.trace.push_back("stage build-absorber failed: " + out.detail);
            if (build.capacity == 0) break;  // retrying cannot create capacity
            continue;
        }

        // group the uncovered vertices into triples: each path naturally, the
        // arc and singleton vertices pooled in id order
        std::vector<std::array<int, 3>> triples;
        for (const auto& p : pc.paths) triples.push_back({old_of[p.a], old_of[p.b], old_of[p.c]});
        std::vector<int> pool;
        for (auto [u, v] : pc.arcs) {
            pool.push_back(old_of[u]);
            pool.push_back(old_of[v]);
        }
        for (int v : pc.singles) pool.push_back(old_of[v]);
        std::sort(pool.begin(), pool.end());
        for (size_t i = 0; i + 2 < pool.size(); i += 3)
            triples.push_back({pool[i], pool[i + 1], pool[i + 2]});

        BipartiteGraph b(static_cast<int>(triples.size()), static_cast<int>(build.cores.size()));
        std::map<std::pair<int, int>, AbsorbingSet> absorbed;
        for (int i = 0; i < b.nx; ++i)
            for (int j = 0; j < b.ny; ++j)
                if (auto a = make_absorbing_set(g, build.cores[j], triples[i], cfg.solve_budget)) {
                    b.add_edge(i, j);
                    absorbed.emplace(std::make_pair(i, j), std::move(*a));
                }

        auto match = max_bipartite_matching(b);
        int matched = static_cast<int>(std::count_if(match.begin(), match.end(),
                                                     [](int m) { return m >= 0; }));
        out.trace.push_back("absorption matching: " + std::to_string(matched) + " of " +
                            std::to_string(triples.size()) + " triples placed");
        if (matched < b.nx) {
            out.failed_stage = "absorb-leftover";
            int miss = 0;
            while (match[miss] >= 0) ++miss;
            out.detail = "triple " + fmt_triple(triples[miss]) + " not absorbed (" +
                         std::to_string(matched) + " of " + std::to_string(b.nx) + " placed)";
            out.trace.push_back("stage absorb-leftover failed: " + out.detail);
            continue;
        }

        std::vector<char> core_used(build.cores.size(), 0);
        for (int i = 0; i < b.nx; ++i) {
            const auto& a = absorbed.at({i, match[i]});
            tiling.insert(tiling.end(), a.tiling_ux.begin(), a.tiling_ux.end());
            core_used[match[i]] = 1;
        }
        for (size_t j = 0; j < build.cores.size(); ++j)
            if (!core_used[j])
                tiling.insert(tiling.end(), build.cores[j].tiling_u.begin(),
                              build.cores[j].tiling_u.end());

        auto v = validate_tiling(g, tiling);
        if (v.valid && v.perfect) {
            out.success = true;
            out.tiling = std::move(tiling);
            out.trace.push_back("perfect tiling assembled after absorbing " +
                                std::to_string(b.nx) + " triples");
            return finish(out);
        }
        out.failed_stage = "assemble";
        out.detail = v.reason;
        out.trace.push_back("stage assemble failed: " + v.reason);
    }
    return finish(out);
}

}  // namespace tt3
