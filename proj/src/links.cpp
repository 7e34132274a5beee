#include "tt3/links.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "tt3/rng.hpp"

namespace tt3 {

namespace {

int quadrant_of(const QuadrantReport& q, int v) {
    if (q.out_out.test(v)) return 0;
    if (q.out_in.test(v)) return 1;
    if (q.in_out.test(v)) return 2;
    return 3;
}

bool distinct_triangle(const OrientedGraph& g, int a, int b, int c,
                       std::optional<TransitiveTriangle>& out) {
    if (a == b || a == c || b == c) return false;
    auto t = g.tt_on(a, b, c);
    if (!t) return false;
    out = t;
    return true;
}

}  // namespace

QuadrantReport link_quadrants(const OrientedGraph& g, int x, int y) {
    if (x < 0 || x >= g.order()) throw BadVertex(x);
    if (y < 0 || y >= g.order() || y == x) throw BadVertex(y);
    QuadrantReport q;
    q.x = x;
    q.y = y;
    q.out_out = g.out_nbrs(x) & g.out_nbrs(y);
    q.out_in = g.out_nbrs(x) & g.in_nbrs(y);
    q.in_out = g.in_nbrs(x) & g.out_nbrs(y);
    q.in_in = g.in_nbrs(x) & g.in_nbrs(y);
    q.common = q.out_out | q.out_in | q.in_out | q.in_in;

    auto cs = q.common.to_vector();
    for (int a : cs) {
        bool a_in_in = q.in_in.test(a);
        int qa = quadrant_of(q, a);
        for (int b : cs) {
            if (b == a || !g.has_arc(a, b)) continue;
            if (a_in_in || q.out_out.test(b) || quadrant_of(q, b) == qa)
                q.f_edges.emplace_back(a, b);
        }
    }
    return q;
}

LinkClasses link_classes(const OrientedGraph& g, const QuadrantReport& q, double beta) {
    int n = g.order();
    int t = static_cast<int>(std::ceil(beta * n));
    LinkClasses c{Bitset(n), Bitset(n), Bitset(n), Bitset(n)};

    std::vector<int> f_load(n, 0);
    for (auto [a, b] : q.f_edges) {
        ++f_load[a];
        ++f_load[b];
    }
    for (int v : q.common.to_vector())
        (f_load[v] >= t ? c.n0 : c.core).set(v);
    for (int v : c.core.to_vector()) {
        if (g.outdeg_in(v, c.core) < 2 * t) c.i_plus.set(v);
        if (g.indeg_in(v, c.core) < 2 * t) c.i_minus.set(v);
    }
    return c;
}

bool link_witness_ok(const OrientedGraph& g, const LinkWitness& w, int x, int y) {
    if (w.p == 0)
        return x == y && w.seq == std::vector<int>{x} && w.head.empty() && w.tail.empty();
    if (w.p < 0 || w.seq.size() != static_cast<size_t>(3 * w.p + 1)) return false;
    if (w.seq.front() != x || w.seq.back() != y) return false;
    Bitset seen(g.order());
    for (int v : w.seq) {
        if (v < 0 || v >= g.order() || seen.test(v)) return false;
        seen.set(v);
    }
    auto covers = [&](const Tiling& tiling, size_t lo, size_t hi) {
        if (tiling.size() != static_cast<size_t>(w.p)) return false;
        Bitset want(g.order()), got(g.order());
        for (size_t i = lo; i <= hi; ++i) want.set(w.seq[i]);
        for (const auto& t : tiling) {
            if (!g.is_transitive_triangle(t.source, t.middle, t.sink)) return false;
            for (int v : t.vertices()) {
                if (got.test(v)) return false;
                got.set(v);
            }
        }
        return got == want;
    };
    return covers(w.head, 0, w.seq.size() - 2) && covers(w.tail, 1, w.seq.size() - 1);
}

std::optional<LinkWitness> find_link(const OrientedGraph& g, int x, int y, int p,
                                     SearchBudget budget, std::uint64_t seed,
                                     const Bitset* forbidden) {
    if (x < 0 || x >= g.order()) throw BadVertex(x);
    if (y < 0 || y >= g.order()) throw BadVertex(y);
    if (x == y) return LinkWitness{0, {x}, {}, {}};
    if (p != 1 && p != 2) throw BadLinkOrder(p);

    int n = g.order();
    Bitset banned(n);
    if (forbidden) banned = *forbidden;
    banned.reset(x);
    banned.reset(y);
    auto usable = [&](int v) { return !banned.test(v); };

    auto q = link_quadrants(g, x, y);
    std::vector<std::pair<int, int>> edges;
    for (auto [a, b] : q.f_edges)
        if (usable(a) && usable(b)) edges.emplace_back(a, b);

    auto one_link = [&](int a, int b) {
        LinkWitness w;
        w.p = 1;
        w.seq = {x, a, b, y};
        w.head = {*g.tt_on(x, a, b)};
        w.tail = {*g.tt_on(a, b, y)};
        return w;
    };

    if (p == 1) {
        if (edges.empty()) return std::nullopt;
        auto [a, b] = *std::min_element(edges.begin(), edges.end());
        return one_link(a, b);
    }

    std::vector<int> pool;  // candidate interior vertices
    for (int v = 0; v < n; ++v)
        if (v != x && v != y && !banned.test(v)) pool.push_back(v);
    if (pool.size() < 5) return std::nullopt;  // a 2-link needs 5 interior vertices

    auto rng = make_rng(seed);
    auto start = std::chrono::steady_clock::now();
    auto expired = [&] {
        return std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::steady_clock::now() - start)
                   .count() >= budget.wall_ms;
    };
    auto draw = [&] { return pool[uniform_int(rng, 0, static_cast<int>(pool.size()) - 1)]; };

    for (int attempt = 0; attempt < budget.attempts; ++attempt) {
        if ((attempt & 63) == 0 && attempt > 0 && expired()) break;

        // extend a one-link by a disjoint triangle
        if (!edges.empty()) {
            auto [a, b] = edges[uniform_int(rng, 0, static_cast<int>(edges.size()) - 1)];
            int s = draw(), m = draw(), t = draw();
            std::optional<TransitiveTriangle> tri;
            if (s != a && s != b && m != a && m != b && t != a && t != b &&
                distinct_triangle(g, s, m, t, tri)) {
                LinkWitness w;
                w.p = 2;
                w.seq = {x, a, b, tri->source, tri->middle, tri->sink, y};
                w.head = {*g.tt_on(x, a, b), *tri};
                w.tail = {*g.tt_on(a, b, y), *tri};
                return w;
            }
        }

        // chain two one-links through a middle vertex z
        int z = draw();
        auto qxz = link_quadrants(g, x, z);
        auto qzy = link_quadrants(g, z, y);
        std::vector<std::pair<int, int>> e1s;
        for (auto [a, b] : qxz.f_edges)
            if (usable(a) && usable(b) && a != y && b != y) e1s.emplace_back(a, b);
        if (e1s.empty()) continue;
        auto [a, b] = e1s[uniform_int(rng, 0, static_cast<int>(e1s.size()) - 1)];
        for (auto [c, d] : qzy.f_edges) {
            if (!usable(c) || !usable(d)) continue;
            if (c == x || d == x || c == a || c == b || d == a || d == b) continue;
            LinkWitness w;
            w.p = 2;
            w.seq = {x, a, b, z, c, d, y};
            w.head = {*g.tt_on(x, a, b), *g.tt_on(z, c, d)};
            w.tail = {*g.tt_on(a, b, z), *g.tt_on(c, d, y)};
            return w;
        }
    }
    return std::nullopt;
}

}  // namespace tt3
