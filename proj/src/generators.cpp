#include "tt3/generators.hpp"

#include <numeric>

#include "tt3/rng.hpp"

namespace tt3 {
namespace {

std::vector<int> id_range(int from, int count) {
    std::vector<int> v(count);
    std::iota(v.begin(), v.end(), from);
    return v;
}

void add_all(OrientedGraph& g, const std::vector<int>& from, const std::vector<int>& to) {
    for (int u : from)
        for (int v : to) g.add_arc(u, v);
}

}  // namespace

ExtremalSpec ExtremalSpec::for_order(int n) {
    if (n < 9 || n % 3 != 0) throw BadN("extremal family needs n >= 9, n divisible by 3");
    ExtremalSpec s;
    s.n = n;
    int m = 2 * n / 3;
    for (int i = 1; i <= 3; ++i) s.w_sizes[i - 1] = (m + i) / 3;
    s.u1_size = (n - 3) / 6;
    s.u2_size = (n - 3 + 5) / 6;
    return s;
}

GeneratedGraph extremal_graph(int n) {
    ExtremalSpec s = ExtremalSpec::for_order(n);
    OrientedGraph g(n);
    int at = 0;
    std::vector<std::vector<int>> w(3);
    for (int i = 0; i < 3; ++i) {
        w[i] = id_range(at, s.w_sizes[i]);
        at += s.w_sizes[i];
    }
    std::vector<int> u1 = id_range(at, s.u1_size);
    at += s.u1_size;
    std::vector<int> u2 = id_range(at, s.u2_size);

    for (int i = 0; i < 3; ++i) add_all(g, w[i], w[(i + 1) % 3]);
    add_all(g, u1, u2);
    add_all(g, w[0], u1);
    add_all(g, w[1], u1);
    add_all(g, u1, w[2]);
    add_all(g, u2, w[0]);
    add_all(g, u2, w[1]);
    add_all(g, w[2], u2);

    VertexSetPartition p;
    p.names = {"W1", "W2", "W3", "U1", "U2"};
    p.blocks = {w[0], w[1], w[2], u1, u2};
    return {std::move(g), std::move(p)};
}

GeneratedGraph cyclic_blowup(int n) {
    if (n < 3) throw BadN("cyclic blow-up needs n >= 3");
    OrientedGraph g(n);
    std::vector<std::vector<int>> w(3);
    int at = 0;
    for (int i = 1; i <= 3; ++i) {
        w[i - 1] = id_range(at, (n + i - 1) / 3);
        at += (n + i - 1) / 3;
    }
    for (int i = 0; i < 3; ++i) add_all(g, w[i], w[(i + 1) % 3]);
    VertexSetPartition p;
    p.names = {"W1", "W2", "W3"};
    p.blocks = {w[0], w[1], w[2]};
    return {std::move(g), std::move(p)};
}

GeneratedGraph c_family_graph(int m, std::uint64_t seed) {
    if (m < 1) throw BadN("c-family needs m >= 1");
    int n = 18 * m;
    OrientedGraph g(n);
    std::vector<std::vector<int>> w(3);
    for (int i = 0; i < 3; ++i) w[i] = id_range(4 * m * i, 4 * m);
    std::vector<int> u = id_range(12 * m, 6 * m);

    for (int i = 0; i < 3; ++i) add_all(g, w[i], w[(i + 1) % 3]);

    // Per W-vertex: a circulant window of 3m out-arcs into U, the other 3m in,
    // with U slots shuffled by the seed. Every w gets d^+(w,U) = d^-(w,U) = 3m.
    Rng rng = make_rng(seed);
    std::vector<int> slot = random_permutation(6 * m, rng);
    for (int k = 0; k < 12 * m; ++k) {
        for (int t = 0; t < 6 * m; ++t) {
            int uv = u[slot[(k + t) % (6 * m)]];
            if (t < 3 * m)
                g.add_arc(w[k / (4 * m)][k % (4 * m)], uv);
            else
                g.add_arc(uv, w[k / (4 * m)][k % (4 * m)]);
        }
    }

    VertexSetPartition p;
    p.names = {"W1", "W2", "W3", "U"};
    p.blocks = {w[0], w[1], w[2], u};
    return {std::move(g), std::move(p)};
}

OrientedGraph random_oriented_graph(int n, double arc_prob, std::uint64_t seed) {
    if (arc_prob < 0 || arc_prob > 1) throw GraphError("arc_prob outside [0,1]");
    OrientedGraph g(n);
    Rng rng = make_rng(seed);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            if (!bernoulli(rng, arc_prob)) continue;
            if (bernoulli(rng, 0.5))
                g.add_arc(u, v);
            else
                g.add_arc(v, u);
        }
    return g;
}

OrientedGraph random_tournament(int n, std::uint64_t seed) {
    return random_oriented_graph(n, 1.0, seed);
}

std::optional<OrientedGraph> try_random_with_min_semidegree(int n, int d, std::uint64_t seed,
                                                            int max_tries, double arc_prob) {
    if (2 * d > n - 1) return std::nullopt;
    for (int t = 0; t < max_tries; ++t) {
        OrientedGraph g = random_oriented_graph(n, arc_prob, derive_seed(seed, t));
        if (n == 0 || g.min_semidegree() >= d) return g;
    }
    return std::nullopt;
}

OrientedGraph random_with_min_semidegree(int n, int d, std::uint64_t seed, int max_tries,
                                         double arc_prob) {
    auto g = try_random_with_min_semidegree(n, d, seed, max_tries, arc_prob);
    if (!g) throw Exhausted(max_tries);
    return std::move(*g);
}

OrientedGraph perturb(const OrientedGraph& g, int per_vertex_budget, std::uint64_t seed) {
    if (per_vertex_budget < 0) throw GraphError("negative perturbation budget");
    OrientedGraph h = g;
    if (per_vertex_budget == 0) return h;
    std::vector<std::pair<int, int>> arcs;
    arcs.reserve((std::size_t)g.arc_count());
    for (int u = 0; u < g.order(); ++u)
        g.out_nbrs(u).for_each([&](int v) { arcs.emplace_back(u, v); });
    Rng rng = make_rng(seed);
    shuffle(arcs, rng);
    std::vector<int> lost(g.order(), 0);
    for (auto [u, v] : arcs) {
        if (lost[u] >= per_vertex_budget || lost[v] >= per_vertex_budget) continue;
        h.remove_arc(u, v);
        ++lost[u];
        ++lost[v];
    }
    return h;
}

}  // namespace tt3
