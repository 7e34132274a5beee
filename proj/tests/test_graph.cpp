#include "tt3/graph.hpp"

#include <algorithm>
#include <set>

#include "builders.hpp"
#include "doctest.h"
#include "tt3/generators.hpp"

using namespace tt3;

TEST_CASE("add_arc basics and degree bookkeeping") {
    OrientedGraph g(2);
    g.add_arc(0, 1);
    CHECK(g.outdeg(0) == 1);
    CHECK(g.indeg(1) == 1);
    CHECK(g.has_arc(0, 1));
    CHECK_FALSE(g.has_arc(1, 0));
    CHECK(g.arc_count() == 1);

    CHECK_THROWS_AS(g.add_arc(1, 0), OrientationConflict);
    CHECK_THROWS_AS(g.add_arc(0, 0), LoopRejected);
    CHECK_THROWS_AS(g.add_arc(0, 1), DuplicateArc);
    CHECK_THROWS_AS(g.add_arc(0, 2), BadVertex);
}

TEST_CASE("remove_arc undoes add_arc") {
    OrientedGraph g(3);
    g.add_arc(0, 1);
    CHECK(g.remove_arc(0, 1));
    CHECK_FALSE(g.remove_arc(0, 1));
    CHECK(g.arc_count() == 0);
    g.add_arc(1, 0);  // opposite orientation now legal
    CHECK(g.has_arc(1, 0));
}

TEST_CASE("min_semidegree") {
    CHECK(builders::three_cycle().min_semidegree() == 1);
    CHECK(OrientedGraph(5).min_semidegree() == 0);
    CHECK(builders::transitive_tournament(4).min_semidegree() == 0);
    CHECK_THROWS_AS(OrientedGraph(0).min_semidegree(), GraphError);
}

TEST_CASE("transitive triangle enumeration") {
    CHECK(builders::three_cycle().transitive_triangles().empty());

    auto t3 = builders::transitive_tournament(3);
    auto one = t3.transitive_triangles();
    REQUIRE(one.size() == 1);
    CHECK(one[0].source == 0);
    CHECK(one[0].middle == 1);
    CHECK(one[0].sink == 2);

    CHECK(builders::transitive_tournament(4).transitive_triangles().size() == 4);
    CHECK(builders::transitive_tournament(4).count_transitive_triangles() == 4);
}

TEST_CASE("enumeration is lexicographic by (source, middle, sink)") {
    auto g = builders::transitive_tournament(5);
    auto ts = g.transitive_triangles();
    auto key = [](const TransitiveTriangle& t) {
        return std::array<int, 3>{t.source, t.middle, t.sink};
    };
    for (size_t i = 1; i < ts.size(); ++i) CHECK(key(ts[i - 1]) < key(ts[i]));
}

TEST_CASE("cyclic triangle enumeration") {
    CHECK(builders::three_cycle().cyclic_triangles().size() == 1);
    CHECK(builders::transitive_tournament(4).cyclic_triangles().empty());
}

TEST_CASE("every tournament triangle is transitive xor cyclic") {
    for (unsigned seed = 0; seed < 6; ++seed) {
        auto g = random_tournament(10, seed);
        long long tri = 120;  // C(10,3), tournament has all triples as triangles
        CHECK(g.count_transitive_triangles() +
                  static_cast<long long>(g.cyclic_triangles().size()) ==
              tri);
    }
    for (unsigned seed = 0; seed < 6; ++seed) {
        // sparser case: count undirected triangles independently
        auto g = random_oriented_graph(12, 0.5, seed);
        long long tri = 0;
        for (int a = 0; a < 12; ++a)
            for (int b = a + 1; b < 12; ++b)
                for (int c = b + 1; c < 12; ++c)
                    if (g.adjacent(a, b) && g.adjacent(b, c) && g.adjacent(a, c)) ++tri;
        CHECK(g.count_transitive_triangles() +
                  static_cast<long long>(g.cyclic_triangles().size()) ==
              tri);
    }
}

TEST_CASE("degree sums equal arc count") {
    auto g = random_oriented_graph(20, 0.4, 7);
    long long out = 0, in = 0;
    for (int v = 0; v < 20; ++v) {
        out += g.outdeg(v);
        in += g.indeg(v);
    }
    CHECK(out == g.arc_count());
    CHECK(in == g.arc_count());
}

TEST_CASE("tt_on discovers roles from an unordered triple") {
    auto g = builders::transitive_tournament(3);
    for (auto [a, b, c] : {std::array<int, 3>{0, 1, 2}, {2, 0, 1}, {1, 2, 0}}) {
        auto t = g.tt_on(a, b, c);
        REQUIRE(t.has_value());
        CHECK(t->source == 0);
        CHECK(t->middle == 1);
        CHECK(t->sink == 2);
    }
    CHECK_FALSE(builders::three_cycle().tt_on(0, 1, 2).has_value());
    OrientedGraph sparse(3);
    sparse.add_arc(0, 1);
    CHECK_FALSE(sparse.tt_on(0, 1, 2).has_value());
}

TEST_CASE("validate_tiling") {
    auto g = builders::transitive_tournament(9);
    Tiling t;
    for (int i = 0; i < 9; i += 3) t.push_back({i, i + 1, i + 2});
    auto v = validate_tiling(g, t);
    CHECK(v.valid);
    CHECK(v.perfect);

    Tiling partial = {t[0]};
    auto vp = validate_tiling(g, partial);
    CHECK(vp.valid);
    CHECK_FALSE(vp.perfect);

    Tiling overlap = {t[0], {2, 3, 4}};
    CHECK_FALSE(validate_tiling(g, overlap).valid);

    Tiling wrong = {{2, 1, 0}};  // arcs point the other way
    CHECK_FALSE(validate_tiling(g, wrong).valid);

    Tiling out_of_range = {{7, 8, 9}};
    CHECK_FALSE(validate_tiling(g, out_of_range).valid);
}

TEST_CASE("induced subgraphs") {
    auto g = builders::transitive_tournament(5);

    std::vector<int> all = {0, 1, 2, 3, 4};
    auto whole = g.induced(all);
    CHECK(whole == g);

    auto empty = g.induced(std::vector<int>{});
    CHECK(empty.order() == 0);

    std::vector<int> old_of;
    auto arc = g.induced(std::vector<int>{1, 3}, &old_of);
    CHECK(arc.order() == 2);
    CHECK(arc.arc_count() == 1);
    CHECK(arc.has_arc(0, 1));
    CHECK(old_of == std::vector<int>{1, 3});

    CHECK_THROWS_AS(g.induced(std::vector<int>{0, 9}), BadVertex);
}

TEST_CASE("arc-extension counts respect the semidegree lower bound") {
    // for every arc u->v: #{w in N-(v) making a TT with u,v} >= 3*d0 - n,
    // and the same for N+(u)
    for (unsigned seed = 0; seed < 8; ++seed) {
        auto g = random_tournament(15, 100 + seed);
        int n = g.order();
        int d0 = g.min_semidegree();
        for (int u = 0; u < n; ++u) {
            for (int v : g.out_nbrs(u).to_vector()) {
                int back = 0, fwd = 0;
                for (int w = 0; w < n; ++w) {
                    if (w == u || w == v) continue;
                    if (g.has_arc(w, v) && g.tt_on(u, v, w)) ++back;
                    if (g.has_arc(u, w) && g.tt_on(u, v, w)) ++fwd;
                }
                CHECK(back >= 3 * d0 - n);
                CHECK(fwd >= 3 * d0 - n);
            }
        }
    }
}
