#include "tt3/matching.hpp"

#include <algorithm>
#include <set>

#include "doctest.h"
#include "naive_oracle.hpp"
#include "tt3/generators.hpp"
#include "tt3/rng.hpp"

using namespace tt3;

namespace {

SimpleGraph random_simple(int n, double p, std::uint64_t seed) {
    auto rng = make_rng(seed);
    SimpleGraph g(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (bernoulli(rng, p)) g.add_edge(i, j);
    return g;
}

bool is_valid_matching(const SimpleGraph& g, const Matching& m) {
    std::set<int> seen;
    for (auto [u, v] : m.edges) {
        if (!g.has_edge(u, v)) return false;
        if (!seen.insert(u).second) return false;
        if (!seen.insert(v).second) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("max matching on fixed shapes") {
    SimpleGraph path(3);
    path.add_edge(0, 1);
    path.add_edge(1, 2);
    CHECK(max_matching(path).size() == 1);

    SimpleGraph k4(4);
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) k4.add_edge(i, j);
    CHECK(max_matching(k4).size() == 2);

    SimpleGraph c9(9);
    for (int i = 0; i < 9; ++i) c9.add_edge(i, (i + 1) % 9);
    CHECK(max_matching(c9).size() == 4);

    SimpleGraph two_triangles(6);
    for (int b : {0, 3})
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j) two_triangles.add_edge(b + i, b + j);
    CHECK(max_matching(two_triangles).size() == 2);

    CHECK(max_matching(SimpleGraph(5)).size() == 0);
}

TEST_CASE("max matching agrees with exhaustive search on small graphs") {
    for (int n = 4; n <= 10; ++n) {
        for (unsigned k = 0; k < 8; ++k) {
            double p = 0.2 + 0.1 * (k % 6);
            auto g = random_simple(n, p, 1000 * n + k);
            auto m = max_matching(g);
            CHECK(is_valid_matching(g, m));
            CHECK(m.size() == oracle::naive_max_matching_size(g));
        }
    }
}

TEST_CASE("matching size is at least min(floor(n/2), min degree)") {
    for (unsigned seed = 0; seed < 20; ++seed) {
        int n = 6 + static_cast<int>(seed % 7);
        auto g = random_simple(n, 0.55, 500 + seed);
        int bound = std::min(n / 2, g.min_degree());
        CHECK(static_cast<int>(max_matching(g).size()) >= bound);
    }
}

TEST_CASE("hall matching on complete bipartite") {
    BipartiteGraph k33(3, 3);
    for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 3; ++y) k33.add_edge(x, y);
    auto r = hall_perfect_matching(k33);
    REQUIRE(r.perfect());
    CHECK(r.matching->size() == 3);
}

TEST_CASE("hall violation witnesses") {
    BipartiteGraph iso(3, 3);
    iso.add_edge(1, 0);
    iso.add_edge(1, 1);
    iso.add_edge(2, 2);
    auto r = hall_perfect_matching(iso);  // x=0 isolated
    REQUIRE_FALSE(r.perfect());
    CHECK(r.violating_set == std::vector<int>{0});
    CHECK(r.violating_nbrs.empty());

    BipartiteGraph pinch(3, 3);  // x=0 and x=1 both only see y=0
    pinch.add_edge(0, 0);
    pinch.add_edge(1, 0);
    pinch.add_edge(2, 0);
    pinch.add_edge(2, 1);
    pinch.add_edge(2, 2);
    auto r2 = hall_perfect_matching(pinch);
    REQUIRE_FALSE(r2.perfect());
    // witness genuinely violates Hall: |N(X')| < |X'|
    std::set<int> nbrs;
    for (int x : r2.violating_set)
        for (int y : pinch.adj[x].to_vector()) nbrs.insert(y);
    CHECK(nbrs.size() < r2.violating_set.size());
    CHECK(nbrs == std::set<int>(r2.violating_nbrs.begin(), r2.violating_nbrs.end()));

    BipartiteGraph bad(2, 3);
    CHECK_THROWS_AS(hall_perfect_matching(bad), SizeMismatch);
}

TEST_CASE("degree sum hypothesis forces a perfect matching") {
    // whenever min deg from X plus min deg from Y reaches |X|, Hall holds
    int checked = 0;
    for (unsigned seed = 0; seed < 30; ++seed) {
        int n = 5 + static_cast<int>(seed % 4);
        auto rng = make_rng(9000 + seed);
        BipartiteGraph b(n, n);
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
                if (bernoulli(rng, 0.75)) b.add_edge(x, y);
        int a = n, c = n;
        for (int x = 0; x < n; ++x) a = std::min(a, b.xdeg(x));
        for (int y = 0; y < n; ++y) c = std::min(c, b.ydeg(y));
        if (a + c < n) continue;
        ++checked;
        CHECK(hall_perfect_matching(b).perfect());
    }
    CHECK(checked > 5);  // the sample must actually exercise the hypothesis
}

TEST_CASE("kuhn maximum bipartite matching agrees with exhaustive search") {
    for (unsigned seed = 0; seed < 12; ++seed) {
        int nx = 3 + static_cast<int>(seed % 3);
        int ny = 3 + static_cast<int>((seed / 3) % 3);
        auto rng = make_rng(4000 + seed);
        BipartiteGraph b(nx, ny);
        SimpleGraph flat(nx + ny);
        for (int x = 0; x < nx; ++x)
            for (int y = 0; y < ny; ++y)
                if (bernoulli(rng, 0.4)) {
                    b.add_edge(x, y);
                    flat.add_edge(x, nx + y);
                }
        auto mx = max_bipartite_matching(b);
        int size = 0;
        for (int x = 0; x < nx; ++x)
            if (mx[x] != -1) ++size;
        CHECK(size == oracle::naive_max_matching_size(flat));
    }
}

TEST_CASE("random equitable split") {
    std::vector<int> four = {3, 1, 4, 1};
    auto [a4, b4] = random_equitable_split(four, 5);
    CHECK(a4.size() == 2);
    CHECK(b4.size() == 2);

    std::vector<int> five = {10, 20, 30, 40, 50};
    auto [a5, b5] = random_equitable_split(five, 6);
    CHECK(std::abs(static_cast<int>(a5.size()) - static_cast<int>(b5.size())) == 1);

    std::multiset<int> merged(a5.begin(), a5.end());
    merged.insert(b5.begin(), b5.end());
    CHECK(merged == std::multiset<int>(five.begin(), five.end()));

    auto again = random_equitable_split(five, 6);
    CHECK(again.first == a5);
    CHECK(again.second == b5);

    // different seeds eventually produce a different split
    bool differs = false;
    for (std::uint64_t s = 7; s < 27 && !differs; ++s)
        differs = random_equitable_split(five, s).first != a5;
    CHECK(differs);
}

TEST_CASE("equitable splits roughly preserve bipartite density") {
    // split both sides of a dense bipartite graph; each quadrant density
    // stays within eta of the original
    auto rng = make_rng(31);
    int n = 40;
    std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
    int edges = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (bernoulli(rng, 0.6)) {
                adj[i][j] = 1;
                ++edges;
            }
    double d = static_cast<double>(edges) / (n * n);
    std::vector<int> all(n);
    std::iota(all.begin(), all.end(), 0);
    auto [a1, a2] = random_equitable_split(all, 8);
    auto [b1, b2] = random_equitable_split(all, 9);
    double eta = 0.12;
    for (const auto& as : {a1, a2}) {
        for (const auto& bs : {b1, b2}) {
            int e = 0;
            for (int i : as)
                for (int j : bs) e += adj[i][j];
            double dd = static_cast<double>(e) / (as.size() * bs.size());
            CHECK(dd >= d - eta);
        }
    }
}
