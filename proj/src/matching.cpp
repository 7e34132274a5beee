#include "tt3/matching.hpp"

#include <algorithm>
#include <queue>

#include "tt3/rng.hpp"

namespace tt3 {

SimpleGraph SimpleGraph::underlying(const OrientedGraph& g) {
    SimpleGraph s(g.order());
    for (int u = 0; u < g.order(); ++u)
        g.out_nbrs(u).for_each([&](int v) { s.add_edge(u, v); });
    return s;
}

void SimpleGraph::add_edge(int u, int v) {
    if (u == v) throw LoopRejected(u);
    adj_[u].set(v);
    adj_[v].set(u);
}

int SimpleGraph::min_degree() const {
    if (n_ == 0) throw GraphError("min_degree of empty graph");
    int d = n_;
    for (int v = 0; v < n_; ++v) d = std::min(d, degree(v));
    return d;
}

long long SimpleGraph::edge_count() const {
    long long c = 0;
    for (int v = 0; v < n_; ++v) c += degree(v);
    return c / 2;
}

namespace {

// Classic blossom search: BFS an alternating tree from root, contracting odd
// cycles onto their base vertex; returns an exposed vertex ending an
// augmenting path, or -1.
class Blossom {
public:
    explicit Blossom(const SimpleGraph& g)
        : g_(g), n_(g.order()), match_(n_, -1), parent_(n_), base_(n_), used_(n_), mark_(n_) {}

    Matching run() {
        for (int v = 0; v < n_; ++v)
            if (match_[v] == -1)
                g_.nbrs(v).for_each([&](int u) {
                    if (match_[v] == -1 && match_[u] == -1 && u != v) {
                        match_[v] = u;
                        match_[u] = v;
                    }
                });
        for (int v = 0; v < n_; ++v)
            if (match_[v] == -1) {
                int w = find_path(v);
                if (w != -1) augment(w);
            }
        Matching m;
        for (int v = 0; v < n_; ++v)
            if (match_[v] > v) m.edges.emplace_back(v, match_[v]);
        return m;
    }

private:
    int lca(int a, int b) {
        std::vector<char> seen(n_, 0);
        for (;;) {
            a = base_[a];
            seen[a] = 1;
            if (match_[a] == -1) break;
            a = parent_[match_[a]];
        }
        for (;;) {
            b = base_[b];
            if (seen[b]) return b;
            b = parent_[match_[b]];
        }
    }

    void mark_path(int v, int b, int child) {
        while (base_[v] != b) {
            mark_[base_[v]] = 1;
            mark_[base_[match_[v]]] = 1;
            parent_[v] = child;
            child = match_[v];
            v = parent_[match_[v]];
        }
    }

    int find_path(int root) {
        std::fill(used_.begin(), used_.end(), 0);
        std::fill(parent_.begin(), parent_.end(), -1);
        for (int i = 0; i < n_; ++i) base_[i] = i;
        used_[root] = 1;
        std::queue<int> q;
        q.push(root);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            int result = -1;
            g_.nbrs(v).for_each([&](int to) {
                if (result != -1) return;
                if (base_[v] == base_[to] || match_[v] == to) return;
                if (to == root || (match_[to] != -1 && parent_[match_[to]] != -1)) {
                    int cur = lca(v, to);
                    std::fill(mark_.begin(), mark_.end(), 0);
                    mark_path(v, cur, to);
                    mark_path(to, cur, v);
                    for (int i = 0; i < n_; ++i)
                        if (mark_[base_[i]]) {
                            base_[i] = cur;
                            if (!used_[i]) {
                                used_[i] = 1;
                                q.push(i);
                            }
                        }
                } else if (parent_[to] == -1) {
                    parent_[to] = v;
                    if (match_[to] == -1) {
                        result = to;
                    } else {
                        used_[match_[to]] = 1;
                        q.push(match_[to]);
                    }
                }
            });
            if (result != -1) return result;
        }
        return -1;
    }

    void augment(int v) {
        while (v != -1) {
            int pv = parent_[v], ppv = match_[pv];
            match_[v] = pv;
            match_[pv] = v;
            v = ppv;
        }
    }

    const SimpleGraph& g_;
    int n_;
    std::vector<int> match_, parent_, base_;
    std::vector<char> used_, mark_;
};

}  // namespace

Matching max_matching(const SimpleGraph& g) { return Blossom(g).run(); }

namespace {

bool kuhn_try(const BipartiteGraph& b, int x, std::vector<int>& match_y, std::vector<char>& seen) {
    bool found = false;
    b.adj[x].for_each([&](int y) {
        if (found || seen[y]) return;
        seen[y] = 1;
        if (match_y[y] == -1 || kuhn_try(b, match_y[y], match_y, seen)) {
            match_y[y] = x;
            found = true;
        }
    });
    return found;
}

}  // namespace

std::vector<int> max_bipartite_matching(const BipartiteGraph& b) {
    std::vector<int> match_y(b.ny, -1);
    std::vector<char> seen(b.ny);
    for (int x = 0; x < b.nx; ++x) {
        std::fill(seen.begin(), seen.end(), 0);
        kuhn_try(b, x, match_y, seen);
    }
    std::vector<int> match_x(b.nx, -1);
    for (int y = 0; y < b.ny; ++y)
        if (match_y[y] != -1) match_x[match_y[y]] = y;
    return match_x;
}

HallResult hall_perfect_matching(const BipartiteGraph& b) {
    if (b.nx != b.ny) throw SizeMismatch(b.nx, b.ny);
    HallResult r;
    std::vector<int> match_x = max_bipartite_matching(b);
    int unmatched = -1;
    for (int x = 0; x < b.nx; ++x)
        if (match_x[x] == -1) unmatched = x;
    if (unmatched == -1) {
        Matching m;
        for (int x = 0; x < b.nx; ++x) m.edges.emplace_back(x, match_x[x]);
        r.matching = std::move(m);
        return r;
    }
    // Alternating reachability from an exposed x under a maximum matching
    // pins a set X' with |N(X')| = |X'| - 1.
    std::vector<int> match_y(b.ny, -1);
    for (int x = 0; x < b.nx; ++x)
        if (match_x[x] != -1) match_y[match_x[x]] = x;
    Bitset in_s(b.nx), in_t(b.ny);
    in_s.set(unmatched);
    std::vector<int> frontier = {unmatched};
    while (!frontier.empty()) {
        std::vector<int> next;
        for (int x : frontier)
            b.adj[x].for_each([&](int y) {
                if (in_t.test(y)) return;
                in_t.set(y);
                int x2 = match_y[y];  // matched, else the matching wasn't maximum
                if (x2 != -1 && !in_s.test(x2)) {
                    in_s.set(x2);
                    next.push_back(x2);
                }
            });
        frontier = std::move(next);
    }
    r.violating_set = in_s.to_vector();
    r.violating_nbrs = in_t.to_vector();
    return r;
}

std::pair<std::vector<int>, std::vector<int>> random_equitable_split(const std::vector<int>& set,
                                                                     std::uint64_t seed) {
    std::vector<int> v = set;
    Rng rng = make_rng(seed);
    shuffle(v, rng);
    std::size_t first = v.size() / 2;
    if (v.size() % 2 == 1 && bernoulli(rng, 0.5)) ++first;
    std::vector<int> a(v.begin(), v.begin() + first), b(v.begin() + first, v.end());
    return {std::move(a), std::move(b)};
}

}  // namespace tt3
