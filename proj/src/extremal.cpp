#include "tt3/extremal.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <utility>

#include "tt3/generators.hpp"
#include "tt3/matching.hpp"
#include "tt3/rng.hpp"

namespace tt3 {

namespace {

int m3(int i) { return (i % 3 + 3) % 3; }

// Integer-vs-real threshold comparisons with a hair of slack so that exact
// boundary cases (gamma = 0, 2n/3 at n divisible by 3) land on the intended
// side despite floating rounding.
bool ge(int value, double bound) { return value + 1e-9 >= bound; }
bool le(int value, double bound) { return value <= bound + 1e-9; }

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

struct PartBits {
    std::array<Bitset, 3> p;
    PartBits(int n, const CyclicTriple& t)
        : p{Bitset::of(n, t.part[0]), Bitset::of(n, t.part[1]), Bitset::of(n, t.part[2])} {}
};

int cost_in(const OrientedGraph& g, const PartBits& b, int v, int i) {
    return g.outdeg_in(v, b.p[m3(i - 1)]) + g.deg_in(v, b.p[i]) + g.indeg_in(v, b.p[m3(i + 1)]);
}

// Remove the worst-fitting vertex until every member has zero cost. Ties go
// to the lowest id so the search is deterministic.
void prune_to_zero(const OrientedGraph& g, CyclicTriple& t) {
    const int n = g.order();
    for (;;) {
        PartBits b(n, t);
        int worst_v = -1, worst_i = -1, worst_c = 0;
        for (int i = 0; i < 3; ++i)
            for (int v : t.part[i]) {
                int c = cost_in(g, b, v, i);
                if (c > worst_c || (c == worst_c && c > 0 && v < worst_v)) {
                    worst_c = c;
                    worst_i = i;
                    worst_v = v;
                }
            }
        if (worst_c == 0) return;
        auto& part = t.part[worst_i];
        part.erase(std::find(part.begin(), part.end(), worst_v));
    }
}

// Add outside vertices that fit some part at zero cost. A zero-cost addition
// never raises the cost of an existing member, so one ascending pass keeps
// the triple 0-cyclic.
void extend_zero(const OrientedGraph& g, CyclicTriple& t) {
    const int n = g.order();
    PartBits b(n, t);
    Bitset member = b.p[0] | b.p[1] | b.p[2];
    for (int v = 0; v < n; ++v) {
        if (member.test(v)) continue;
        for (int i = 0; i < 3; ++i)
            if (cost_in(g, b, v, i) == 0) {
                t.part[i].push_back(v);
                b.p[i].set(v);
                member.set(v);
                break;
            }
    }
    for (auto& part : t.part) std::sort(part.begin(), part.end());
}

std::vector<int> sorted_diff(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

std::vector<int> minus_bits(const std::vector<int>& a, const Bitset& drop) {
    std::vector<int> out;
    out.reserve(a.size());
    for (int v : a)
        if (!drop.test(v)) out.push_back(v);
    return out;
}

// Maximum matching of the underlying graph induced on members (sorted ids),
// translated back to global vertex pairs, sorted for determinism.
std::vector<std::pair<int, int>> member_matching(const OrientedGraph& g,
                                                 const std::vector<int>& members) {
    SimpleGraph sg((int)members.size());
    for (std::size_t i = 0; i < members.size(); ++i)
        for (std::size_t j = i + 1; j < members.size(); ++j)
            if (g.adjacent(members[i], members[j])) sg.add_edge((int)i, (int)j);
    Matching m = max_matching(sg);
    std::vector<std::pair<int, int>> out;
    out.reserve(m.edges.size());
    for (auto [i, j] : m.edges) {
        int a = members[i], b = members[j];
        out.emplace_back(std::min(a, b), std::max(a, b));
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Greedy disjoint edges between two vertex lists (either arc direction),
// skipping vertices already marked used; marks what it takes.
std::vector<std::pair<int, int>> pick_cross_edges(const OrientedGraph& g,
                                                  const std::vector<int>& a,
                                                  const std::vector<int>& b, int need,
                                                  Bitset& used) {
    std::vector<std::pair<int, int>> out;
    for (int x : a) {
        if ((int)out.size() == need) break;
        if (used.test(x)) continue;
        for (int y : b) {
            if (used.test(y) || !g.adjacent(x, y)) continue;
            used.set(x);
            used.set(y);
            out.emplace_back(x, y);
            break;
        }
    }
    return out;
}

}  // namespace

std::vector<int> CyclicTriple::all() const {
    std::vector<int> v;
    v.reserve(size());
    for (const auto& p : part) v.insert(v.end(), p.begin(), p.end());
    std::sort(v.begin(), v.end());
    return v;
}

int cyclicity_cost(const OrientedGraph& g, const CyclicTriple& t, int v, int i) {
    if (v < 0 || v >= g.order()) throw BadVertex(v);
    if (i < 0 || i > 2) throw GraphError("part index out of range: " + std::to_string(i));
    PartBits b(g.order(), t);
    return cost_in(g, b, v, i);
}

bool vertex_cyclic(const OrientedGraph& g, const CyclicTriple& t, int v, int i, double gamma) {
    return le(cyclicity_cost(g, t, v, i), gamma * g.order());
}

bool triple_cyclic(const OrientedGraph& g, const CyclicTriple& t, double gamma) {
    PartBits b(g.order(), t);
    for (int i = 0; i < 3; ++i)
        for (int v : t.part[i])
            if (!le(cost_in(g, b, v, i), gamma * g.order())) return false;
    return true;
}

bool triple_equitable(const CyclicTriple& t, int n, double lambda) {
    auto sz = [&](int i) { return (int)t.part[i].size(); };
    int lo = std::min({sz(0), sz(1), sz(2)});
    int hi = std::max({sz(0), sz(1), sz(2)});
    return le(hi - lo, lambda * n) && ge(t.size(), (2.0 / 3 - lambda) * n);
}

bool good_degree_bounds_hold(const OrientedGraph& g, const CyclicTriple& t, double gamma,
                             double lambda, std::string* why) {
    const int n = g.order();
    PartBits b(n, t);
    for (int i = 0; i < 3; ++i)
        for (int v : t.part[i]) {
            if (!le(cost_in(g, b, v, i), gamma * n)) continue;  // bound claimed for cyclic v only
            int prev = m3(i - 1), next = m3(i + 1);
            double slack = (gamma + lambda) * n;
            int din = g.indeg_in(v, b.p[prev]);
            int dout = g.outdeg_in(v, b.p[next]);
            if (!ge(din, (double)b.p[prev].count() - slack)) {
                if (why)
                    *why = "vertex " + std::to_string(v) + ": d^-(v, part " +
                           std::to_string(prev + 1) + ") = " + std::to_string(din) +
                           " misses " + std::to_string(b.p[prev].count()) + " - " + fmt(slack);
                return false;
            }
            if (!ge(dout, (double)b.p[next].count() - slack)) {
                if (why)
                    *why = "vertex " + std::to_string(v) + ": d^+(v, part " +
                           std::to_string(next + 1) + ") = " + std::to_string(dout) +
                           " misses " + std::to_string(b.p[next].count()) + " - " + fmt(slack);
                return false;
            }
        }
    return true;
}

std::optional<std::vector<int>> find_tt3_free_witness(const OrientedGraph& g, int min_size) {
    const int n = g.order();
    auto cyc = g.cyclic_triangles();
    if (cyc.empty()) return std::nullopt;

    constexpr int kSeedCap = 60;
    std::vector<std::array<int, 3>> seeds;
    if ((int)cyc.size() <= kSeedCap) {
        seeds.assign(cyc.begin(), cyc.end());
    } else {
        double step = (double)cyc.size() / kSeedCap;
        for (int k = 0; k < kSeedCap; ++k) seeds.push_back(cyc[(std::size_t)(k * step)]);
    }

    std::vector<int> best;
    for (const auto& corner : seeds) {
        CyclicTriple t;
        for (int i = 0; i < 3; ++i) {
            Bitset s = g.out_nbrs(corner[m3(i - 1)]) & g.in_nbrs(corner[m3(i + 1)]);
            s.set(corner[i]);
            t.part[i] = s.to_vector();
        }
        prune_to_zero(g, t);
        extend_zero(g, t);
        if (t.size() <= (int)best.size()) continue;
        std::vector<int> cand = t.all();
        if (g.induced(cand).count_transitive_triangles() == 0) {
            best = std::move(cand);
            if ((int)best.size() == n) break;
        }
    }
    if (best.empty() || (int)best.size() < min_size) return std::nullopt;
    return best;
}

CyclicTriple cyclic_partition(const OrientedGraph& g, const std::vector<int>& w) {
    for (int v : w)
        if (v < 0 || v >= g.order()) throw BadVertex(v);
    std::vector<int> ws = w;
    std::sort(ws.begin(), ws.end());
    ws.erase(std::unique(ws.begin(), ws.end()), ws.end());
    const int k = (int)ws.size();

    std::array<int, 3> corner{-1, -1, -1};
    for (int i = 0; i < k && corner[0] < 0; ++i)
        for (int j = i + 1; j < k && corner[0] < 0; ++j)
            for (int l = j + 1; l < k; ++l) {
                int a = ws[i], b = ws[j], c = ws[l];
                if (g.has_arc(a, b) && g.has_arc(b, c) && g.has_arc(c, a)) {
                    corner = {a, b, c};
                    break;
                }
                if (g.has_arc(a, c) && g.has_arc(c, b) && g.has_arc(b, a)) {
                    corner = {a, c, b};
                    break;
                }
            }
    if (corner[0] < 0) throw NoCyclicTriangle("the given vertex set");

    Bitset in_w = Bitset::of(g.order(), ws);
    CyclicTriple t;
    for (int i = 0; i < 3; ++i) {
        Bitset s = g.out_nbrs(corner[m3(i - 1)]) & g.in_nbrs(corner[m3(i + 1)]) & in_w;
        s.set(corner[i]);
        t.part[i] = s.to_vector();
    }

    PartBits b(g.order(), t);
    Bitset placed = b.p[0] | b.p[1] | b.p[2];
    for (int v : ws) {
        if (placed.test(v)) continue;
        int home = -1;
        for (int i = 0; i < 3 && home < 0; ++i)
            if (cost_in(g, b, v, i) == 0) home = i;
        if (home < 0) throw PlacementFailed(v);
        t.part[home].push_back(v);
        b.p[home].set(v);
        placed.set(v);
    }

    for (int i = 0; i < 3; ++i)
        for (int v : t.part[i])
            if (cost_in(g, b, v, i) != 0) throw PlacementFailed(v);
    for (auto& part : t.part) std::sort(part.begin(), part.end());
    return t;
}

ExtremalDecomposition classify_vertices(const OrientedGraph& g, ExtremalDecomposition d,
                                        double gamma) {
    const int n = g.order();
    d.gamma_used = gamma;
    d.u.clear();
    d.u_prime.clear();
    d.z.clear();
    d.z_prime.clear();
    d.z_dprime.clear();

    const CyclicTriple base = d.triple;
    PartBits b(n, base);
    Bitset in_w = b.p[0] | b.p[1] | b.p[2];
    const int w_size = in_w.count();

    d.label.assign(n, -1);
    for (int v = 0; v < n; ++v)
        for (int i = 0; i < 3; ++i)
            if (le(cost_in(g, b, v, i), gamma * n)) {
                d.label[v] = i;
                break;
            }

    for (int v = 0; v < n; ++v)
        if (!in_w.test(v)) d.u.push_back(v);

    const double tau = d.cfg.tau;
    for (int u : d.u)
        if (!ge(g.deg_in(u, in_w), w_size - tau * n)) d.z.push_back(u);

    for (int u : d.z) {
        int home = -1;
        for (int i = 0; i < 3 && home < 0; ++i)
            if (le(cost_in(g, b, u, i), tau * n)) home = i;
        if (home >= 0) {
            d.triple.part[home].push_back(u);
            d.z_dprime.push_back(u);
        } else {
            d.z_prime.push_back(u);
        }
    }
    for (auto& part : d.triple.part) std::sort(part.begin(), part.end());
    d.u_prime = sorted_diff(d.u, d.z_dprime);
    return d;
}

Bitset BalancingPlan::y(int upto) const {
    Bitset acc = x1;
    if (upto >= 2) acc = acc | x2;
    if (upto >= 3) acc = acc | x3;
    return acc;
}

PropertyReport plan_properties(const OrientedGraph& g, const BalancingPlan& plan) {
    const int n = g.order();
    PropertyReport r;
    Bitset wb = Bitset::of(n, plan.d.triple.all());
    Bitset ub = Bitset::of(n, plan.d.u_prime);

    r.p1 = true;
    for (int i = 1; i <= 3; ++i) {
        Bitset y = plan.y(i);
        int wres = wb.count() - wb.count_and(y);
        int ures = ub.count() - ub.count_and(y);
        if (wres != 2 * ures) r.p1 = false;
    }

    r.p2 = true;
    for (int z : plan.d.z_prime)
        if (!plan.x2.test(z)) r.p2 = false;

    Bitset y3 = plan.y(3);
    r.y3_size = y3.count();
    r.p3 = le(r.y3_size, plan.d.cfg.tau * n);

    for (int i = 0; i < 3; ++i) {
        Bitset pb = Bitset::of(n, plan.d.triple.part[i]);
        r.residual_part[i] = pb.count() - pb.count_and(y3);
    }
    r.p4 = r.residual_part[0] == r.residual_part[1] && r.residual_part[1] == r.residual_part[2];

    r.residual_order = n - r.y3_size;
    r.p5 = r.residual_order % 18 == 0;
    return r;
}

BalancingPlan balance_stage1(const OrientedGraph& g, const ExtremalDecomposition& d) {
    const int n = g.order();
    if (n % 3 != 0) throw BalanceFailed("order " + std::to_string(n) + " is not divisible by 3");

    BalancingPlan plan;
    plan.d = d;
    plan.x1 = Bitset(n);
    plan.x2 = Bitset(n);
    plan.x3 = Bitset(n);
    plan.c = d.triple.size() - 2 * (n / 3);
    if (plan.c == 0) return plan;

    Bitset used(n);
    std::vector<int> w_all = d.triple.all();

    auto take_third = [&](int x, int y, const std::vector<int>& pool) -> int {
        for (int t : pool) {
            if (used.test(t) || t == x || t == y) continue;
            if (g.tt_on(x, y, t)) return t;
        }
        return -1;
    };

    if (plan.c > 0) {
        const int floor29 = 2 * n / 9;
        std::vector<std::pair<int, int>> surplus;  // (quota, part)
        int total = 0;
        for (int i = 0; i < 3; ++i) {
            int q = (int)d.triple.part[i].size() - floor29;
            if (q > 0) {
                surplus.emplace_back(q, i);
                total += q;
            }
        }
        if (total < plan.c)
            throw BalanceFailed("parts exceed 2n/9 by only " + std::to_string(total) +
                                " in total, need " + std::to_string(plan.c));
        std::sort(surplus.begin(), surplus.end(),
                  [](auto a, auto b) { return a.first != b.first ? a.first > b.first : a.second < b.second; });

        int needed = plan.c;
        for (auto [quota, i] : surplus) {
            if (needed == 0) break;
            int take = std::min(quota, needed);
            auto edges = member_matching(g, d.triple.part[i]);
            if ((int)edges.size() < take)
                throw BalanceFailed("part " + std::to_string(i + 1) + " holds a matching of " +
                                    std::to_string(edges.size()) + ", cannot shed " +
                                    std::to_string(take) + " triangles");
            for (int k = 0; k < take; ++k) {
                auto [x, y] = edges[k];
                int t = take_third(x, y, w_all);
                if (t < 0)
                    throw BalanceFailed("no triple vertex completes the surplus pair " +
                                        std::to_string(x) + "-" + std::to_string(y));
                plan.t1.push_back({*g.tt_on(x, y, t), "w-surplus"});
                for (int v : {x, y, t}) {
                    used.set(v);
                    plan.x1.set(v);
                }
            }
            needed -= take;
        }
    } else {
        const int deficit = -plan.c;
        std::vector<int> u2 = sorted_diff(d.u, d.z);
        auto edges = member_matching(g, u2);
        if ((int)edges.size() < deficit)
            throw BalanceFailed("complement matching holds " + std::to_string(edges.size()) +
                                " edges, need " + std::to_string(deficit));
        for (int k = 0; k < deficit; ++k) {
            auto [x, y] = edges[k];
            int t = take_third(x, y, w_all);
            if (t < 0)
                throw BalanceFailed("no triple vertex completes the complement pair " +
                                    std::to_string(x) + "-" + std::to_string(y));
            plan.t1.push_back({*g.tt_on(x, y, t), "u-surplus"});
            for (int v : {x, y, t}) {
                used.set(v);
                plan.x1.set(v);
            }
        }
    }

    Bitset wb = Bitset::of(n, w_all);
    Bitset ub = Bitset::of(n, d.u_prime);
    int wres = wb.count() - wb.count_and(plan.x1);
    int ures = ub.count() - ub.count_and(plan.x1);
    if (wres != 2 * ures)
        throw BalanceFailed("stage left " + std::to_string(wres) + " triple vertices against " +
                            std::to_string(ures) + " complement vertices");
    return plan;
}

BalancingPlan absorb_bad_vertices(const OrientedGraph& g, BalancingPlan plan) {
    Bitset used = plan.x1;
    const std::vector<int> w_all = plan.d.triple.all();

    for (int z : plan.d.z_prime) {
        if (used.test(z)) continue;  // consumed upstream; property check will object
        bool done = false;
        for (std::size_t i = 0; i < w_all.size() && !done; ++i) {
            int a = w_all[i];
            if (used.test(a)) continue;
            for (std::size_t j = i + 1; j < w_all.size(); ++j) {
                int b = w_all[j];
                if (used.test(b)) continue;
                if (auto tt = g.tt_on(z, a, b)) {
                    plan.t2.push_back({*tt, "bad-absorb"});
                    for (int v : {z, a, b}) {
                        used.set(v);
                        plan.x2.set(v);
                    }
                    done = true;
                    break;
                }
            }
        }
        if (!done)
            throw AbsorbFailed(z, "no transitive triangle with two unused triple vertices");
    }

    PropertyReport pr = plan_properties(g, plan);
    if (!pr.p1 || !pr.p2)
        throw AbsorbFailed(-1, std::string("postcondition broken: P1=") + (pr.p1 ? "ok" : "no") +
                                   " P2=" + (pr.p2 ? "ok" : "no"));
    return plan;
}

BalancingPlan equalize_and_divide(const OrientedGraph& g, BalancingPlan plan) {
    const int n = g.order();
    const double tau = plan.d.cfg.tau;
    Bitset y2 = plan.y(2);

    std::array<std::vector<int>, 3> w2;
    for (int i = 0; i < 3; ++i) w2[i] = minus_bits(plan.d.triple.part[i], y2);

    std::array<int, 3> order{0, 1, 2};
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return w2[a].size() != w2[b].size() ? w2[a].size() < w2[b].size() : a < b;
    });
    const int s1 = (int)w2[order[0]].size();
    const int s2 = (int)w2[order[1]].size();
    const int s3 = (int)w2[order[2]].size();
    const int need1 = s3 - s2;  // edges between the largest and smallest parts
    const int need2 = s3 - s1;  // edges between the largest and middle parts

    const int without_extra = y2.count() + 3 * (need1 + need2);
    const int residual = n - without_extra;
    auto mod18 = [](int v) { return (v % 18 + 18) % 18; };
    bool use_extra;
    if (mod18(residual) == 0)
        use_extra = false;
    else if (mod18(residual) == 9)
        use_extra = true;
    else
        throw EqualizeFailed("residual order " + std::to_string(residual) +
                             " is not a multiple of 9; balance upstream is broken");

    const int y3_planned = without_extra + (use_extra ? 9 : 0);
    if (!le(y3_planned, tau * n))
        throw EqualizeFailed("equalization needs |Y3| = " + std::to_string(y3_planned) +
                             ", over the budget tau*n = " + fmt(tau * n));

    Bitset used = y2;
    auto m1 = pick_cross_edges(g, w2[order[2]], w2[order[0]], need1, used);
    if ((int)m1.size() < need1)
        throw EqualizeFailed("found " + std::to_string(m1.size()) + " of " +
                             std::to_string(need1) + " cross edges between parts " +
                             std::to_string(order[2] + 1) + " and " + std::to_string(order[0] + 1));
    auto m2 = pick_cross_edges(g, w2[order[2]], w2[order[1]], need2, used);
    if ((int)m2.size() < need2)
        throw EqualizeFailed("found " + std::to_string(m2.size()) + " of " +
                             std::to_string(need2) + " cross edges between parts " +
                             std::to_string(order[2] + 1) + " and " + std::to_string(order[1] + 1));

    std::vector<std::pair<int, int>> extra;
    if (use_extra) {
        for (int i = 0; i < 3; ++i) {
            auto e = pick_cross_edges(g, w2[i], w2[m3(i + 1)], 1, used);
            if (e.empty())
                throw EqualizeFailed("no free edge between parts " + std::to_string(i + 1) +
                                     " and " + std::to_string(m3(i + 1) + 1) +
                                     " for the divisibility batch");
            extra.push_back(e[0]);
        }
    }
    plan.mod18_edges_used = use_extra;

    std::vector<int> u_pool = minus_bits(plan.d.u_prime, y2);
    auto complete = [&](const std::pair<int, int>& e, const char* role) {
        auto [x, y] = e;
        for (int u : u_pool) {
            if (used.test(u)) continue;
            if (auto tt = g.tt_on(u, x, y)) {
                plan.t3.push_back({*tt, role});
                for (int v : {u, x, y}) {
                    used.set(v);
                    plan.x3.set(v);
                }
                return true;
            }
        }
        return false;
    };
    for (const auto& e : m1)
        if (!complete(e, "equalize"))
            throw EqualizeFailed("no complement vertex completes the edge " +
                                 std::to_string(e.first) + "-" + std::to_string(e.second));
    for (const auto& e : m2)
        if (!complete(e, "equalize"))
            throw EqualizeFailed("no complement vertex completes the edge " +
                                 std::to_string(e.first) + "-" + std::to_string(e.second));
    for (const auto& e : extra)
        if (!complete(e, "mod18"))
            throw EqualizeFailed("no complement vertex completes the divisibility edge " +
                                 std::to_string(e.first) + "-" + std::to_string(e.second));

    PropertyReport pr = plan_properties(g, plan);
    if (!pr.p1 || !pr.p3 || !pr.p4 || !pr.p5)
        throw EqualizeFailed(std::string("postcondition broken: P1=") + (pr.p1 ? "ok" : "no") +
                             " P3=" + (pr.p3 ? "ok" : "no") + " P4=" + (pr.p4 ? "ok" : "no") +
                             " P5=" + (pr.p5 ? "ok" : "no"));
    return plan;
}

Tiling finish_tiling(const OrientedGraph& g, const BalancingPlan& plan, std::uint64_t seed,
                     int retries) {
    const int n = g.order();
    const double tau = plan.d.cfg.tau;
    Bitset y3 = plan.y(3);

    CyclicTriple rt;
    for (int i = 0; i < 3; ++i) rt.part[i] = minus_bits(plan.d.triple.part[i], y3);
    std::vector<int> u3 = minus_bits(plan.d.u_prime, y3);

    const int p0 = (int)rt.part[0].size();
    if ((int)rt.part[1].size() != p0 || (int)rt.part[2].size() != p0)
        throw FinishFailed("residual parts differ: " + std::to_string(p0) + "/" +
                           std::to_string(rt.part[1].size()) + "/" +
                           std::to_string(rt.part[2].size()));
    const int rest = 3 * p0 + (int)u3.size();
    if (rest == 0) return {};
    if (rest % 18 != 0)
        throw FinishFailed("residual order " + std::to_string(rest) + " is not divisible by 18");
    const int m = rest / 18;
    if (p0 != 4 * m || (int)u3.size() != 6 * m)
        throw FinishFailed("residual shape is " + std::to_string(p0) + "+" +
                           std::to_string(u3.size()) + ", want " + std::to_string(4 * m) + "+" +
                           std::to_string(6 * m));

    PartBits rb(n, rt);
    for (int i = 0; i < 3; ++i)
        for (int v : rt.part[i])
            if (!le(cost_in(g, rb, v, i), 2 * tau * n))
                throw FinishFailed("vertex " + std::to_string(v) + " drifts from part " +
                                   std::to_string(i + 1) + " by " +
                                   std::to_string(cost_in(g, rb, v, i)) + " > 2*tau*n = " +
                                   fmt(2 * tau * n));
    Bitset wbits = rb.p[0] | rb.p[1] | rb.p[2];
    for (int u : u3)
        if (!ge(g.deg_in(u, wbits), 12 * m - 2 * tau * n))
            throw FinishFailed("complement vertex " + std::to_string(u) + " reaches only " +
                               std::to_string(g.deg_in(u, wbits)) + " of " +
                               std::to_string(12 * m) + " residual triple vertices");

    std::string last = "no attempt made";
    for (int r = 0; r < retries; ++r) {
        std::uint64_t sr = derive_seed(seed, (std::uint64_t)r);
        std::array<std::vector<int>, 3> half_a, half_b;
        for (int i = 0; i < 3; ++i) {
            auto [a, b] = random_equitable_split(rt.part[i], derive_seed(sr, (std::uint64_t)i));
            half_a[i] = std::move(a);
            half_b[i] = std::move(b);
        }

        // forward bipartite graphs between consecutive halves, covering each
        // half exactly once: A1->A2, B2->B3, A3->B1
        std::array<std::pair<const std::vector<int>*, const std::vector<int>*>, 3> sides{
            {{&half_a[0], &half_a[1]}, {&half_b[1], &half_b[2]}, {&half_a[2], &half_b[0]}}};
        std::vector<std::pair<int, int>> arcs;
        arcs.reserve((std::size_t)(6 * m));
        bool ok = true;
        for (int k = 0; k < 3 && ok; ++k) {
            const auto& xs = *sides[k].first;
            const auto& ys = *sides[k].second;
            BipartiteGraph bg((int)xs.size(), (int)ys.size());
            for (int xi = 0; xi < (int)xs.size(); ++xi)
                for (int yi = 0; yi < (int)ys.size(); ++yi)
                    if (g.has_arc(xs[xi], ys[yi])) bg.add_edge(xi, yi);
            HallResult h = hall_perfect_matching(bg);
            if (!h.perfect()) {
                last = "half matching " + std::to_string(k + 1) + " failed: " +
                       std::to_string(h.violating_set.size()) + " vertices see only " +
                       std::to_string(h.violating_nbrs.size()) + " partners";
                ok = false;
                break;
            }
            for (auto [xi, yi] : h.matching->edges) arcs.emplace_back(xs[xi], ys[yi]);
        }
        if (!ok) continue;

        BipartiteGraph bp((int)u3.size(), (int)arcs.size());
        for (int ui = 0; ui < (int)u3.size(); ++ui)
            for (int ei = 0; ei < (int)arcs.size(); ++ei)
                if (g.tt_on(u3[ui], arcs[ei].first, arcs[ei].second)) bp.add_edge(ui, ei);
        HallResult h = hall_perfect_matching(bp);
        if (!h.perfect()) {
            int worst = 0;
            for (int ui = 1; ui < bp.nx; ++ui)
                if (bp.xdeg(ui) < bp.xdeg(worst)) worst = ui;
            last = "triangle matching failed: complement vertex " + std::to_string(u3[worst]) +
                   " completes only " + std::to_string(bp.xdeg(worst)) + " of " +
                   std::to_string(arcs.size()) + " edges";
            continue;
        }

        Tiling tiles;
        tiles.reserve(arcs.size());
        for (auto [ui, ei] : h.matching->edges)
            tiles.push_back(*g.tt_on(u3[ui], arcs[ei].first, arcs[ei].second));
        return tiles;
    }
    throw FinishFailed("no perfect assembly after " + std::to_string(retries) +
                       " resamples; last: " + last);
}

ExtremalOutcome extremal_tile(const OrientedGraph& g, std::uint64_t seed,
                              const ExtremalConfig& cfg, int finish_retries) {
    const int n = g.order();
    if (n % 3 != 0) throw BadN("order must be divisible by 3, got " + std::to_string(n));

    ExtremalOutcome out;
    out.seed = seed;
    out.trace.push_back("preset " + cfg.name + ": alpha=" + fmt(cfg.alpha) +
                        " tau=" + fmt(cfg.tau) + " gamma=" + fmt(cfg.gamma) +
                        " lambda=" + fmt(cfg.lambda));
    out.trace.push_back("tolerances kept separate: beta(finish)=" + fmt(cfg.beta) +
                        " beta(claim)=16*18*tau=" + fmt(16 * 18 * cfg.tau));
    if (n == 0) {
        out.success = true;
        out.trace.push_back("empty graph: nothing to tile");
        return out;
    }

    const int min_size = (int)std::ceil((2.0 / 3 - cfg.alpha) * n - 1e-9);
    auto witness = find_tt3_free_witness(g, min_size);
    if (!witness) {
        out.not_extremal = true;
        out.trace.push_back("no triangle-free set of size >= " + std::to_string(min_size) +
                            ": structure is not near the tight family");
        return out;
    }
    out.trace.push_back("witness: " + std::to_string(witness->size()) + " vertices (need " +
                        std::to_string(min_size) + ")");

    try {
        CyclicTriple t = cyclic_partition(g, *witness);
        out.trace.push_back("partition: parts " + std::to_string(t.part[0].size()) + "/" +
                            std::to_string(t.part[1].size()) + "/" +
                            std::to_string(t.part[2].size()));

        ExtremalDecomposition d0;
        d0.triple = std::move(t);
        d0.cfg = cfg;
        ExtremalDecomposition d = classify_vertices(g, d0, cfg.gamma);
        int bad = 0;
        for (int v = 0; v < n; ++v) bad += d.label[v] < 0;
        out.trace.push_back("classify: |Z|=" + std::to_string(d.z.size()) + " merged=" +
                            std::to_string(d.z_dprime.size()) + " leftover=" +
                            std::to_string(d.z_prime.size()) + " bad=" + std::to_string(bad));

        BalancingPlan plan = balance_stage1(g, d);
        out.trace.push_back("stage 1: c=" + std::to_string(plan.c) + ", " +
                            std::to_string(plan.t1.size()) + " triangles");
        plan = absorb_bad_vertices(g, plan);
        out.trace.push_back("stage 2: " + std::to_string(plan.t2.size()) + " triangles");
        plan = equalize_and_divide(g, plan);
        out.trace.push_back("stage 3: " + std::to_string(plan.t3.size()) + " triangles" +
                            (plan.mod18_edges_used ? " (divisibility batch spent)" : ""));

        PropertyReport pr = plan_properties(g, plan);
        out.trace.push_back("residual: " + std::to_string(pr.residual_order) + " vertices, parts " +
                            std::to_string(pr.residual_part[0]) + "/" +
                            std::to_string(pr.residual_part[1]) + "/" +
                            std::to_string(pr.residual_part[2]));

        Tiling tiles = finish_tiling(g, plan, derive_seed(seed, 0x0e), finish_retries);
        out.trace.push_back("finish: " + std::to_string(tiles.size()) + " residual triangles");

        for (const auto& pt : plan.t1) tiles.push_back(pt.tri);
        for (const auto& pt : plan.t2) tiles.push_back(pt.tri);
        for (const auto& pt : plan.t3) tiles.push_back(pt.tri);
        TilingValidation v = validate_tiling(g, tiles);
        if (!v.valid || !v.perfect) {
            out.failed_stage = "assemble";
            out.detail = v.reason.empty() ? "incomplete cover" : v.reason;
            out.trace.push_back("failed at assemble: " + out.detail);
            return out;
        }
        out.tiling = std::move(tiles);
        out.success = true;
        out.trace.push_back("tiled with " + std::to_string(out.tiling.size()) + " triangles");
    } catch (const ExtremalError& e) {
        out.failed_stage = e.stage;
        out.detail = e.what();
        out.trace.push_back("failed at " + e.stage + ": " + out.detail);
    }
    return out;
}

}  // namespace tt3
