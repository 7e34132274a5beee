#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "tt3/absorber.hpp"
#include "tt3/exact_solver.hpp"
#include "tt3/extremal.hpp"
#include "tt3/generators.hpp"
#include "tt3/graph_io.hpp"
#include "tt3/harness.hpp"
#include "tt3/lex_tiling.hpp"
#include "tt3/links.hpp"
#include "tt3/rng.hpp"

using nlohmann::json;
using namespace tt3;

namespace {

struct GlobalOpts {
    std::uint64_t seed = 0;
    long long budget_ms = 0;  // 0 = library default
    int threads = 0;
    bool as_json = false;
    bool as_csv = false;
    std::string out;
};

class UsageError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

long long ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - t0)
        .count();
}

OrientedGraph load_graph(const std::string& path) {
    try {
        return read_graph_file(path);
    } catch (const ParseError& e) {
        throw UsageError(path + ":" + std::to_string(e.line) + ": " + e.what());
    } catch (const std::exception& e) {
        throw UsageError(path + ": " + e.what());
    }
}

// Writes text to --out if given, else to stdout.
void emit_text(const std::string& text, const GlobalOpts& go) {
    if (go.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(go.out);
    if (!f) throw UsageError("cannot write " + go.out);
    f << text;
}

json tiles_json(const Tiling& tiling) {
    json a = json::array();
    for (const TransitiveTriangle& t : tiling)
        a.push_back({t.source, t.middle, t.sink});
    return a;
}

std::string tiles_text(const Tiling& tiling) {
    std::ostringstream os;
    for (const TransitiveTriangle& t : tiling)
        os << "  " << t.source << " -> " << t.middle << " -> " << t.sink
           << "\n";
    return os.str();
}

int finish_report(const Report& r, const GlobalOpts& go) {
    if (go.as_json && go.as_csv)
        throw UsageError("choose one of --json and --csv");
    if (go.as_json) {
        emit_text(report_json(r), go);
    } else if (go.as_csv) {
        emit_text(report_csv(r), go);
    } else if (go.out.empty()) {
        print_report(r, std::cout);
    } else {
        std::ofstream f(go.out);
        if (!f) throw UsageError("cannot write " + go.out);
        print_report(r, f);
    }
    return r.passed() ? 0 : 1;
}

int finish_json(const json& doc, const std::string& human, const GlobalOpts& go,
                bool ok) {
    if (go.as_json)
        emit_text(doc.dump(2) + "\n", go);
    else
        emit_text(human, go);
    return ok ? 0 : 1;
}

// ---- gen ----

struct GenOpts {
    std::string type;
    int n = 0, m = 0, d = -1;
    double arc_prob = -1.0;  // unset: random uses 0.5, minsemi samples tournaments
    int tries = 200'000;
    int perturb_budget = 0;
};

int run_gen(const GenOpts& o, const GlobalOpts& go) {
    if (go.out.empty())
        throw UsageError("gen writes a graph file plus a sidecar: pass --out");
    OrientedGraph g(0);
    VertexSetPartition part;
    json extra;
    if (o.type == "extremal") {
        GeneratedGraph gg = extremal_graph(o.n);
        g = std::move(gg.graph);
        part = std::move(gg.partition);
    } else if (o.type == "blowup") {
        GeneratedGraph gg = cyclic_blowup(o.n);
        g = std::move(gg.graph);
        part = std::move(gg.partition);
    } else if (o.type == "cfamily") {
        if (o.m <= 0) throw UsageError("cfamily needs --m >= 1");
        GeneratedGraph gg = c_family_graph(o.m, go.seed);
        g = std::move(gg.graph);
        part = std::move(gg.partition);
        extra["m"] = o.m;
    } else if (o.type == "random") {
        double prob = o.arc_prob < 0 ? 0.5 : o.arc_prob;
        g = random_oriented_graph(o.n, prob, go.seed);
        extra["arc_prob"] = prob;
    } else if (o.type == "tournament") {
        g = random_tournament(o.n, go.seed);
    } else if (o.type == "minsemi") {
        if (o.d < 0) throw UsageError("minsemi needs --d");
        double prob = o.arc_prob < 0 ? 1.0 : o.arc_prob;
        auto got = try_random_with_min_semidegree(o.n, o.d, go.seed, o.tries,
                                                  prob);
        extra["d"] = o.d;
        extra["tries"] = o.tries;
        if (!got) {
            std::cerr << "no graph with minimum semidegree " << o.d << " on "
                      << o.n << " vertices after " << o.tries << " tries\n";
            return 1;
        }
        g = std::move(*got);
    } else {
        throw UsageError("unknown --type " + o.type);
    }
    if (o.perturb_budget > 0)
        g = perturb(g, o.perturb_budget, derive_seed(go.seed, 1));

    write_graph_file(g, go.out);
    json side;
    side["type"] = o.type;
    side["n"] = g.order();
    side["arcs"] = g.arc_count();
    side["min_semidegree"] = g.order() > 0 ? g.min_semidegree() : 0;
    side["seed"] = go.seed;
    side["perturb"] = o.perturb_budget;
    side["graph_file"] = go.out;
    json blocks = json::object();
    for (std::size_t i = 0; i < part.names.size(); ++i)
        blocks[part.names[i]] = part.blocks[i];
    side["blocks"] = blocks;
    for (auto& [k, v] : extra.items()) side[k] = v;
    std::string side_path = go.out + ".json";
    std::ofstream f(side_path);
    if (!f) throw UsageError("cannot write " + side_path);
    f << side.dump(2) << "\n";
    std::cerr << "wrote " << go.out << " (n=" << g.order() << ", arcs="
              << g.arc_count() << ") and " << side_path << "\n";
    return 0;
}

// ---- solve ----

int run_solve(const std::string& path, const std::string& mode,
              const GlobalOpts& go) {
    OrientedGraph g = load_graph(path);
    SolveBudget budget;
    if (go.budget_ms > 0) budget.wall_ms = go.budget_ms;
    auto t0 = std::chrono::steady_clock::now();
    if (mode == "perfect") {
        SolveOutcome out = find_perfect_tiling(g, budget);
        long long wall = ms_since(t0);
        json doc{{"mode", "perfect"},
                 {"n", g.order()},
                 {"status", to_string(out.status)},
                 {"tiles", tiles_json(out.tiling)},
                 {"nodes", out.nodes},
                 {"wall_ms", wall}};
        std::ostringstream os;
        os << "status: " << to_string(out.status) << " (n=" << g.order()
           << ", nodes=" << out.nodes << ", " << wall << " ms)\n"
           << tiles_text(out.tiling);
        return finish_json(doc, os.str(), go,
                           out.status == SolveStatus::Tiling);
    }
    if (mode == "max") {
        MaxTilingResult out = max_tiling(g, budget);
        long long wall = ms_since(t0);
        int leftover = g.order() - 3 * (int)out.tiling.size();
        json doc{{"mode", "max"},
                 {"n", g.order()},
                 {"tiles", tiles_json(out.tiling)},
                 {"tile_count", out.tiling.size()},
                 {"leftover", leftover},
                 {"optimal", out.optimal},
                 {"upper_bound", out.upper_bound},
                 {"nodes", out.nodes},
                 {"wall_ms", wall}};
        std::ostringstream os;
        os << "tiles: " << out.tiling.size() << " (leftover " << leftover
           << ", " << (out.optimal ? "optimal" : "budget exceeded")
           << ", upper bound " << out.upper_bound << ", nodes=" << out.nodes
           << ", " << wall << " ms)\n"
           << tiles_text(out.tiling);
        return finish_json(doc, os.str(), go, out.optimal);
    }
    throw UsageError("unknown --mode " + mode);
}

// ---- near-tile ----

int run_near_tile(const std::string& path, long long moves,
                  const GlobalOpts& go) {
    OrientedGraph g = load_graph(path);
    PartialCover pc = lex_max_tiling(g, moves);
    CoverValidation v = validate_partial_cover(g, pc);
    CoverBoundsReport b = cover_structure_bounds(pc);
    json trace = json::array();
    for (const auto& p : pc.potential_log)
        trace.push_back({p[0], p[1], p[2]});
    json doc{{"n", pc.n},
             {"min_semidegree", pc.min_semidegree},
             {"tiles", tiles_json(pc.tiles)},
             {"tile_count", pc.tiles.size()},
             {"paths", pc.paths.size()},
             {"arcs", pc.arcs.size()},
             {"singles", pc.singles.size()},
             {"leftover", pc.leftover()},
             {"moves_scanned", pc.moves_scanned},
             {"accepted_moves", pc.accepted_moves},
             {"move_budget_exceeded", pc.move_budget_exceeded},
             {"valid", v.valid},
             {"potential_trace", trace},
             {"bounds",
              {{"hypothesis_holds", b.hypothesis_holds},
               {"p_count", b.p_count},
               {"f_count", b.f_count},
               {"i_count", b.i_count},
               {"p_ok", b.p_ok},
               {"f_ok", b.f_ok},
               {"i_ok", b.i_ok},
               {"flagged", b.flagged}}}};
    std::ostringstream os;
    os << "cover: " << pc.tiles.size() << " tiles, " << pc.paths.size()
       << " paths, " << pc.arcs.size() << " arcs, " << pc.singles.size()
       << " singles (leftover " << pc.leftover() << ")\n"
       << "moves: " << pc.accepted_moves << " accepted of "
       << pc.moves_scanned << " scanned"
       << (pc.move_budget_exceeded ? ", budget exceeded" : "") << "\n"
       << "bounds: " << (b.hypothesis_holds ? "hypothesis holds" : "hypothesis idle")
       << ", P=" << b.p_count << " F=" << b.f_count << " I=" << b.i_count
       << (b.flagged ? " FLAGGED" : " within structure bounds") << "\n";
    return finish_json(doc, os.str(), go, v.valid && !b.flagged);
}

// ---- absorb ----

int run_absorb(const std::string& path, const std::vector<int>& x,
               double sigma, const GlobalOpts& go) {
    OrientedGraph g = load_graph(path);
    if (!x.empty()) {
        if (x.size() != 3) throw UsageError("--x needs exactly three vertices");
        SearchBudget budget;
        if (go.budget_ms > 0) budget.wall_ms = (int)go.budget_ms;
        auto found = find_absorbing_set(g, {x[0], x[1], x[2]}, budget, go.seed);
        json doc{{"x", {x[0], x[1], x[2]}}, {"found", found.has_value()}};
        std::ostringstream os;
        if (found) {
            doc["u"] = found->u;
            doc["tiling_u"] = tiles_json(found->tiling_u);
            doc["tiling_ux"] = tiles_json(found->tiling_ux);
            os << "absorbing set for {" << x[0] << "," << x[1] << "," << x[2]
               << "}: " << found->u.size() << " vertices\n"
               << tiles_text(found->tiling_ux);
        } else {
            os << "no absorbing set for {" << x[0] << "," << x[1] << ","
               << x[2] << "} within budget\n";
        }
        return finish_json(doc, os.str(), go, found.has_value());
    }
    AbsorberBuild b = build_absorber(g, sigma, go.seed);
    json cores = json::array();
    for (const AbsorberCore& c : b.cores) cores.push_back(c.u.size());
    json doc{{"ok", b.ok},
             {"sigma", sigma},
             {"cores", cores},
             {"u_size", b.u_all.size()},
             {"capacity", b.capacity},
             {"weakest_triple", {b.weakest_triple[0], b.weakest_triple[1], b.weakest_triple[2]}},
             {"weakest_count", b.weakest_count},
             {"coverage_samples", b.coverage.size()},
             {"note", b.note}};
    std::ostringstream os;
    os << "absorber: " << (b.ok ? "ok" : "failed") << ", " << b.cores.size()
       << " cores (capacity " << b.capacity << "), reservoir "
       << b.u_all.size() << " vertices\n"
       << "weakest sampled triple covered by " << b.weakest_count
       << " cores\n";
    if (!b.note.empty()) os << "note: " << b.note << "\n";
    return finish_json(doc, os.str(), go, b.ok);
}

// ---- link ----

int run_link(const std::string& path, int x, int y, int p,
             const GlobalOpts& go) {
    OrientedGraph g = load_graph(path);
    SearchBudget budget;
    if (go.budget_ms > 0) budget.wall_ms = (int)go.budget_ms;
    QuadrantReport q = link_quadrants(g, x, y);
    auto w = find_link(g, x, y, p, budget, go.seed);
    json doc{{"x", x},
             {"y", y},
             {"p", p},
             {"found", w.has_value()},
             {"quadrants",
              {{"out_out", q.out_out.count()},
               {"out_in", q.out_in.count()},
               {"in_out", q.in_out.count()},
               {"in_in", q.in_in.count()},
               {"common", q.common.count()}}}};
    std::ostringstream os;
    os << "common neighborhood of (" << x << "," << y << "): "
       << q.common.count() << " vertices [++ " << q.out_out.count() << ", +- "
       << q.out_in.count() << ", -+ " << q.in_out.count() << ", -- "
       << q.in_in.count() << "]\n";
    if (w) {
        doc["seq"] = w->seq;
        doc["head"] = tiles_json(w->head);
        doc["tail"] = tiles_json(w->tail);
        os << "link of order " << p << ": ";
        for (std::size_t i = 0; i < w->seq.size(); ++i)
            os << (i ? " " : "") << w->seq[i];
        os << "\n";
    } else {
        os << "no link of order " << p << " within budget\n";
    }
    return finish_json(doc, os.str(), go, w.has_value());
}

// ---- extremal pipeline driver ----

int run_extremal(const std::string& path, const std::string& preset,
                 const GlobalOpts& go) {
    OrientedGraph g = load_graph(path);
    ExtremalConfig cfg =
        preset == "paper" ? ExtremalConfig::paper() : ExtremalConfig::desk();
    if (preset != "paper" && preset != "desk")
        throw UsageError("unknown --preset " + preset);
    ExtremalOutcome out = extremal_tile(g, go.seed, cfg);
    json doc{{"preset", preset},
             {"success", out.success},
             {"not_extremal", out.not_extremal},
             {"failed_stage", out.failed_stage},
             {"detail", out.detail},
             {"tiles", tiles_json(out.tiling)},
             {"trace", out.trace},
             {"seed", out.seed}};
    std::ostringstream os;
    for (const std::string& line : out.trace) os << line << "\n";
    if (out.success)
        os << "perfect tiling: " << out.tiling.size() << " triangles\n";
    else if (out.not_extremal)
        os << "not extremal: " << out.detail << "\n";
    else
        os << "stage failed: " << out.failed_stage << " (" << out.detail
           << ")\n";
    return finish_json(doc, os.str(), go, out.success);
}

// ---- verify / sweep / probe ----

int run_verify(const std::string& prop, const std::string& path,
               const GlobalOpts& go) {
    if (prop == "tt4") return finish_report(verify_prop_tt4(), go);
    if (prop == "cyctri") return finish_report(verify_prop_cyctri(), go);
    if (prop == "deg") {
        if (path.empty()) throw UsageError("verify --prop deg needs a graph file");
        return finish_report(verify_prop_deg(load_graph(path), path), go);
    }
    throw UsageError("unknown --prop " + prop);
}

SweepOptions sweep_options(const GlobalOpts& go) {
    SweepOptions opt;
    opt.threads = go.threads;
    if (go.budget_ms > 0) opt.exact_budget.wall_ms = go.budget_ms;
    return opt;
}

int run_sweep(const std::string& kind, const std::vector<int>& n_list,
              int n_lo, int n_hi, int samples, const GlobalOpts& go) {
    if (kind == "extremal-bound") {
        if (n_list.empty())
            throw UsageError("sweep --kind extremal-bound needs --n-list");
        return finish_report(sweep_extremal_bound(n_list, sweep_options(go)),
                             go);
    }
    if (kind == "near-tiling") {
        if (n_lo < 3 || n_hi < n_lo || samples < 0)
            throw UsageError("sweep --kind near-tiling needs --n-lo, --n-hi, --samples");
        return finish_report(
            sweep_near_tiling(n_lo, n_hi, samples, go.seed, sweep_options(go)),
            go);
    }
    throw UsageError("unknown --kind " + kind);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"transitive triangle tiling toolkit"};
    app.require_subcommand(1);

    GlobalOpts go;
    app.add_option("--seed", go.seed, "master seed");
    app.add_option("--budget-ms", go.budget_ms, "wall clock budget");
    app.add_option("--threads", go.threads,
                   "worker threads (TT3_THREADS overrides 0)");
    app.add_flag("--json", go.as_json, "emit JSON");
    app.add_flag("--csv", go.as_csv, "emit the CSV projection (reports only)");
    app.add_option("--out", go.out, "write output to a file");

    GenOpts gen;
    auto* sub_gen = app.add_subcommand("gen", "generate a graph file");
    sub_gen->fallthrough();
    sub_gen->add_option("--type", gen.type,
                        "extremal|blowup|cfamily|random|tournament|minsemi")
        ->required();
    sub_gen->add_option("--n", gen.n, "vertex count");
    sub_gen->add_option("--m", gen.m, "c-family scale (n = 18m)");
    sub_gen->add_option("--d", gen.d, "minimum semidegree target");
    sub_gen->add_option("--arc-prob", gen.arc_prob, "arc probability");
    sub_gen->add_option("--tries", gen.tries, "rejection sampling cap");
    sub_gen->add_option("--perturb", gen.perturb_budget,
                        "remove up to this many arcs per vertex");

    std::string solve_file, solve_mode = "perfect";
    auto* sub_solve = app.add_subcommand("solve", "exact tiling search");
    sub_solve->fallthrough();
    sub_solve->add_option("file", solve_file, "graph file")->required();
    sub_solve->add_option("--mode", solve_mode, "perfect|max");

    std::string near_file;
    long long near_moves = 4'000'000;
    auto* sub_near = app.add_subcommand("near-tile", "local search cover");
    sub_near->fallthrough();
    sub_near->add_option("file", near_file, "graph file")->required();
    sub_near->add_option("--moves", near_moves, "move scan budget");

    std::string absorb_file;
    std::vector<int> absorb_x;
    double absorb_sigma = 0.2;
    auto* sub_absorb = app.add_subcommand("absorb", "absorbing structures");
    sub_absorb->fallthrough();
    sub_absorb->add_option("file", absorb_file, "graph file")->required();
    sub_absorb->add_option("--x", absorb_x, "triple to absorb (three ids)")
        ->delimiter(',');
    sub_absorb->add_option("--sigma", absorb_sigma, "reservoir fraction");

    std::string link_file;
    int link_x = 0, link_y = 0, link_p = 2;
    auto* sub_link = app.add_subcommand("link", "pair linkage witness");
    sub_link->fallthrough();
    sub_link->add_option("file", link_file, "graph file")->required();
    sub_link->add_option("--x", link_x, "first vertex")->required();
    sub_link->add_option("--y", link_y, "second vertex")->required();
    sub_link->add_option("--p", link_p, "link order (1 or 2)");

    std::string ext_file, ext_preset = "desk";
    auto* sub_ext = app.add_subcommand("extremal", "structured tiling pipeline");
    sub_ext->fallthrough();
    sub_ext->add_option("file", ext_file, "graph file")->required();
    sub_ext->add_option("--preset", ext_preset, "desk|paper");

    std::string verify_prop, verify_file;
    auto* sub_verify = app.add_subcommand("verify", "proposition checks");
    sub_verify->fallthrough();
    sub_verify->add_option("--prop", verify_prop, "tt4|deg|cyctri")->required();
    sub_verify->add_option("file", verify_file, "graph file (deg only)");

    std::string sweep_kind;
    std::vector<int> sweep_ns;
    int sweep_lo = 0, sweep_hi = 0, sweep_samples = 0;
    auto* sub_sweep = app.add_subcommand("sweep", "threshold sweeps");
    sub_sweep->fallthrough();
    sub_sweep->add_option("--kind", sweep_kind, "extremal-bound|near-tiling")
        ->required();
    sub_sweep->add_option("--n-list", sweep_ns, "orders (multiples of 3)")
        ->delimiter(',');
    sub_sweep->add_option("--n-lo", sweep_lo, "smallest order");
    sub_sweep->add_option("--n-hi", sweep_hi, "largest order");
    sub_sweep->add_option("--samples", sweep_samples, "instances to collect");

    auto* sub_probe =
        app.add_subcommand("probe", "exhaustive small-order scans");
    sub_probe->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (sub_gen->parsed()) return run_gen(gen, go);
        if (sub_solve->parsed()) return run_solve(solve_file, solve_mode, go);
        if (sub_near->parsed()) return run_near_tile(near_file, near_moves, go);
        if (sub_absorb->parsed())
            return run_absorb(absorb_file, absorb_x, absorb_sigma, go);
        if (sub_link->parsed())
            return run_link(link_file, link_x, link_y, link_p, go);
        if (sub_ext->parsed()) return run_extremal(ext_file, ext_preset, go);
        if (sub_verify->parsed()) return run_verify(verify_prop, verify_file, go);
        if (sub_sweep->parsed())
            return run_sweep(sweep_kind, sweep_ns, sweep_lo, sweep_hi,
                             sweep_samples, go);
        if (sub_probe->parsed()) return finish_report(small_exhaustive_probe(), go);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const GraphError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
