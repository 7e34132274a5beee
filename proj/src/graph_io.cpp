#include "tt3/graph_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace tt3 {

OrientedGraph read_graph_text(std::istream& is) {
    std::string line;
    int lineno = 0;
    long long n = -1;
    OrientedGraph g;
    while (std::getline(is, line)) {
        ++lineno;
        std::size_t start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos || line[start] == '#') continue;
        std::istringstream ss(line);
        if (n < 0) {
            std::string kw;
            if (!(ss >> kw >> n) || kw != "n" || n < 0)
                throw ParseError(lineno, "expected header 'n <N>'");
            std::string rest;
            if (ss >> rest) throw ParseError(lineno, "trailing content after header");
            g = OrientedGraph((int)n);
            continue;
        }
        long long u, v;
        if (!(ss >> u >> v)) throw ParseError(lineno, "expected arc '<u> <v>'");
        std::string rest;
        if (ss >> rest) throw ParseError(lineno, "trailing content after arc");
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw ParseError(lineno, "vertex id out of range [0," + std::to_string(n) + ")");
        try {
            g.add_arc((int)u, (int)v);
        } catch (const GraphError& e) {
            throw ParseError(lineno, e.what());
        }
    }
    if (n < 0) throw ParseError(lineno, "missing header 'n <N>'");
    return g;
}

OrientedGraph read_graph_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw GraphError("cannot open " + path);
    return read_graph_text(f);
}

void write_graph_text(const OrientedGraph& g, std::ostream& os) {
    os << "n " << g.order() << "\n";
    for (int u = 0; u < g.order(); ++u)
        g.out_nbrs(u).for_each([&](int v) { os << u << " " << v << "\n"; });
}

void write_graph_file(const OrientedGraph& g, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw GraphError("cannot open " + path + " for writing");
    write_graph_text(g, f);
    f.close();
    if (!f) throw GraphError("write failed: " + path);
}

}  // namespace tt3
