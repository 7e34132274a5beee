#pragma once

#include <iosfwd>
#include <string>

#include "tt3/graph.hpp"

namespace tt3 {

struct ParseError : GraphError {
    int line;
    ParseError(int line_no, const std::string& what)
        : GraphError("line " + std::to_string(line_no) + ": " + what), line(line_no) {}
};

// Text format: optional '#' comment lines anywhere; first non-comment line
// "n <N>"; then one arc per line "<u> <v>" meaning u->v, 0-based.
OrientedGraph read_graph_text(std::istream& is);
OrientedGraph read_graph_file(const std::string& path);
void write_graph_text(const OrientedGraph& g, std::ostream& os);
void write_graph_file(const OrientedGraph& g, const std::string& path);

}  // namespace tt3
