#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "tt3/graph.hpp"

namespace tt3 {

struct BadLinkOrder : GraphError {
    explicit BadLinkOrder(int p)
        : GraphError("link order must be 1 or 2, got " + std::to_string(p)) {}
};

struct SearchBudget {
    int attempts = 5000;
    int wall_ms = 10'000;
};

// The four sign classes of the common neighborhood of an ordered pair (x,y),
// and the arc set F(x,y) whose every member e makes both xe and ye transitive
// triangles: arcs leaving in_in, arcs entering out_out, and arcs inside one
// class.
struct QuadrantReport {
    int x = -1, y = -1;
    Bitset out_out;  // N+(x) & N+(y)
    Bitset out_in;   // N+(x) & N-(y)
    Bitset in_out;   // N-(x) & N+(y)
    Bitset in_in;    // N-(x) & N-(y)
    Bitset common;   // disjoint union of the four
    std::vector<std::pair<int, int>> f_edges;
};

QuadrantReport link_quadrants(const OrientedGraph& g, int x, int y);

// Refinement used by the linkedness argument, with threshold t = ceil(beta*n):
// n0 collects common neighbors meeting >= t F-arcs, core is the rest, and
// i_plus / i_minus are core vertices with out- (in-)degree into core below 2t.
struct LinkClasses {
    Bitset n0, core, i_plus, i_minus;
};

LinkClasses link_classes(const OrientedGraph& g, const QuadrantReport& q, double beta);

// A (3p+1)-vertex gadget joining seq.front() to seq.back(): head tiles the
// first 3p positions, tail tiles the last 3p. p = 0 degenerates to a single
// vertex and two empty tilings.
struct LinkWitness {
    int p = 0;
    std::vector<int> seq;
    Tiling head;
    Tiling tail;
};

bool link_witness_ok(const OrientedGraph& g, const LinkWitness& w, int x, int y);

// Search for a p-link witness from x to y avoiding `forbidden` (x and y remain
// usable as the endpoints). x == y returns the degenerate 0-link witness.
// For p = 1 the search is exhaustive over F(x,y); for p = 2 it randomizes over
// one-link extensions (F-arc plus a disjoint triangle) and chained one-links
// through a middle vertex, so a nullopt at p = 2 means the budget ran out, not
// that no witness exists.
std::optional<LinkWitness> find_link(const OrientedGraph& g, int x, int y, int p,
                                     SearchBudget budget = {}, std::uint64_t seed = 0,
                                     const Bitset* forbidden = nullptr);

}  // namespace tt3
