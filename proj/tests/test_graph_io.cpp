#include "tt3/graph_io.hpp"

#include <sstream>

#include "builders.hpp"
#include "doctest.h"
#include "tt3/generators.hpp"

using namespace tt3;

TEST_CASE("text round trip") {
    auto g = random_oriented_graph(14, 0.5, 3);
    std::ostringstream out;
    write_graph_text(g, out);
    std::istringstream in(out.str());
    auto h = read_graph_text(in);
    CHECK(g == h);
}

TEST_CASE("comments and blank lines are skipped") {
    std::istringstream in("# header comment\n\nn 3\n# mid comment\n0 1\n\n1 2\n0 2\n");
    auto g = read_graph_text(in);
    CHECK(g.order() == 3);
    CHECK(g.arc_count() == 3);
    CHECK(g.has_arc(0, 2));
}

TEST_CASE("parse errors carry line numbers") {
    auto expect_error_line = [](const std::string& text, int line) {
        std::istringstream in(text);
        try {
            read_graph_text(in);
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.line == line);
        }
    };
    expect_error_line("m 3\n", 1);             // bad header keyword
    expect_error_line("n -1\n", 1);            // bad order
    expect_error_line("n 3\n0\n", 2);          // missing endpoint
    expect_error_line("n 3\n0 1 2\n", 2);      // trailing field
    expect_error_line("n 3\n0 3\n", 2);        // out of range
    expect_error_line("n 3\n0 0\n", 2);        // loop
    expect_error_line("n 3\n0 1\n1 0\n", 3);   // orientation conflict
    expect_error_line("n 3\n0 1\n0 1\n", 3);   // duplicate
    expect_error_line("0 1\n", 1);             // missing header
}

TEST_CASE("file round trip") {
    auto g = builders::transitive_tournament(6);
    std::string path = "io_roundtrip_test.graph";
    write_graph_file(g, path);
    auto h = read_graph_file(path);
    CHECK(g == h);
    std::remove(path.c_str());
    CHECK_THROWS_AS(read_graph_file("does_not_exist.graph"), GraphError);
}
