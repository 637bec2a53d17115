#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "comprol/io.hpp"
#include "testutil.hpp"

using namespace comprol;

namespace {

Digraph parse_graph(const std::string& text) {
    std::istringstream in(text);
    return read_graph(in, "test.graph");
}

Aggregation parse_aggregates(const std::string& text) {
    std::istringstream in(text);
    return read_aggregates(in, "test.agg");
}

MatrixFile parse_matrix(const std::string& text) {
    std::istringstream in(text);
    return read_matrix(in, "test.mat");
}

}  // namespace

TEST_CASE("graph files round trip") {
    Digraph g(4, {{1, 2}, {4, 2}, {3, 4}});
    std::ostringstream out;
    write_graph(out, g);
    CHECK(out.str() == "graph 4 3\n1 1 2\n2 4 2\n3 3 4\n");
    CHECK(parse_graph(out.str()) == g);
}

TEST_CASE("graph files accept comments, blank lines and any id order") {
    Digraph g = parse_graph(
        "# a fine mesh graph\n"
        "graph 3 2   # header\n"
        "\n"
        "2 2 3\n"
        "1 1 2\n");
    CHECK(g.node_count() == 3);
    CHECK(g.edge(1) == Edge{1, 2});
    CHECK(g.edge(2) == Edge{2, 3});
}

TEST_CASE("malformed graph files are rejected with a location") {
    CHECK_THROWS_AS(parse_graph(""), ParseError);
    CHECK_THROWS_AS(parse_graph("digraph 2 1\n1 1 2\n"), ParseError);
    CHECK_THROWS_AS(parse_graph("graph 2 1\n1 1\n"), ParseError);            // short line
    CHECK_THROWS_AS(parse_graph("graph 2 2\n1 1 2\n1 2 1\n"), ParseError);   // dup id
    CHECK_THROWS_AS(parse_graph("graph 2 2\n1 1 2\n3 2 1\n"), ParseError);   // id gap
    CHECK_THROWS_AS(parse_graph("graph 2 1\n1 1 1\n"), ParseError);          // self-loop
    CHECK_THROWS_AS(parse_graph("graph 2 1\n1 1 3\n"), ParseError);          // range
    CHECK_THROWS_AS(parse_graph("graph 2 1\n1 1 2\n1 2 1\n"), ParseError);   // trailing

    try {
        parse_graph("graph 2 1\n1 1 2.5\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.source() == "test.graph");
        CHECK(e.line() == 2);
    }
}

TEST_CASE("aggregate files round trip") {
    Aggregation agg = testutil::worked_aggregation();
    std::ostringstream out;
    write_aggregates(out, agg);
    CHECK(out.str() ==
          "aggregates 3 14\n"
          "1: 1 2 3 4 5 6 7\n"
          "2: 5 6 8 9 13 14\n"
          "3: 7 8 10 11 12\n");
    std::istringstream in(out.str());
    Aggregation back = read_aggregates(in, "roundtrip");
    CHECK(back == agg);
}

TEST_CASE("malformed aggregate files are rejected") {
    CHECK_THROWS_AS(parse_aggregates("aggregates 2 4\n1: 1 2\n1: 3 4\n"), ParseError);
    CHECK_THROWS_AS(parse_aggregates("aggregates 2 4\n1 1 2\n2: 3 4\n"), ParseError);
    CHECK_THROWS_AS(parse_aggregates("aggregates 1 4\n1: 1 2\n"), ParseError);  // cover
    CHECK_THROWS_AS(parse_aggregates("aggregates 1 2\n1: 1 2 9\n"), ParseError);
    CHECK_THROWS_AS(parse_aggregates("aggregates 1 2\n"), ParseError);
}

TEST_CASE("matrix files round trip and omit zero rows") {
    SparseMatrix m(3, 1);
    m.set(1, 1, Rational(1, 2));
    m.set(3, 1, Rational(1, 2));
    std::ostringstream out;
    write_matrix(out, m);
    CHECK(out.str() == "matrix 3 1\n1 1 1/2\n3 1 1/2\n");

    MatrixFile file = parse_matrix(out.str());
    CHECK(file.rows == 3);
    CHECK(file.cols == 1);
    REQUIRE(file.entries.size() == 2);
    CHECK(file.entries[0].row == 1);
    CHECK(file.entries[0].value == Rational(1, 2));
    CHECK(file.entries[1].row == 3);
}

TEST_CASE("matrix files reject floating point and bad indices") {
    CHECK_THROWS_AS(parse_matrix("matrix 2 2\n1 1 0.5\n"), ParseError);
    CHECK_THROWS_AS(parse_matrix("matrix 2 2\n1 1 1e-3\n"), ParseError);
    CHECK_THROWS_AS(parse_matrix("matrix 2 2\n3 1 1\n"), ParseError);
    CHECK_THROWS_AS(parse_matrix("matrix 2 2\n1 1 1 1\n"), ParseError);
    CHECK_THROWS_AS(parse_matrix("matrix 2 2\n1 1 1/0\n"), ParseError);
    CHECK_NOTHROW(parse_matrix("matrix 2 2\n1 1 -7/3\n2 2 4\n"));
}

TEST_CASE("missing files raise input errors") {
    CHECK_THROWS_AS(read_graph_file("/nonexistent/path.graph"), InvalidInput);
    CHECK_THROWS_AS(read_aggregates_file("/nonexistent/path.agg"), InvalidInput);
    CHECK_THROWS_AS(read_matrix_file("/nonexistent/path.mat"), InvalidInput);
}

TEST_CASE("file writers round trip through the filesystem") {
    testutil::TempDir dir("io");
    Digraph g(3, {{1, 2}, {2, 3}});
    write_file(dir.file("g.graph"), [&](std::ostream& os) { write_graph(os, g); });
    CHECK(read_graph_file(dir.file("g.graph")) == g);
}
