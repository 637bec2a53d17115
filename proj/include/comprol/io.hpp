#pragma once

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "comprol/aggregation.hpp"
#include "comprol/digraph.hpp"
#include "comprol/sparse.hpp"

// Text formats, all 1-based, all exact:
//
//   graph file:      "graph <nodes> <edges>" then one line per edge,
//                    "<edge_id> <tail> <head>", ids covering 1..edges.
//   aggregates file: "aggregates <coarse_nodes> <fine_nodes>" then one line
//                    per aggregate, "<n>: <p1> <p2> ...".
//   matrix file:     "matrix <rows> <cols>" then triplet lines
//                    "<row> <col> <value>" with value an integer or "a/b".
//                    Zero rows are simply absent.
//
// '#' starts a comment anywhere in a line. Values are never floating point.

namespace comprol {

namespace detail {

class LineReader {
public:
    LineReader(std::istream& in, std::string source) : in_(in), source_(std::move(source)) {}

    // Next non-empty line with comments stripped, or nullopt at EOF.
    std::optional<std::string> next() {
        std::string line;
        while (std::getline(in_, line)) {
            ++line_no_;
            if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
            std::istringstream probe(line);
            std::string token;
            if (probe >> token) return line;
        }
        return std::nullopt;
    }

    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError(source_, line_no_, what);
    }

    int line() const { return line_no_; }
    const std::string& source() const { return source_; }

private:
    std::istream& in_;
    std::string source_;
    int line_no_ = 0;
};

inline long parse_int(LineReader& reader, const std::string& token, const char* what) {
    std::size_t used = 0;
    long value = 0;
    bool ok = true;
    try {
        value = std::stol(token, &used);
    } catch (const std::exception&) {
        ok = false;
    }
    if (!ok || used != token.size())
        reader.fail(std::string("bad ") + what + ": '" + token + "'");
    return value;
}

}  // namespace detail

inline Digraph read_graph(std::istream& in, const std::string& source = "<graph>") {
    detail::LineReader reader(in, source);
    auto header = reader.next();
    if (!header) reader.fail("missing 'graph <nodes> <edges>' header");
    std::istringstream hs(*header);
    std::string kw;
    long nodes = 0, edge_count = 0;
    std::string nodes_tok, edges_tok, extra;
    if (!(hs >> kw >> nodes_tok >> edges_tok) || kw != "graph" || (hs >> extra))
        reader.fail("expected header 'graph <nodes> <edges>'");
    nodes = detail::parse_int(reader, nodes_tok, "node count");
    edge_count = detail::parse_int(reader, edges_tok, "edge count");
    if (nodes < 1 || edge_count < 0) reader.fail("node/edge counts out of range");

    std::vector<Edge> edges(static_cast<std::size_t>(edge_count));
    std::vector<bool> seen(static_cast<std::size_t>(edge_count) + 1, false);
    for (long k = 0; k < edge_count; ++k) {
        auto line = reader.next();
        if (!line) reader.fail("expected " + std::to_string(edge_count) + " edge lines");
        std::istringstream ls(*line);
        std::string id_tok, tail_tok, head_tok;
        if (!(ls >> id_tok >> tail_tok >> head_tok) || (ls >> extra))
            reader.fail("expected '<edge_id> <tail> <head>'");
        long id = detail::parse_int(reader, id_tok, "edge id");
        long tail = detail::parse_int(reader, tail_tok, "tail");
        long head = detail::parse_int(reader, head_tok, "head");
        if (id < 1 || id > edge_count) reader.fail("edge id " + std::to_string(id) + " out of range");
        if (seen[static_cast<std::size_t>(id)]) reader.fail("duplicate edge id " + std::to_string(id));
        seen[static_cast<std::size_t>(id)] = true;
        edges[static_cast<std::size_t>(id) - 1] = {static_cast<NodeId>(tail), static_cast<NodeId>(head)};
    }
    if (reader.next()) reader.fail("trailing content after edge list");
    try {
        return Digraph(static_cast<int>(nodes), std::move(edges));
    } catch (const InvalidInput& e) {
        reader.fail(e.what());
    }
}

inline void write_graph(std::ostream& out, const Digraph& g) {
    out << "graph " << g.node_count() << " " << g.edge_count() << "\n";
    for (EdgeId e = 1; e <= g.edge_count(); ++e)
        out << e << " " << g.edge(e).tail << " " << g.edge(e).head << "\n";
}

inline Aggregation read_aggregates(std::istream& in, const std::string& source = "<aggregates>") {
    detail::LineReader reader(in, source);
    auto header = reader.next();
    if (!header) reader.fail("missing 'aggregates <coarse> <fine>' header");
    std::istringstream hs(*header);
    std::string kw, coarse_tok, fine_tok, extra;
    if (!(hs >> kw >> coarse_tok >> fine_tok) || kw != "aggregates" || (hs >> extra))
        reader.fail("expected header 'aggregates <coarse_nodes> <fine_nodes>'");
    long coarse = detail::parse_int(reader, coarse_tok, "coarse node count");
    long fine = detail::parse_int(reader, fine_tok, "fine node count");
    if (coarse < 1 || fine < 1) reader.fail("counts out of range");

    std::vector<std::set<NodeId>> sets(static_cast<std::size_t>(coarse));
    std::vector<bool> seen(static_cast<std::size_t>(coarse) + 1, false);
    for (long k = 0; k < coarse; ++k) {
        auto line = reader.next();
        if (!line) reader.fail("expected " + std::to_string(coarse) + " aggregate lines");
        std::istringstream ls(*line);
        std::string id_tok;
        ls >> id_tok;
        if (id_tok.empty() || id_tok.back() != ':') reader.fail("expected '<n>: <members...>'");
        id_tok.pop_back();
        long n = detail::parse_int(reader, id_tok, "aggregate id");
        if (n < 1 || n > coarse) reader.fail("aggregate id " + std::to_string(n) + " out of range");
        if (seen[static_cast<std::size_t>(n)]) reader.fail("duplicate aggregate id " + std::to_string(n));
        seen[static_cast<std::size_t>(n)] = true;
        std::string member_tok;
        while (ls >> member_tok) {
            long p = detail::parse_int(reader, member_tok, "member");
            sets[static_cast<std::size_t>(n) - 1].insert(static_cast<NodeId>(p));
        }
    }
    if (reader.next()) reader.fail("trailing content after aggregate list");
    try {
        return Aggregation(std::move(sets), static_cast<int>(fine));
    } catch (const Error& e) {
        reader.fail(e.what());
    }
}

inline void write_aggregates(std::ostream& out, const Aggregation& agg) {
    out << "aggregates " << agg.coarse_node_count() << " " << agg.fine_node_count() << "\n";
    for (int n = 1; n <= agg.coarse_node_count(); ++n) {
        out << n << ":";
        for (NodeId p : agg.members(n)) out << " " << p;
        out << "\n";
    }
}

struct MatrixFile {
    int rows = 0;
    int cols = 0;
    std::vector<Triplet> entries;
};

inline MatrixFile read_matrix(std::istream& in, const std::string& source = "<matrix>") {
    detail::LineReader reader(in, source);
    auto header = reader.next();
    if (!header) reader.fail("missing 'matrix <rows> <cols>' header");
    std::istringstream hs(*header);
    std::string kw, rows_tok, cols_tok, extra;
    if (!(hs >> kw >> rows_tok >> cols_tok) || kw != "matrix" || (hs >> extra))
        reader.fail("expected header 'matrix <rows> <cols>'");
    MatrixFile file;
    file.rows = static_cast<int>(detail::parse_int(reader, rows_tok, "row count"));
    file.cols = static_cast<int>(detail::parse_int(reader, cols_tok, "column count"));
    if (file.rows < 0 || file.cols < 0) reader.fail("matrix dimensions out of range");

    while (auto line = reader.next()) {
        std::istringstream ls(*line);
        std::string row_tok, col_tok, value_tok;
        if (!(ls >> row_tok >> col_tok >> value_tok) || (ls >> extra))
            reader.fail("expected '<row> <col> <value>'");
        Triplet t;
        t.row = static_cast<int>(detail::parse_int(reader, row_tok, "row"));
        t.col = static_cast<int>(detail::parse_int(reader, col_tok, "column"));
        if (t.row < 1 || t.row > file.rows || t.col < 1 || t.col > file.cols)
            reader.fail("entry (" + std::to_string(t.row) + ", " + std::to_string(t.col) +
                        ") out of range");
        try {
            t.value = parse_rational(value_tok);
        } catch (const InvalidInput& e) {
            reader.fail(e.what());
        }
        file.entries.push_back(std::move(t));
    }
    return file;
}

inline void write_matrix(std::ostream& out, const SparseMatrix& m) {
    out << "matrix " << m.rows() << " " << m.cols() << "\n";
    for (const Triplet& t : m.triplets())
        out << t.row << " " << t.col << " " << to_string(t.value) << "\n";
}

namespace detail {

template <typename Reader>
auto read_file(const std::string& path, Reader&& reader_fn) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open '" + path + "'");
    return reader_fn(in, path);
}

}  // namespace detail

inline Digraph read_graph_file(const std::string& path) {
    return detail::read_file(path, [](std::istream& in, const std::string& p) {
        return read_graph(in, p);
    });
}

inline Aggregation read_aggregates_file(const std::string& path) {
    return detail::read_file(path, [](std::istream& in, const std::string& p) {
        return read_aggregates(in, p);
    });
}

inline MatrixFile read_matrix_file(const std::string& path) {
    return detail::read_file(path, [](std::istream& in, const std::string& p) {
        return read_matrix(in, p);
    });
}

template <typename Writer>
void write_file(const std::string& path, Writer&& writer_fn) {
    std::ofstream out(path);
    if (!out) throw InvalidInput("cannot write '" + path + "'");
    writer_fn(out);
    if (!out) throw InvalidInput("write to '" + path + "' failed");
}

}  // namespace comprol
