#pragma once

#include <vector>

#include "comprol/beta_solver.hpp"
#include "comprol/coarse_topology.hpp"
#include "comprol/linalg.hpp"

namespace comprol {

// Brute-force cross-check of the per-edge flow systems: dense exact Gaussian
// elimination on the full (admissible nodes x admissible edges) system, no
// spanning-tree shortcut. Deliberately independent of the production solver;
// kept to small instances by a hard node bound.

struct OracleRow {
    EdgeId fine_edge = 0;
    bool solvable = false;
    SparseVector solution;  // one particular solution when solvable
};

inline OracleRow oracle_solve_row(const Digraph& coarse, const InducedSubgraph& sub,
                                  const SparseVector& demand_row, int max_nodes = 12) {
    if (static_cast<int>(sub.nodes.size()) > max_nodes)
        throw SizeLimit("induced subgraph has " + std::to_string(sub.nodes.size()) +
                        " nodes, oracle bound is " + std::to_string(max_nodes));
    const std::vector<NodeId> nodes(sub.nodes.begin(), sub.nodes.end());
    const std::vector<EdgeId> edges(sub.edges.begin(), sub.edges.end());

    DenseMatrix a(nodes.size(), std::vector<Rational>(edges.size(), Rational(0)));
    std::vector<Rational> b(nodes.size(), Rational(0));
    for (std::size_t r = 0; r < nodes.size(); ++r) {
        for (std::size_t c = 0; c < edges.size(); ++c) {
            const Edge& ce = coarse.edge(edges[c]);
            if (ce.tail == nodes[r]) a[r][c] = -1;
            if (ce.head == nodes[r]) a[r][c] = +1;
        }
        auto it = demand_row.find(nodes[r]);
        if (it != demand_row.end()) b[r] = it->second;
    }

    OracleRow out;
    out.fine_edge = sub.fine_edge;
    auto x = solve_linear(std::move(a), std::move(b));
    out.solvable = x.has_value();
    if (x) {
        for (std::size_t c = 0; c < edges.size(); ++c)
            if ((*x)[c] != 0) out.solution[edges[c]] = (*x)[c];
    }
    return out;
}

inline std::vector<OracleRow> oracle_solve(const Digraph& fine, const NodalProlongation& np,
                                           const CoarseTopology& topo, int max_nodes = 12) {
    const SparseMatrix demands = compute_demands(build_incidence(fine), np);
    std::vector<OracleRow> rows;
    rows.reserve(fine.edge_count());
    for (EdgeId i = 1; i <= fine.edge_count(); ++i)
        rows.push_back(
            oracle_solve_row(topo.coarse_graph, induced_subgraph(topo, i), demands.row(i), max_nodes));
    return rows;
}

// Nullity of the transposed incidence matrix of one induced subgraph,
// measured by dense rank, for cross-checking the cycle-count formula.
inline int cycle_space_nullity(const Digraph& coarse, const InducedSubgraph& sub) {
    const std::vector<NodeId> nodes(sub.nodes.begin(), sub.nodes.end());
    const std::vector<EdgeId> edges(sub.edges.begin(), sub.edges.end());
    // Rows of the transpose are nodes, columns are edges.
    DenseMatrix a(nodes.size(), std::vector<Rational>(edges.size(), Rational(0)));
    for (std::size_t r = 0; r < nodes.size(); ++r)
        for (std::size_t c = 0; c < edges.size(); ++c) {
            const Edge& ce = coarse.edge(edges[c]);
            if (ce.tail == nodes[r]) a[r][c] = -1;
            if (ce.head == nodes[r]) a[r][c] = +1;
        }
    return static_cast<int>(edges.size()) - rank(std::move(a));
}

}  // namespace comprol
