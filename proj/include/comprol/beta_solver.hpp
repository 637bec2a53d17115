#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "comprol/coarse_topology.hpp"
#include "comprol/linalg.hpp"
#include "comprol/sparse.hpp"

namespace comprol {

// Net flow demands: row i holds, per admissible coarse node, the imbalance
// the edge prolongation row must realize. Row i is the head-row minus the
// tail-row of the nodal prolongation, so every row sums to zero and its
// support stays inside the admissible node set; both facts are asserted.
inline SparseMatrix compute_demands(const IncidenceMatrix& fine_inc,
                                    const NodalProlongation& np) {
    if (fine_inc.cols() != np.matrix.rows())
        throw InvalidInput("incidence and prolongation dimensions disagree");
    SparseMatrix demands = multiply(fine_inc, np.matrix);
    for (int i = 1; i <= demands.rows(); ++i) {
        if (demands.row_sum(i) != 0)
            throw InternalInconsistency("demand row " + std::to_string(i) +
                                        " does not sum to zero");
        const Edge& e = fine_inc.row(i);
        const auto& mt = np.aggregation.memberships(e.tail);
        const auto& mh = np.aggregation.memberships(e.head);
        for (const auto& [n, v] : demands.row(i)) {
            (void)v;
            if (!mt.count(n) && !mh.count(n))
                throw InternalInconsistency("demand entry (" + std::to_string(i) + ", " +
                                            std::to_string(n) +
                                            ") outside the admissible nodes");
        }
    }
    return demands;
}

// Particular solution of one row's flow system, supported on a spanning tree.
struct RowSolve {
    SparseVector values;  // coarse edge id -> flow
    SpanningTree tree;
    NodeId root = 0;
    int cycle_dim = 0;
};

// Solves the flow system of one fine edge on a spanning tree of its induced
// coarse subgraph. The root is the smallest admissible coarse node; its
// balance equation is left out and holds automatically because the demands
// sum to zero. Leaf-to-root elimination: the flow on the edge above node n
// equals the total demand of n's subtree, signed by the edge orientation.
inline RowSolve solve_row(const Digraph& coarse, const InducedSubgraph& sub,
                          const SparseVector& demand_row) {
    if (!sub.connected) throw Infeasible(sub.fine_edge, sub.components);

    RowSolve out;
    out.root = *sub.nodes.begin();
    out.tree = spanning_tree(coarse, sub.nodes, sub.edges, out.root);
    out.cycle_dim =
        static_cast<int>(sub.edges.size()) - static_cast<int>(sub.nodes.size()) + 1;

    std::vector<std::pair<int, NodeId>> by_depth;  // (depth, node), deepest first
    by_depth.reserve(sub.nodes.size());
    for (NodeId n : sub.nodes) by_depth.emplace_back(out.tree.depth(n), n);
    std::sort(by_depth.begin(), by_depth.end(),
              [](const auto& a, const auto& b) { return a > b; });

    std::map<NodeId, Rational> subtree_demand;
    for (NodeId n : sub.nodes) {
        auto it = demand_row.find(n);
        subtree_demand[n] = (it == demand_row.end()) ? Rational(0) : it->second;
    }
    for (const auto& [depth, n] : by_depth) {
        (void)depth;
        if (n == out.root) continue;
        const TreeLink& link = out.tree.parent.at(n);
        const Edge& te = coarse.edge(link.edge);
        const Rational& total = subtree_demand[n];
        if (total != 0) out.values[link.edge] = (te.head == n) ? total : -total;
        subtree_demand[link.parent] += total;
    }
    if (subtree_demand[out.root] != 0)
        throw InternalInconsistency("tree flow left residual demand at the root");
    return out;
}

// Checks every node balance equation of one row's flow system, including the
// one the tree solve never imposed. A false return is a bug detector: solver
// output must always pass.
inline bool row_equations_hold(const Digraph& coarse, const InducedSubgraph& sub,
                               const SparseVector& beta_row,
                               const SparseVector& demand_row) {
    std::map<NodeId, Rational> balance;
    for (NodeId n : sub.nodes) balance[n] = 0;
    for (const auto& [e, v] : beta_row) {
        if (!sub.edges.count(e)) return false;  // support breach counts as failure
        const Edge& ce = coarse.edge(e);
        balance[ce.tail] -= v;
        balance[ce.head] += v;
    }
    for (NodeId n : sub.nodes) {
        auto it = demand_row.find(n);
        const Rational want = (it == demand_row.end()) ? Rational(0) : it->second;
        if (balance[n] != want) return false;
    }
    return true;
}

// Linear combination of cycles; the result solves the homogeneous system, so
// adding it to any particular solution preserves every balance equation.
inline SparseVector cycle_combination(const std::vector<Cycle>& cycles,
                                      const std::vector<Rational>& coefficients) {
    if (cycles.size() != coefficients.size())
        throw InvalidInput("coefficient count " + std::to_string(coefficients.size()) +
                           " does not match cycle count " + std::to_string(cycles.size()));
    SparseVector out;
    for (std::size_t j = 0; j < cycles.size(); ++j) {
        if (coefficients[j] == 0) continue;
        for (const auto& [e, sign] : cycles[j]) {
            Rational& v = out[e];
            v += sign * coefficients[j];
            if (v == 0) out.erase(e);
        }
    }
    return out;
}

// Coefficients minimizing the squared Euclidean norm of
// particular + sum_j x_j * cycle_j, via the exact normal equations of the
// cycle basis. The Gram matrix is positive definite because fundamental
// cycles are linearly independent.
inline std::vector<Rational> min_norm_coefficients(const SparseVector& particular,
                                                   const std::vector<Cycle>& cycles) {
    const int k = static_cast<int>(cycles.size());
    if (k == 0) return {};
    DenseMatrix gram(k, std::vector<Rational>(k, Rational(0)));
    std::vector<Rational> rhs(k, Rational(0));
    for (int j = 0; j < k; ++j) {
        for (const auto& [e, sign] : cycles[j]) {
            for (int l = j; l < k; ++l) {
                auto it = cycles[l].find(e);
                if (it != cycles[l].end()) gram[j][l] += sign * it->second;
            }
            auto bt = particular.find(e);
            if (bt != particular.end()) rhs[j] -= sign * bt->second;
        }
        for (int l = 0; l < j; ++l) gram[j][l] = gram[l][j];
    }
    auto solution = solve_linear(std::move(gram), std::move(rhs));
    if (!solution)
        throw InternalInconsistency("cycle-basis normal equations were singular");
    return *solution;
}

// Per-row hook deciding the cycle-space component added to the particular
// solution. Receives the fine edge, its induced subgraph, the particular
// solution and the fundamental cycle basis; returns one coefficient per
// cycle.
using CorrectionPolicy = std::function<std::vector<Rational>(
    EdgeId, const InducedSubgraph&, const SparseVector&, const std::vector<Cycle>&)>;

inline CorrectionPolicy min_norm_policy() {
    return [](EdgeId, const InducedSubgraph&, const SparseVector& particular,
              const std::vector<Cycle>& cycles) {
        return min_norm_coefficients(particular, cycles);
    };
}

inline CorrectionPolicy zero_policy() {
    return [](EdgeId, const InducedSubgraph&, const SparseVector&,
              const std::vector<Cycle>& cycles) {
        return std::vector<Rational>(cycles.size(), Rational(0));
    };
}

enum class RowStatus {
    Solved,
    Skipped,     // single admissible coarse node; the row is identically zero
    Infeasible,  // induced coarse subgraph disconnected
};

inline const char* to_string(RowStatus s) {
    switch (s) {
        case RowStatus::Solved: return "solved";
        case RowStatus::Skipped: return "skipped_no_coarse_support";
        case RowStatus::Infeasible: return "infeasible";
    }
    return "unknown";
}

struct RowReport {
    EdgeId fine_edge = 0;
    RowStatus status = RowStatus::Skipped;
    bool connected = true;
    int cycle_dim = 0;
    NodeId root = 0;
    std::set<EdgeId> tree_edges;
    bool balance_checked = false;
    std::vector<std::set<NodeId>> components;  // recorded when infeasible
};

struct SolveReport {
    std::vector<RowReport> rows;  // fine-edge order
    int solved_count = 0;
    int skipped_count = 0;
    int infeasible_count = 0;
    bool commutativity = false;  // exact product equality was verified
};

// Assembled edge prolongation with per-row solve metadata.
struct EdgeProlongation {
    SparseMatrix matrix;  // fine edges x coarse edges
    SolveReport report;
};

// Exact entrywise comparison of the two matrix products; returns the first
// differing (fine edge, coarse node) position or nullopt when equal.
inline std::optional<std::pair<int, int>> commutativity_mismatch(
    const IncidenceMatrix& fine_inc, const SparseMatrix& nodal,
    const IncidenceMatrix& coarse_inc, const SparseMatrix& edge_prol) {
    SparseMatrix lhs = multiply(fine_inc, nodal);
    SparseMatrix rhs = multiply(edge_prol, coarse_inc);
    if (lhs == rhs) return std::nullopt;
    for (int i = 1; i <= lhs.rows(); ++i) {
        SparseVector diff = lhs.row(i);
        for (const auto& [j, v] : rhs.row(i)) {
            auto [it, inserted] = diff.emplace(j, -v);
            if (!inserted) {
                it->second -= v;
                if (it->second == 0) diff.erase(it);
            }
        }
        if (!diff.empty()) return std::make_pair(i, diff.begin()->first);
    }
    return std::nullopt;  // unreachable: structural equality failed above
}

// Runs the whole row pipeline: demands, per-row tree solves, cycle-space
// correction, assembly, and the exact final verification. Rows whose induced
// subgraph is disconnected are recorded as infeasible and left zero; if any
// exist the final product comparison is skipped and `commutativity` stays
// false. All other deviations throw: they are bugs, not input properties.
inline EdgeProlongation solve_all(const Digraph& fine, const NodalProlongation& np,
                                  const CoarseTopology& topo,
                                  const CorrectionPolicy& policy = min_norm_policy()) {
    const IncidenceMatrix fine_inc = build_incidence(fine);
    const IncidenceMatrix coarse_inc = build_incidence(topo.coarse_graph);
    const SparseMatrix demands = compute_demands(fine_inc, np);

    EdgeProlongation out{SparseMatrix(fine.edge_count(), topo.coarse_graph.edge_count()), {}};
    SolveReport& report = out.report;
    report.rows.reserve(fine.edge_count());

    for (EdgeId i = 1; i <= fine.edge_count(); ++i) {
        InducedSubgraph sub = induced_subgraph(topo, i);
        RowReport row;
        row.fine_edge = i;
        row.connected = sub.connected;
        if (sub.nodes.size() == 1) {
            row.status = RowStatus::Skipped;
            if (!demands.row(i).empty())
                throw InternalInconsistency("zero-support row " + std::to_string(i) +
                                            " has nonzero demand");
            ++report.skipped_count;
        } else if (!sub.connected) {
            row.status = RowStatus::Infeasible;
            row.components = sub.components;
            ++report.infeasible_count;
        } else {
            RowSolve solve = solve_row(topo.coarse_graph, sub, demands.row(i));
            const std::vector<Cycle> cycles =
                fundamental_cycles(topo.coarse_graph, sub.nodes, sub.edges, solve.tree);
            if (static_cast<int>(cycles.size()) != solve.cycle_dim)
                throw InternalInconsistency("cycle count disagrees with the dimension formula");
            const std::vector<Rational> coeff = policy(i, sub, solve.values, cycles);
            SparseVector final_row = solve.values;
            for (const auto& [e, v] : cycle_combination(cycles, coeff)) {
                Rational& entry = final_row[e];
                entry += v;
                if (entry == 0) final_row.erase(e);
            }
            row.balance_checked =
                row_equations_hold(topo.coarse_graph, sub, final_row, demands.row(i));
            if (!row.balance_checked)
                throw InternalInconsistency("row " + std::to_string(i) +
                                            " violates a balance equation after solve");
            row.status = RowStatus::Solved;
            row.cycle_dim = solve.cycle_dim;
            row.root = solve.root;
            row.tree_edges = solve.tree.tree_edges;
            out.matrix.set_row(i, std::move(final_row));
            ++report.solved_count;
        }
        report.rows.push_back(std::move(row));
    }

    // Support scan: every stored entry must sit inside its column's support.
    for (int i = 1; i <= out.matrix.rows(); ++i)
        for (const auto& [e, v] : out.matrix.row(i)) {
            (void)v;
            if (!topo.support.coarse_edge_to_fine.at(e).count(i))
                throw InternalInconsistency("entry (" + std::to_string(i) + ", " +
                                            std::to_string(e) + ") outside the edge support");
        }

    if (report.infeasible_count == 0) {
        if (auto bad = commutativity_mismatch(fine_inc, np.matrix, coarse_inc, out.matrix))
            throw VerificationFailure(bad->first, bad->second);
        report.commutativity = true;
    }
    return out;
}

// Net demand of the first component of a disconnected induced subgraph. Any
// admissibly supported row scatters zero net flow into a whole component, so
// a nonzero value certifies that the row system has no admissible solution.
// A zero value is inconclusive for this particular prolongation.
inline Rational infeasibility_witness(const Digraph& fine, EdgeId fine_edge,
                                      const InducedSubgraph& sub,
                                      const NodalProlongation& np) {
    if (sub.connected)
        throw InvalidInput("witness is only defined for a disconnected induced subgraph");
    const std::set<NodeId>& component = sub.components.front();
    const Edge& e = fine.edge(fine_edge);
    Rational sum = 0;
    for (NodeId n : component)
        sum += np.matrix.get(e.head, n) - np.matrix.get(e.tail, n);
    return sum;
}

}  // namespace comprol
