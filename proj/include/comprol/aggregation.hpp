#pragma once

#include <set>
#include <utility>
#include <vector>

#include "comprol/digraph.hpp"
#include "comprol/sparse.hpp"

namespace comprol {

// Overlapping cover of the fine nodes by aggregates, plus the reciprocal
// map fine node -> set of aggregates containing it. Every fine node must be
// covered and every aggregate must be nonempty.
class Aggregation {
public:
    Aggregation(std::vector<std::set<NodeId>> sets, int fine_node_count)
        : fine_node_count_(fine_node_count),
          sets_(std::move(sets)),
          memberships_(fine_node_count + 1) {
        if (fine_node_count_ <= 0) throw InvalidInput("fine node count must be positive");
        if (sets_.empty()) throw InvalidInput("at least one aggregate is required");
        for (std::size_t k = 0; k < sets_.size(); ++k) {
            if (sets_[k].empty())
                throw InvalidInput("aggregate " + std::to_string(k + 1) + " is empty");
            for (NodeId p : sets_[k]) {
                if (p < 1 || p > fine_node_count_)
                    throw InvalidInput("aggregate " + std::to_string(k + 1) + " contains node " +
                                       std::to_string(p) + " out of range");
                memberships_[p].insert(static_cast<int>(k) + 1);
            }
        }
        std::set<NodeId> uncovered;
        for (NodeId p = 1; p <= fine_node_count_; ++p)
            if (memberships_[p].empty()) uncovered.insert(p);
        if (!uncovered.empty()) throw CoverViolation(std::move(uncovered));
    }

    int fine_node_count() const { return fine_node_count_; }
    int coarse_node_count() const { return static_cast<int>(sets_.size()); }

    // Aggregate n as a set of fine nodes.
    const std::set<NodeId>& members(int n) const {
        if (n < 1 || n > coarse_node_count())
            throw InvalidInput("aggregate index " + std::to_string(n) + " out of range");
        return sets_[static_cast<std::size_t>(n) - 1];
    }

    // Aggregates containing fine node p (never empty).
    const std::set<int>& memberships(NodeId p) const {
        if (p < 1 || p > fine_node_count_)
            throw InvalidInput("fine node " + std::to_string(p) + " out of range");
        return memberships_[p];
    }

    bool operator==(const Aggregation&) const = default;

private:
    int fine_node_count_;
    std::vector<std::set<NodeId>> sets_;
    std::vector<std::set<int>> memberships_;  // index 0 unused
};

inline Aggregation build_reciprocal(std::vector<std::set<NodeId>> sets, int fine_node_count) {
    return Aggregation(std::move(sets), fine_node_count);
}

// Fine-from-coarse nodal map: every row sums to exactly 1 and the nonzeros of
// column n sit inside aggregate n.
struct NodalProlongation {
    SparseMatrix matrix;  // fine nodes x aggregates
    Aggregation aggregation;
};

// Validates the two prolongation axioms on an assembled matrix.
inline void validate_prolongation(const Aggregation& agg, const SparseMatrix& m) {
    if (m.rows() != agg.fine_node_count() || m.cols() != agg.coarse_node_count())
        throw InvalidInput("prolongation dimensions do not match the aggregation");
    for (NodeId p = 1; p <= agg.fine_node_count(); ++p) {
        for (const auto& [n, v] : m.row(p)) {
            (void)v;
            if (!agg.members(n).count(p)) throw SupportViolation(p, n);
        }
        Rational s = m.row_sum(p);
        if (s != 1) throw RowSumViolation(p, to_string(s));
    }
}

// Default construction: node p splits its unit weight evenly over the
// aggregates containing it.
inline NodalProlongation uniform_prolongation(const Aggregation& agg) {
    SparseMatrix m(agg.fine_node_count(), agg.coarse_node_count());
    for (NodeId p = 1; p <= agg.fine_node_count(); ++p) {
        const auto& mem = agg.memberships(p);
        const Rational w(1, static_cast<int>(mem.size()));
        for (int n : mem) m.set(p, n, w);
    }
    return {std::move(m), agg};
}

// Assembles a prolongation from triplets and validates it exactly.
inline NodalProlongation load_prolongation(const Aggregation& agg,
                                           const std::vector<Triplet>& entries) {
    SparseMatrix m(agg.fine_node_count(), agg.coarse_node_count());
    std::set<std::pair<int, int>> seen;
    for (const Triplet& t : entries) {
        if (t.row < 1 || t.row > m.rows() || t.col < 1 || t.col > m.cols())
            throw InvalidInput("prolongation entry (" + std::to_string(t.row) + ", " +
                               std::to_string(t.col) + ") out of range");
        if (!seen.insert({t.row, t.col}).second) throw DuplicateEntry(t.row, t.col);
        m.set(t.row, t.col, t.value);
    }
    validate_prolongation(agg, m);
    return {std::move(m), agg};
}

// Builds a compliant prolongation witnessing that the flow system of the
// given fine edge cannot be solved when `component` is a strict subset of the
// admissible coarse nodes: rows p and q are each concentrated on one
// aggregate, chosen so the component's net demand is +-1 instead of 0. All
// other rows come from uniform_prolongation.
inline NodalProlongation counterexample_prolongation(const Aggregation& agg, Edge fine_edge,
                                                     const std::set<int>& component) {
    const NodeId p = fine_edge.tail;
    const NodeId q = fine_edge.head;
    const auto& lp = agg.memberships(p);
    const auto& lq = agg.memberships(q);

    std::set<int> candidates;  // admissible coarse nodes for this edge
    candidates.insert(lp.begin(), lp.end());
    candidates.insert(lq.begin(), lq.end());
    if (component.empty()) throw InvalidInput("component must be nonempty");
    for (int n : component)
        if (!candidates.count(n))
            throw InvalidInput("component node " + std::to_string(n) +
                               " is not admissible for this edge");
    if (component == candidates)
        throw NotStrictSubset("component equals the full admissible node set");

    auto smallest_in = [](const std::set<int>& a, const std::set<int>& b,
                          bool inside) -> int {
        // smallest element of a that is (inside ? in : not in) b
        for (int n : a)
            if (b.count(n) == static_cast<std::size_t>(inside ? 1 : 0)) return n;
        return 0;
    };

    // Aim for component sums (sum over q-row, sum over p-row) = (1, 0);
    // fall back to (0, 1). One of the two is always achievable for a strict
    // subset, because lp and lq are nonempty.
    int q_target = 0, p_target = 0;
    int q_in = smallest_in(lq, component, true);
    int p_out = smallest_in(lp, component, false);
    if (q_in != 0 && p_out != 0) {
        q_target = q_in;
        p_target = p_out;
    } else {
        int q_out = smallest_in(lq, component, false);
        int p_in = smallest_in(lp, component, true);
        if (q_out == 0 || p_in == 0)
            throw InternalInconsistency("no concentration satisfies the component sums");
        q_target = q_out;
        p_target = p_in;
    }

    NodalProlongation result = uniform_prolongation(agg);
    SparseVector row_p, row_q;
    row_p[p_target] = 1;
    row_q[q_target] = 1;
    result.matrix.set_row(p, std::move(row_p));
    result.matrix.set_row(q, std::move(row_q));
    validate_prolongation(agg, result.matrix);
    return result;
}

}  // namespace comprol
