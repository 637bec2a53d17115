#pragma once

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <utility>
#include <vector>

#include "comprol/errors.hpp"

namespace comprol {

using NodeId = int;  // 1-based
using EdgeId = int;  // 1-based

struct Edge {
    NodeId tail = 0;
    NodeId head = 0;

    bool operator==(const Edge&) const = default;
};

// Directed graph with 1-based, gap-free node and edge ids. Orientations are
// arbitrary bookkeeping: every connectivity notion below ignores them.
// Parallel edges are allowed; self-loops are rejected because they would
// produce an all-zero incidence row.
class Digraph {
public:
    Digraph(int node_count, std::vector<Edge> edges)
        : node_count_(node_count), edges_(std::move(edges)) {
        if (node_count_ <= 0)
            throw InvalidInput("graph needs at least one node");
        for (std::size_t k = 0; k < edges_.size(); ++k) {
            const Edge& e = edges_[k];
            if (e.tail < 1 || e.tail > node_count_ || e.head < 1 || e.head > node_count_)
                throw InvalidInput("edge " + std::to_string(k + 1) + " endpoint out of range");
            if (e.tail == e.head)
                throw InvalidInput("edge " + std::to_string(k + 1) + " is a self-loop");
        }
    }

    int node_count() const { return node_count_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }

    const Edge& edge(EdgeId e) const { return edges_[static_cast<std::size_t>(e) - 1]; }
    const std::vector<Edge>& edges() const { return edges_; }

    bool operator==(const Digraph&) const = default;

private:
    int node_count_;
    std::vector<Edge> edges_;
};

// Edge-node incidence matrix: row e carries -1 at tail(e) and +1 at head(e),
// nothing else. Rows are in edge-id order, so the matrix is just a view of
// the owning digraph's edge list.
class IncidenceMatrix {
public:
    explicit IncidenceMatrix(const Digraph& g)
        : cols_(g.node_count()), rows_(g.edges()) {}

    int rows() const { return static_cast<int>(rows_.size()); }
    int cols() const { return cols_; }

    int entry(EdgeId e, NodeId n) const {
        const Edge& r = row(e);
        if (n == r.tail) return -1;
        if (n == r.head) return +1;
        return 0;
    }

    const Edge& row(EdgeId e) const { return rows_[static_cast<std::size_t>(e) - 1]; }

private:
    int cols_;
    std::vector<Edge> rows_;
};

inline IncidenceMatrix build_incidence(const Digraph& g) { return IncidenceMatrix(g); }

struct TreeLink {
    NodeId parent = 0;
    EdgeId edge = 0;

    bool operator==(const TreeLink&) const = default;
};

// Spanning tree of a restricted subgraph, rooted; every non-root node knows
// the edge connecting it to its parent.
struct SpanningTree {
    NodeId root = 0;
    std::set<EdgeId> tree_edges;
    std::map<NodeId, TreeLink> parent;

    int depth(NodeId n) const {
        int d = 0;
        while (n != root) {
            auto it = parent.find(n);
            if (it == parent.end())
                throw InternalInconsistency("node " + std::to_string(n) + " not in tree");
            n = it->second.parent;
            ++d;
        }
        return d;
    }
};

// Signed edge coefficients of one cycle, edge id -> +-1. As a row vector the
// coefficients annihilate the restricted incidence matrix from the left.
using Cycle = std::map<EdgeId, int>;

namespace detail {

// Adjacency of the restriction, per node, in ascending edge-id order.
// Also validates that every restricted edge has both extremities inside
// the restricted node set.
inline std::map<NodeId, std::vector<std::pair<EdgeId, NodeId>>> restricted_adjacency(
    const Digraph& g, const std::set<NodeId>& nodes, const std::set<EdgeId>& edges) {
    std::map<NodeId, std::vector<std::pair<EdgeId, NodeId>>> adj;
    for (NodeId n : nodes) adj[n];  // isolated nodes still appear
    for (EdgeId e : edges) {
        if (e < 1 || e > g.edge_count())
            throw InvalidInput("restricted edge id " + std::to_string(e) + " out of range");
        const Edge& ed = g.edge(e);
        if (!nodes.count(ed.tail) || !nodes.count(ed.head))
            throw InvalidInput("restricted edge " + std::to_string(e) +
                               " leaves the restricted node set");
        adj[ed.tail].emplace_back(e, ed.head);
        adj[ed.head].emplace_back(e, ed.tail);
    }
    return adj;  // per-node lists are ascending because std::set iterates sorted
}

}  // namespace detail

// Maximal weakly connected components of the restriction, as node sets,
// ordered by their smallest contained node.
inline std::vector<std::set<NodeId>> connected_components(const Digraph& g,
                                                          const std::set<NodeId>& nodes,
                                                          const std::set<EdgeId>& edges) {
    auto adj = detail::restricted_adjacency(g, nodes, edges);
    std::vector<std::set<NodeId>> components;
    std::set<NodeId> seen;
    for (NodeId start : nodes) {
        if (seen.count(start)) continue;
        std::set<NodeId> comp;
        std::queue<NodeId> queue;
        queue.push(start);
        seen.insert(start);
        while (!queue.empty()) {
            NodeId u = queue.front();
            queue.pop();
            comp.insert(u);
            for (const auto& [e, v] : adj[u]) {
                (void)e;
                if (seen.insert(v).second) queue.push(v);
            }
        }
        components.push_back(std::move(comp));
    }
    return components;  // starts are scanned in ascending node order
}

// Breadth-first spanning tree of the restriction, exploring incident edges in
// ascending edge-id order. Deterministic by construction.
inline SpanningTree spanning_tree(const Digraph& g, const std::set<NodeId>& nodes,
                                  const std::set<EdgeId>& edges, NodeId root) {
    if (!nodes.count(root))
        throw InvalidInput("root " + std::to_string(root) + " not in restricted node set");
    auto adj = detail::restricted_adjacency(g, nodes, edges);

    SpanningTree tree;
    tree.root = root;
    std::set<NodeId> seen{root};
    std::queue<NodeId> queue;
    queue.push(root);
    while (!queue.empty()) {
        NodeId u = queue.front();
        queue.pop();
        for (const auto& [e, v] : adj[u]) {
            if (seen.insert(v).second) {
                tree.parent[v] = TreeLink{u, e};
                tree.tree_edges.insert(e);
                queue.push(v);
            }
        }
    }
    if (seen.size() != nodes.size())
        throw DisconnectedInput("restriction is not connected (reached " +
                                std::to_string(seen.size()) + " of " +
                                std::to_string(nodes.size()) + " nodes)");
    return tree;
}

// Fundamental cycles of the restriction with respect to a spanning tree, one
// per non-tree edge, in ascending order of that edge's id.
//
// Sign convention: the non-tree edge carries +1; a tree edge carries +1 when
// the walk from the non-tree edge's head back to its tail traverses it
// tail-to-head, -1 otherwise.
inline std::vector<Cycle> fundamental_cycles(const Digraph& g, const std::set<NodeId>& nodes,
                                             const std::set<EdgeId>& edges,
                                             const SpanningTree& tree) {
    (void)nodes;
    std::vector<Cycle> cycles;
    for (EdgeId f : edges) {
        if (tree.tree_edges.count(f)) continue;
        const Edge& fe = g.edge(f);
        Cycle cycle;
        cycle[f] = +1;

        // Walk head -> ... -> lca -> ... -> tail along the tree.
        NodeId a = fe.head;
        NodeId b = fe.tail;
        int da = tree.depth(a);
        int db = tree.depth(b);
        auto step_up = [&](NodeId& n, bool walking_down) {
            const TreeLink& link = tree.parent.at(n);
            const Edge& te = g.edge(link.edge);
            // Lifting n -> parent(n). On the head-side segment we traverse the
            // edge in exactly that direction; on the tail-side segment the walk
            // runs parent -> child, so the traversal sign flips.
            int sign = (te.tail == n) ? +1 : -1;
            if (walking_down) sign = -sign;
            cycle[link.edge] = sign;
            n = link.parent;
        };
        while (da > db) {
            step_up(a, false);
            --da;
        }
        while (db > da) {
            step_up(b, true);
            --db;
        }
        while (a != b) {
            step_up(a, false);
            step_up(b, true);
        }
        cycles.push_back(std::move(cycle));
    }
    return cycles;
}

}  // namespace comprol
