#pragma once

#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "comprol/aggregation.hpp"
#include "comprol/digraph.hpp"

namespace comprol {

// Cover maps between aggregates and fine edges:
//   agg_to_fine[n]  -- fine edges with at least one endpoint in aggregate n
//   fine_to_aggs[i] -- aggregates touched by fine edge i (union of its two
//                     endpoint memberships; the two computations are
//                     cross-checked)
struct EdgeCover {
    std::vector<std::set<EdgeId>> agg_to_fine;   // index 0 unused
    std::vector<std::set<int>> fine_to_aggs;     // index 0 unused
};

inline EdgeCover compute_edge_cover(const Aggregation& agg, const Digraph& fine) {
    if (fine.node_count() != agg.fine_node_count())
        throw InvalidInput("aggregation and fine graph disagree on node count");
    EdgeCover cover;
    cover.agg_to_fine.assign(agg.coarse_node_count() + 1, {});
    cover.fine_to_aggs.assign(fine.edge_count() + 1, {});
    for (EdgeId i = 1; i <= fine.edge_count(); ++i) {
        const Edge& e = fine.edge(i);
        std::set<int>& targets = cover.fine_to_aggs[i];
        const auto& mt = agg.memberships(e.tail);
        const auto& mh = agg.memberships(e.head);
        targets.insert(mt.begin(), mt.end());
        targets.insert(mh.begin(), mh.end());
        for (int n : targets) cover.agg_to_fine[n].insert(i);
    }
    // Cross-check: membership scan over aggregates must reproduce the unions.
    for (int n = 1; n <= agg.coarse_node_count(); ++n) {
        std::set<EdgeId> direct;
        for (EdgeId i = 1; i <= fine.edge_count(); ++i) {
            const Edge& e = fine.edge(i);
            if (agg.members(n).count(e.tail) || agg.members(n).count(e.head)) direct.insert(i);
        }
        if (direct != cover.agg_to_fine[n])
            throw InternalInconsistency("edge cover maps disagree for aggregate " +
                                        std::to_string(n));
    }
    return cover;
}

// Default coarse graph: one edge m->n (m < n, ids in lexicographic order)
// for every aggregate pair whose edge covers intersect. Every fine edge then
// sees a complete graph on its admissible coarse nodes, so each induced
// subgraph below is connected by construction.
inline Digraph build_coarse_graph(const Aggregation& agg, const EdgeCover& cover) {
    std::set<std::pair<int, int>> pairs;
    for (std::size_t i = 1; i < cover.fine_to_aggs.size(); ++i) {
        const auto& targets = cover.fine_to_aggs[i];
        for (auto m = targets.begin(); m != targets.end(); ++m)
            for (auto n = std::next(m); n != targets.end(); ++n) pairs.insert({*m, *n});
    }
    std::vector<Edge> edges;
    edges.reserve(pairs.size());
    for (const auto& [m, n] : pairs) edges.push_back({m, n});
    return Digraph(agg.coarse_node_count(), std::move(edges));
}

// Support maps between coarse edges and fine edges:
//   coarse_edge_to_fine[e] -- fine edges allowed a nonzero entry in column e
//                            (intersection of the endpoint covers)
//   fine_to_coarse[i]      -- coarse edges fine edge i may contribute to
//   active_fine            -- fine edges with nonempty coarse support
struct SupportMaps {
    std::vector<std::set<EdgeId>> coarse_edge_to_fine;  // index 0 unused
    std::vector<std::set<EdgeId>> fine_to_coarse;       // index 0 unused
    std::set<EdgeId> active_fine;
};

inline SupportMaps compute_support(const Digraph& coarse, const EdgeCover& cover) {
    SupportMaps maps;
    const int fine_edges = static_cast<int>(cover.fine_to_aggs.size()) - 1;
    maps.coarse_edge_to_fine.assign(coarse.edge_count() + 1, {});
    maps.fine_to_coarse.assign(fine_edges + 1, {});
    for (EdgeId e = 1; e <= coarse.edge_count(); ++e) {
        const Edge& ce = coarse.edge(e);
        const std::set<EdgeId>& a = cover.agg_to_fine[ce.tail];
        const std::set<EdgeId>& b = cover.agg_to_fine[ce.head];
        std::set<EdgeId>& support = maps.coarse_edge_to_fine[e];
        for (EdgeId i : a)
            if (b.count(i)) support.insert(i);
        for (EdgeId i : support) {
            maps.fine_to_coarse[i].insert(e);
            maps.active_fine.insert(i);
        }
    }
    return maps;
}

// Full derived topology for one (fine graph, aggregation, coarse graph)
// triple. `support_consistent` records whether each fine edge's coarse-edge
// set equals the edges of the coarse graph induced by its admissible nodes;
// a mismatch is reported rather than fatal.
struct CoarseTopology {
    Digraph coarse_graph;
    EdgeCover cover;
    SupportMaps support;
    bool support_consistent = true;
};

inline CoarseTopology build_topology(const Aggregation& agg, const Digraph& fine,
                                     std::optional<Digraph> coarse = std::nullopt) {
    EdgeCover cover = compute_edge_cover(agg, fine);
    Digraph coarse_graph = coarse ? std::move(*coarse) : build_coarse_graph(agg, cover);
    if (coarse_graph.node_count() != agg.coarse_node_count())
        throw InvalidInput("coarse graph has " + std::to_string(coarse_graph.node_count()) +
                           " nodes, aggregation defines " +
                           std::to_string(agg.coarse_node_count()));
    SupportMaps support = compute_support(coarse_graph, cover);

    bool consistent = true;
    for (std::size_t i = 1; i < cover.fine_to_aggs.size() && consistent; ++i) {
        const auto& nodes = cover.fine_to_aggs[i];
        std::set<EdgeId> induced;
        for (EdgeId e = 1; e <= coarse_graph.edge_count(); ++e) {
            const Edge& ce = coarse_graph.edge(e);
            if (nodes.count(ce.tail) && nodes.count(ce.head)) induced.insert(e);
        }
        consistent = (induced == support.fine_to_coarse[i]);
    }
    return {std::move(coarse_graph), std::move(cover), std::move(support), consistent};
}

// Coarse subgraph a single fine edge works against: its admissible coarse
// nodes, the coarse edges it may contribute to, and the connectivity verdict
// that decides solvability of its flow system.
struct InducedSubgraph {
    EdgeId fine_edge = 0;
    std::set<NodeId> nodes;
    std::set<EdgeId> edges;
    std::vector<std::set<NodeId>> components;
    bool connected = false;
};

inline InducedSubgraph induced_subgraph(const CoarseTopology& topo, EdgeId fine_edge) {
    InducedSubgraph sub;
    sub.fine_edge = fine_edge;
    sub.nodes = topo.cover.fine_to_aggs.at(fine_edge);
    sub.edges = topo.support.fine_to_coarse.at(fine_edge);
    sub.components = connected_components(topo.coarse_graph, sub.nodes, sub.edges);
    sub.connected = sub.components.size() == 1;
    return sub;
}

// One record per fine edge, in edge-id order.
inline std::vector<InducedSubgraph> induced_subgraphs(const CoarseTopology& topo) {
    std::vector<InducedSubgraph> subs;
    const int fine_edges = static_cast<int>(topo.cover.fine_to_aggs.size()) - 1;
    subs.reserve(fine_edges);
    for (EdgeId i = 1; i <= fine_edges; ++i) subs.push_back(induced_subgraph(topo, i));
    return subs;
}

}  // namespace comprol
