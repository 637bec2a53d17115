#pragma once

#include <cmath>
#include <cstdint>
#include <queue>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "comprol/aggregation.hpp"
#include "comprol/digraph.hpp"

namespace comprol {

// Deterministic test-instance generation. Only the raw mt19937_64 stream is
// used (standard-specified), never std distributions (implementation
// defined), so identical seeds give identical instances on every platform.

namespace detail {

inline std::uint64_t rand_below(std::mt19937_64& rng, std::uint64_t n) {
    return rng() % n;  // slight modulo bias is irrelevant for test data
}

inline bool rand_chance(std::mt19937_64& rng, double fraction) {
    return rand_below(rng, 1u << 20) < static_cast<std::uint64_t>(fraction * (1u << 20));
}

}  // namespace detail

struct GeneratorParams {
    std::uint64_t seed = 0;
    int fine_nodes = 0;
    double density = 1.0;    // target edge count ~ density * fine_nodes
    int aggregates = 0;
    double overlap = 0.0;    // chance a node also joins a neighboring aggregate
};

struct Instance {
    Digraph fine;
    Aggregation aggregation;
};

// Random connected fine graph: a random spanning tree first (edge k attaches
// node k+1 to an earlier node, orientation random), then extra distinct
// non-parallel edges up to the density target.
inline Digraph generate_fine_graph(std::mt19937_64& rng, int nodes, double density) {
    if (nodes < 1) throw GenerationFailure("fine node count must be positive");
    const long max_edges = static_cast<long>(nodes) * (nodes - 1) / 2;
    long target = std::lround(density * nodes);
    target = std::max(target, static_cast<long>(nodes - 1));
    target = std::min(target, max_edges);

    std::vector<Edge> edges;
    std::set<std::pair<NodeId, NodeId>> used;
    for (NodeId v = 2; v <= nodes; ++v) {
        NodeId u = static_cast<NodeId>(detail::rand_below(rng, v - 1)) + 1;
        Edge e = detail::rand_chance(rng, 0.5) ? Edge{u, v} : Edge{v, u};
        edges.push_back(e);
        used.insert({std::min(u, v), std::max(u, v)});
    }
    long attempts = 0;
    const long attempt_bound = 64 * std::max<long>(target, 1);
    while (static_cast<long>(edges.size()) < target) {
        if (++attempts > attempt_bound)
            throw GenerationFailure("could not place " + std::to_string(target) +
                                    " distinct edges on " + std::to_string(nodes) + " nodes");
        NodeId a = static_cast<NodeId>(detail::rand_below(rng, nodes)) + 1;
        NodeId b = static_cast<NodeId>(detail::rand_below(rng, nodes)) + 1;
        if (a == b) continue;
        if (!used.insert({std::min(a, b), std::max(a, b)}).second) continue;
        edges.push_back(detail::rand_chance(rng, 0.5) ? Edge{a, b} : Edge{b, a});
    }
    return Digraph(nodes, std::move(edges));
}

// Aggregates by multi-source breadth-first growth from distinct seed nodes
// (a cover by construction), then optional overlap: a node may additionally
// join the aggregate of a neighbor across an aggregate boundary.
inline Aggregation generate_aggregation(std::mt19937_64& rng, const Digraph& fine,
                                        int aggregates, double overlap) {
    const int nodes = fine.node_count();
    if (aggregates < 1) throw GenerationFailure("aggregate count must be positive");
    if (aggregates > nodes)
        throw GenerationFailure("more aggregates (" + std::to_string(aggregates) +
                                ") than fine nodes (" + std::to_string(nodes) + ")");

    std::vector<NodeId> shuffled(nodes);
    for (int k = 0; k < nodes; ++k) shuffled[static_cast<std::size_t>(k)] = k + 1;
    for (int k = nodes - 1; k > 0; --k)
        std::swap(shuffled[static_cast<std::size_t>(k)],
                  shuffled[detail::rand_below(rng, k + 1)]);

    std::vector<int> owner(nodes + 1, 0);
    std::queue<NodeId> queue;
    for (int n = 1; n <= aggregates; ++n) {
        NodeId seed_node = shuffled[static_cast<std::size_t>(n) - 1];
        owner[seed_node] = n;
        queue.push(seed_node);
    }
    std::vector<std::vector<std::pair<EdgeId, NodeId>>> adj(nodes + 1);
    for (EdgeId e = 1; e <= fine.edge_count(); ++e) {
        const Edge& ed = fine.edge(e);
        adj[ed.tail].emplace_back(e, ed.head);
        adj[ed.head].emplace_back(e, ed.tail);
    }
    while (!queue.empty()) {
        NodeId u = queue.front();
        queue.pop();
        for (const auto& [e, v] : adj[u]) {
            (void)e;
            if (owner[v] == 0) {
                owner[v] = owner[u];
                queue.push(v);
            }
        }
    }

    std::vector<std::set<NodeId>> sets(aggregates);
    for (NodeId p = 1; p <= nodes; ++p) sets[static_cast<std::size_t>(owner[p]) - 1].insert(p);
    if (overlap > 0.0) {
        for (NodeId p = 1; p <= nodes; ++p) {
            std::set<int> neighbor_owners;
            for (const auto& [e, v] : adj[p]) {
                (void)e;
                if (owner[v] != owner[p]) neighbor_owners.insert(owner[v]);
            }
            if (neighbor_owners.empty() || !detail::rand_chance(rng, overlap)) continue;
            auto it = neighbor_owners.begin();
            std::advance(it, detail::rand_below(rng, neighbor_owners.size()));
            sets[static_cast<std::size_t>(*it) - 1].insert(p);
        }
    }
    return Aggregation(std::move(sets), nodes);
}

inline Instance generate_instance(const GeneratorParams& params) {
    if (!(params.density >= 0.0))
        throw GenerationFailure("density must be nonnegative");
    if (!(params.overlap >= 0.0) || params.overlap > 1.0)
        throw GenerationFailure("overlap must lie in [0, 1]");
    std::mt19937_64 rng(params.seed);
    Digraph fine = generate_fine_graph(rng, params.fine_nodes, params.density);
    Aggregation agg = generate_aggregation(rng, fine, params.aggregates, params.overlap);
    return {std::move(fine), std::move(agg)};
}

// Random compliant nodal prolongation: each row draws small nonnegative
// weights over its memberships and normalizes them to an exact unit sum.
inline NodalProlongation random_prolongation(const Aggregation& agg, std::mt19937_64& rng) {
    SparseMatrix m(agg.fine_node_count(), agg.coarse_node_count());
    for (NodeId p = 1; p <= agg.fine_node_count(); ++p) {
        const auto& mem = agg.memberships(p);
        std::vector<int> weights;
        weights.reserve(mem.size());
        long total = 0;
        for (std::size_t k = 0; k < mem.size(); ++k) {
            int w = static_cast<int>(detail::rand_below(rng, 10));
            weights.push_back(w);
            total += w;
        }
        if (total == 0) {
            weights[0] = 1;
            total = 1;
        }
        std::size_t k = 0;
        for (int n : mem) {
            if (weights[k] != 0) m.set(p, n, Rational(weights[k], total));
            ++k;
        }
    }
    validate_prolongation(agg, m);
    return {std::move(m), agg};
}

}  // namespace comprol
