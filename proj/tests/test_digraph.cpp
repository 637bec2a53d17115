#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "comprol/digraph.hpp"
#include "testutil.hpp"

using namespace comprol;

namespace {

// Every cycle must annihilate the restricted incidence matrix from the left:
// for each node, the signed contributions of the cycle's edges cancel.
void check_annihilates(const Digraph& g, const std::set<NodeId>& nodes, const Cycle& cycle) {
    std::map<NodeId, int> balance;
    for (const auto& [e, coeff] : cycle) {
        const Edge& ed = g.edge(e);
        balance[ed.tail] -= coeff;
        balance[ed.head] += coeff;
    }
    for (const auto& [n, total] : balance) {
        INFO("node " << n);
        CHECK(nodes.count(n) == 1);
        CHECK(total == 0);
    }
}

Digraph random_digraph(std::mt19937_64& rng, int max_nodes = 12, int max_extra = 14) {
    const int nodes = 2 + static_cast<int>(rng() % max_nodes);
    std::vector<Edge> edges;
    const int edge_count = static_cast<int>(rng() % (nodes + max_extra));
    for (int k = 0; k < edge_count; ++k) {
        NodeId a = static_cast<NodeId>(rng() % nodes) + 1;
        NodeId b = static_cast<NodeId>(rng() % nodes) + 1;
        if (a == b) continue;
        edges.push_back(rng() % 2 ? Edge{a, b} : Edge{b, a});
    }
    return Digraph(nodes, std::move(edges));
}

std::set<NodeId> all_nodes(const Digraph& g) {
    std::set<NodeId> nodes;
    for (NodeId n = 1; n <= g.node_count(); ++n) nodes.insert(n);
    return nodes;
}

std::set<EdgeId> all_edges(const Digraph& g) {
    std::set<EdgeId> edges;
    for (EdgeId e = 1; e <= g.edge_count(); ++e) edges.insert(e);
    return edges;
}

}  // namespace

TEST_CASE("digraph validation") {
    CHECK_THROWS_AS(Digraph(3, {{1, 1}}), InvalidInput);   // self-loop
    CHECK_THROWS_AS(Digraph(3, {{0, 2}}), InvalidInput);   // below range
    CHECK_THROWS_AS(Digraph(3, {{1, 4}}), InvalidInput);   // above range
    CHECK_THROWS_AS(Digraph(0, {}), InvalidInput);
    CHECK_NOTHROW(Digraph(2, {{1, 2}, {1, 2}}));           // parallel edges allowed
}

TEST_CASE("incidence matrix of a path") {
    Digraph g(3, {{1, 2}, {2, 3}});
    IncidenceMatrix m = build_incidence(g);
    REQUIRE(m.rows() == 2);
    REQUIRE(m.cols() == 3);
    CHECK(m.entry(1, 1) == -1);
    CHECK(m.entry(1, 2) == +1);
    CHECK(m.entry(1, 3) == 0);
    CHECK(m.entry(2, 2) == -1);
    CHECK(m.entry(2, 3) == +1);
    CHECK(m.entry(2, 1) == 0);
}

TEST_CASE("incidence matrix of a single edge") {
    IncidenceMatrix m = build_incidence(Digraph(2, {{1, 2}}));
    CHECK(m.entry(1, 1) == -1);
    CHECK(m.entry(1, 2) == +1);
}

TEST_CASE("reversing an edge negates its incidence row") {
    Digraph g(3, {{1, 2}, {2, 3}});
    Digraph flipped = testutil::flip_edges(g, {1});
    IncidenceMatrix a = build_incidence(g);
    IncidenceMatrix b = build_incidence(flipped);
    for (NodeId n = 1; n <= 3; ++n) {
        CHECK(b.entry(1, n) == -a.entry(1, n));
        CHECK(b.entry(2, n) == a.entry(2, n));
    }
}

TEST_CASE("incidence rows have two entries summing to zero") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 40; ++trial) {
        Digraph g = random_digraph(rng);
        IncidenceMatrix m = build_incidence(g);
        for (EdgeId e = 1; e <= g.edge_count(); ++e) {
            int nonzeros = 0, sum = 0;
            for (NodeId n = 1; n <= g.node_count(); ++n) {
                sum += m.entry(e, n);
                if (m.entry(e, n) != 0) ++nonzeros;
            }
            CHECK(nonzeros == 2);
            CHECK(sum == 0);
        }
    }
}

TEST_CASE("connected components examples") {
    Digraph g(3, {{1, 2}, {2, 3}});
    CHECK(connected_components(g, {1, 2, 3}, {1}) ==
          std::vector<std::set<NodeId>>{{1, 2}, {3}});
    CHECK(connected_components(g, {1, 2, 3}, {1, 2}) ==
          std::vector<std::set<NodeId>>{{1, 2, 3}});
    CHECK(connected_components(g, {1, 2}, {}) ==
          std::vector<std::set<NodeId>>{{1}, {2}});
    CHECK(connected_components(g, {}, {}).empty());
}

TEST_CASE("restricted edge leaving the node set is rejected") {
    Digraph g(3, {{1, 2}, {2, 3}});
    CHECK_THROWS_AS(connected_components(g, {1, 2}, {2}), InvalidInput);
}

TEST_CASE("spanning tree of a triangle explores edges in id order") {
    Digraph g(3, {{1, 2}, {2, 3}, {1, 3}});
    SpanningTree tree = spanning_tree(g, {1, 2, 3}, {1, 2, 3}, 1);
    CHECK(tree.root == 1);
    CHECK(tree.tree_edges == std::set<EdgeId>{1, 3});
    CHECK(tree.parent.at(2) == TreeLink{1, 1});
    CHECK(tree.parent.at(3) == TreeLink{1, 3});
}

TEST_CASE("spanning tree trivial and rerooted cases") {
    Digraph single(1, {});
    SpanningTree empty = spanning_tree(single, {1}, {}, 1);
    CHECK(empty.tree_edges.empty());
    CHECK(empty.parent.empty());

    Digraph path(3, {{1, 2}, {2, 3}});
    SpanningTree rerooted = spanning_tree(path, {1, 2, 3}, {1, 2}, 3);
    CHECK(rerooted.tree_edges == std::set<EdgeId>{1, 2});
    CHECK(rerooted.parent.at(2) == TreeLink{3, 2});
    CHECK(rerooted.parent.at(1) == TreeLink{2, 1});
}

TEST_CASE("spanning tree errors") {
    Digraph g(3, {{1, 2}});
    CHECK_THROWS_AS(spanning_tree(g, {1, 2, 3}, {1}, 1), DisconnectedInput);
    CHECK_THROWS_AS(spanning_tree(g, {1, 2}, {1}, 3), InvalidInput);
}

TEST_CASE("fundamental cycle of a triangle") {
    Digraph g(3, {{1, 2}, {2, 3}, {1, 3}});
    SpanningTree tree = spanning_tree(g, {1, 2, 3}, {1, 2, 3}, 1);
    std::vector<Cycle> cycles = fundamental_cycles(g, {1, 2, 3}, {1, 2, 3}, tree);
    REQUIRE(cycles.size() == 1);
    CHECK(cycles[0] == Cycle{{1, +1}, {2, +1}, {3, -1}});
    check_annihilates(g, {1, 2, 3}, cycles[0]);
}

TEST_CASE("tree input yields no cycles") {
    Digraph g(3, {{1, 2}, {2, 3}});
    SpanningTree tree = spanning_tree(g, {1, 2, 3}, {1, 2}, 1);
    CHECK(fundamental_cycles(g, {1, 2, 3}, {1, 2}, tree).empty());
}

TEST_CASE("parallel edges close a two-edge cycle") {
    Digraph g(2, {{1, 2}, {1, 2}});
    SpanningTree tree = spanning_tree(g, {1, 2}, {1, 2}, 1);
    REQUIRE(tree.tree_edges == std::set<EdgeId>{1});
    std::vector<Cycle> cycles = fundamental_cycles(g, {1, 2}, {1, 2}, tree);
    REQUIRE(cycles.size() == 1);
    CHECK(cycles[0] == Cycle{{2, +1}, {1, -1}});
    check_annihilates(g, {1, 2}, cycles[0]);
}

TEST_CASE("tree size, cycle count and annihilation on random restrictions") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 60; ++trial) {
        Digraph g = random_digraph(rng);

        // random restriction closed under edge endpoints
        std::set<NodeId> nodes;
        for (NodeId n = 1; n <= g.node_count(); ++n)
            if (rng() % 4) nodes.insert(n);
        std::set<EdgeId> edges;
        for (EdgeId e = 1; e <= g.edge_count(); ++e) {
            const Edge& ed = g.edge(e);
            if (nodes.count(ed.tail) && nodes.count(ed.head) && rng() % 4) edges.insert(e);
        }

        auto components = connected_components(g, nodes, edges);
        std::size_t covered = 0;
        int total_cycles = 0;
        for (const auto& comp : components) {
            covered += comp.size();
            std::set<EdgeId> comp_edges;
            for (EdgeId e : edges) {
                const Edge& ed = g.edge(e);
                if (comp.count(ed.tail) && comp.count(ed.head)) comp_edges.insert(e);
            }
            SpanningTree tree = spanning_tree(g, comp, comp_edges, *comp.begin());
            CHECK(tree.tree_edges.size() == comp.size() - 1);
            auto cycles = fundamental_cycles(g, comp, comp_edges, tree);
            CHECK(cycles.size() == comp_edges.size() - comp.size() + 1);
            for (const Cycle& c : cycles) check_annihilates(g, comp, c);
            total_cycles += static_cast<int>(cycles.size());
        }
        CHECK(covered == nodes.size());
        CHECK(total_cycles ==
              static_cast<int>(edges.size()) - static_cast<int>(nodes.size()) +
                  static_cast<int>(components.size()));
    }
}

TEST_CASE("flipping an edge negates its cycle coefficient") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 40; ++trial) {
        Digraph g = random_digraph(rng);
        auto nodes = all_nodes(g);
        auto edges = all_edges(g);
        auto components = connected_components(g, nodes, edges);
        if (g.edge_count() == 0) continue;
        const EdgeId flipped = static_cast<EdgeId>(rng() % g.edge_count()) + 1;
        Digraph h = testutil::flip_edges(g, {flipped});

        for (const auto& comp : components) {
            std::set<EdgeId> comp_edges;
            for (EdgeId e : edges) {
                const Edge& ed = g.edge(e);
                if (comp.count(ed.tail) && comp.count(ed.head)) comp_edges.insert(e);
            }
            SpanningTree tg = spanning_tree(g, comp, comp_edges, *comp.begin());
            SpanningTree th = spanning_tree(h, comp, comp_edges, *comp.begin());
            CHECK(tg.tree_edges == th.tree_edges);  // ids only, orientation-blind
            auto cg = fundamental_cycles(g, comp, comp_edges, tg);
            auto ch = fundamental_cycles(h, comp, comp_edges, th);
            REQUIRE(cg.size() == ch.size());
            for (std::size_t k = 0; k < cg.size(); ++k) {
                Cycle expected = cg[k];
                auto it = expected.find(flipped);
                if (it != expected.end()) it->second = -it->second;
                Cycle negated;
                for (const auto& [e, v] : expected) negated[e] = -v;
                // up to the +1 normalization on the defining non-tree edge
                CHECK((ch[k] == expected || ch[k] == negated));
                check_annihilates(h, comp, ch[k]);
            }
        }
    }
}
