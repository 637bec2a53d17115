#include <catch2/catch_amalgamated.hpp>

#include "comprol/digraph.hpp"
#include "comprol/generator.hpp"
#include "comprol/pipeline.hpp"
#include "testutil.hpp"

using namespace comprol;

TEST_CASE("generation is a pure function of the seed") {
    GeneratorParams params{99, 40, 1.5, 6, 0.3};
    Instance a = generate_instance(params);
    Instance b = generate_instance(params);
    CHECK(a.fine == b.fine);
    CHECK(a.aggregation == b.aggregation);

    Instance c = generate_instance({100, 40, 1.5, 6, 0.3});
    CHECK(a.fine != c.fine);  // different seed, different instance
}

TEST_CASE("generated instance files are byte-identical across runs") {
    testutil::TempDir d1("gen1"), d2("gen2");
    GeneratorParams params{7, 25, 2.0, 5, 0.4};
    write_instance_files(generate_instance(params), d1.path().string());
    write_instance_files(generate_instance(params), d2.path().string());
    CHECK(testutil::read_file_bytes(d1.file("fine.graph")) ==
          testutil::read_file_bytes(d2.file("fine.graph")));
    CHECK(testutil::read_file_bytes(d1.file("fine.agg")) ==
          testutil::read_file_bytes(d2.file("fine.agg")));
    CHECK_FALSE(testutil::read_file_bytes(d1.file("fine.graph")).empty());
}

TEST_CASE("golden instance for seed 1") {
    testutil::TempDir dir("golden");
    write_instance_files(generate_instance({1, 4, 0.75, 2, 0.5}), dir.path().string());
    CHECK(testutil::read_file_bytes(dir.file("fine.graph")) ==
          "graph 4 3\n"
          "1 2 1\n"
          "2 1 3\n"
          "3 1 4\n");
    CHECK(testutil::read_file_bytes(dir.file("fine.agg")) ==
          "aggregates 2 4\n"
          "1: 1 2 3 4\n"
          "2: 1 3\n");
}

TEST_CASE("generated fine graphs are connected with bounded edge counts") {
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        GeneratorParams params = testutil::seeded_params(seed);
        Instance inst = generate_instance(params);
        REQUIRE(inst.fine.node_count() == params.fine_nodes);
        CHECK(inst.fine.edge_count() >= params.fine_nodes - 1);
        CHECK(inst.fine.edge_count() <= 600);

        std::set<NodeId> nodes;
        for (NodeId n = 1; n <= inst.fine.node_count(); ++n) nodes.insert(n);
        std::set<EdgeId> edges;
        for (EdgeId e = 1; e <= inst.fine.edge_count(); ++e) edges.insert(e);
        CHECK(connected_components(inst.fine, nodes, edges).size() == 1);
    }
}

TEST_CASE("zero overlap produces a disjoint aggregation") {
    Instance inst = generate_instance({13, 60, 1.5, 8, 0.0});
    for (NodeId p = 1; p <= 60; ++p)
        CHECK(inst.aggregation.memberships(p).size() == 1);
}

TEST_CASE("positive overlap produces shared nodes") {
    Instance inst = generate_instance({13, 60, 1.5, 8, 0.5});
    int shared = 0;
    for (NodeId p = 1; p <= 60; ++p)
        if (inst.aggregation.memberships(p).size() > 1) ++shared;
    CHECK(shared > 0);
}

TEST_CASE("impossible generator parameters fail cleanly") {
    CHECK_THROWS_AS(generate_instance({1, 4, 1.0, 9, 0.0}), GenerationFailure);
    CHECK_THROWS_AS(generate_instance({1, 0, 1.0, 1, 0.0}), GenerationFailure);
    CHECK_THROWS_AS(generate_instance({1, 4, 1.0, 0, 0.0}), GenerationFailure);
    CHECK_THROWS_AS(generate_instance({1, 4, -1.0, 2, 0.0}), GenerationFailure);
    CHECK_THROWS_AS(generate_instance({1, 4, 1.0, 2, 1.5}), GenerationFailure);
}

TEST_CASE("random prolongations are compliant and seed-deterministic") {
    Instance inst = generate_instance(testutil::seeded_params(9));
    std::mt19937_64 rng_a(55), rng_b(55);
    NodalProlongation a = random_prolongation(inst.aggregation, rng_a);
    NodalProlongation b = random_prolongation(inst.aggregation, rng_b);
    CHECK(a.matrix == b.matrix);
    CHECK_NOTHROW(validate_prolongation(inst.aggregation, a.matrix));
}
