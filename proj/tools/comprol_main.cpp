#include <chrono>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "comprol/pipeline.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitInfeasible = 2;

comprol::InstancePaths make_paths(const std::string& fine, const std::string& agg,
                                  const std::string& alpha, const std::string& coarse) {
    comprol::InstancePaths paths;
    paths.fine_graph = fine;
    paths.aggregates = agg;
    if (!alpha.empty()) paths.nodal_prolongation = alpha;
    if (!coarse.empty()) paths.coarse_graph = coarse;
    return paths;
}

int run_build(const comprol::InstancePaths& paths, const std::string& correction,
              const std::string& out_dir) {
    comprol::PipelineOptions options;
    options.correction = correction == "zero" ? comprol::Correction::Zero
                                              : comprol::Correction::MinNorm;
    options.out_dir = out_dir;

    const auto start = std::chrono::steady_clock::now();
    comprol::PipelineResult result = comprol::run_pipeline_files(paths, options);
    const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
        std::chrono::steady_clock::now() - start);

    const auto& counts = result.report["counts"];
    std::cout << "fine: " << result.report["fine_node_count"] << " nodes, "
              << result.report["fine_edge_count"] << " edges; coarse: "
              << result.report["coarse_node_count"] << " nodes, "
              << result.report["coarse_edge_count"] << " edges\n";
    std::cout << "rows: " << counts["solved"] << " solved, " << counts["skipped"]
              << " skipped, " << counts["infeasible"] << " infeasible\n";
    std::cout << "commutativity: " << (result.report["commutativity"].get<bool>() ? "exact" : "not established")
              << " (" << elapsed.count() << " ms)\n";
    std::cout << "wrote " << out_dir << "/coarse.graph, beta.mat, report.json\n";
    if (result.exit_code != kExitOk) {
        for (const auto& row : result.report["rows"]) {
            if (row["status"] != "infeasible") continue;
            std::cout << "infeasible fine edge " << row["edge"] << ": components "
                      << row["components"].dump() << "\n";
        }
    }
    return result.exit_code;
}

int run_gen(std::uint64_t seed, int nodes, double density, int aggregates, double overlap,
            const std::string& out_dir) {
    comprol::GeneratorParams params{seed, nodes, density, aggregates, overlap};
    comprol::Instance instance = comprol::generate_instance(params);
    comprol::write_instance_files(instance, out_dir);
    std::cout << "wrote " << out_dir << "/fine.graph (" << instance.fine.node_count()
              << " nodes, " << instance.fine.edge_count() << " edges) and fine.agg ("
              << instance.aggregation.coarse_node_count() << " aggregates)\n";
    return kExitOk;
}

int run_oracle(const comprol::InstancePaths& paths) {
    comprol::LoadedInstance inst = comprol::load_instance(paths);
    comprol::CoarseTopology topo =
        comprol::build_topology(inst.aggregation, inst.fine, std::move(inst.coarse));
    std::vector<comprol::OracleRow> rows = comprol::oracle_solve(inst.fine, inst.nodal, topo);
    int unsolvable = 0;
    for (const comprol::OracleRow& row : rows) {
        std::cout << "edge " << row.fine_edge << ": "
                  << (row.solvable ? "solvable" : "unsolvable") << "\n";
        if (!row.solvable) ++unsolvable;
    }
    std::cout << rows.size() - unsolvable << "/" << rows.size() << " rows solvable\n";
    return unsolvable == 0 ? kExitOk : kExitInfeasible;
}

int run_witness(const comprol::InstancePaths& paths, const std::string& out_dir) {
    comprol::LoadedInstance inst = comprol::load_instance(paths);
    comprol::CoarseTopology topo =
        comprol::build_topology(inst.aggregation, inst.fine, std::move(inst.coarse));
    std::optional<comprol::InducedSubgraph> sub = comprol::first_disconnected(topo);
    if (!sub) {
        std::cerr << "every induced coarse subgraph is connected; no counterexample exists\n";
        return kExitInputError;
    }
    const comprol::Edge fine_edge = inst.fine.edge(sub->fine_edge);
    comprol::NodalProlongation witness = comprol::counterexample_prolongation(
        inst.aggregation, fine_edge, sub->components.front());
    const comprol::Rational imbalance =
        comprol::infeasibility_witness(inst.fine, sub->fine_edge, *sub, witness);

    std::filesystem::create_directories(out_dir);
    const std::string path = (std::filesystem::path(out_dir) / "witness_alpha.mat").string();
    comprol::write_file(path,
                        [&](std::ostream& os) { comprol::write_matrix(os, witness.matrix); });
    std::cout << "fine edge " << sub->fine_edge << " (" << fine_edge.tail << "->"
              << fine_edge.head << ") has a disconnected induced subgraph; first component {";
    bool first = true;
    for (comprol::NodeId n : sub->components.front()) {
        std::cout << (first ? "" : " ") << n;
        first = false;
    }
    std::cout << "}, witness imbalance " << imbalance << "\n";
    std::cout << "wrote " << path << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"coarse graph and edge prolongation construction for aggregation hierarchies"};
    app.require_subcommand(1);

    std::string fine_path, agg_path, alpha_path, coarse_path;
    std::string correction = "minnorm";
    std::string out_dir = ".";
    std::uint64_t seed = 1;
    int nodes = 16, aggregates = 4;
    double density = 1.5, overlap = 0.25;

    CLI::App* build = app.add_subcommand("build", "run the full pipeline on an instance");
    build->add_option("fine", fine_path, "fine graph file")->required();
    build->add_option("aggregates", agg_path, "aggregates file")->required();
    build->add_option("--alpha", alpha_path, "nodal prolongation file (default: uniform)");
    build->add_option("--coarse", coarse_path, "coarse graph file (default: built)");
    build->add_option("--correction", correction, "cycle-space correction: minnorm|zero")
        ->check(CLI::IsMember({"minnorm", "zero"}));
    build->add_option("--out", out_dir, "output directory");

    CLI::App* gen = app.add_subcommand("gen", "generate a random test instance");
    gen->add_option("--seed", seed, "random seed");
    gen->add_option("--nodes", nodes, "fine node count")->check(CLI::PositiveNumber);
    gen->add_option("--density", density, "target edges per node")->check(CLI::NonNegativeNumber);
    gen->add_option("--aggregates", aggregates, "aggregate count")->check(CLI::PositiveNumber);
    gen->add_option("--overlap", overlap, "overlap fraction in [0, 1]")
        ->check(CLI::Range(0.0, 1.0));
    gen->add_option("--out", out_dir, "output directory");

    CLI::App* oracle = app.add_subcommand("oracle", "brute-force solvability check per fine edge");
    oracle->add_option("fine", fine_path, "fine graph file")->required();
    oracle->add_option("aggregates", agg_path, "aggregates file")->required();
    oracle->add_option("--alpha", alpha_path, "nodal prolongation file (default: uniform)");
    oracle->add_option("--coarse", coarse_path, "coarse graph file (default: built)");

    CLI::App* witness = app.add_subcommand(
        "witness", "emit a counterexample nodal prolongation for a disconnected coarse graph");
    witness->add_option("fine", fine_path, "fine graph file")->required();
    witness->add_option("aggregates", agg_path, "aggregates file")->required();
    witness->add_option("--coarse", coarse_path, "coarse graph file")->required();
    witness->add_option("--out", out_dir, "output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (build->parsed())
            return run_build(make_paths(fine_path, agg_path, alpha_path, coarse_path),
                             correction, out_dir);
        if (gen->parsed()) return run_gen(seed, nodes, density, aggregates, overlap, out_dir);
        if (oracle->parsed())
            return run_oracle(make_paths(fine_path, agg_path, alpha_path, coarse_path));
        if (witness->parsed())
            return run_witness(make_paths(fine_path, agg_path, "", coarse_path), out_dir);
    } catch (const comprol::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitInputError;
}
