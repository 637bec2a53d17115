#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include <json.hpp>

#include "comprol/beta_solver.hpp"
#include "comprol/generator.hpp"
#include "comprol/io.hpp"
#include "comprol/oracle.hpp"

namespace comprol {

struct InstancePaths {
    std::string fine_graph;
    std::string aggregates;
    std::optional<std::string> nodal_prolongation;  // default: uniform split
    std::optional<std::string> coarse_graph;        // default: built from the cover
};

enum class Correction { MinNorm, Zero };

struct PipelineOptions {
    Correction correction = Correction::MinNorm;
    std::string out_dir = ".";
};

struct LoadedInstance {
    Digraph fine;
    Aggregation aggregation;
    NodalProlongation nodal;
    std::optional<Digraph> coarse;
};

inline LoadedInstance load_instance(const InstancePaths& paths) {
    Digraph fine = read_graph_file(paths.fine_graph);
    Aggregation agg = read_aggregates_file(paths.aggregates);
    if (fine.node_count() != agg.fine_node_count())
        throw InvalidInput("'" + paths.fine_graph + "' has " +
                           std::to_string(fine.node_count()) + " nodes but '" +
                           paths.aggregates + "' declares " +
                           std::to_string(agg.fine_node_count()));
    NodalProlongation nodal = [&] {
        if (!paths.nodal_prolongation) return uniform_prolongation(agg);
        MatrixFile file = read_matrix_file(*paths.nodal_prolongation);
        if (file.rows != agg.fine_node_count() || file.cols != agg.coarse_node_count())
            throw InvalidInput("'" + *paths.nodal_prolongation + "' is " +
                               std::to_string(file.rows) + "x" + std::to_string(file.cols) +
                               ", expected " + std::to_string(agg.fine_node_count()) + "x" +
                               std::to_string(agg.coarse_node_count()));
        return load_prolongation(agg, file.entries);
    }();
    std::optional<Digraph> coarse;
    if (paths.coarse_graph) coarse = read_graph_file(*paths.coarse_graph);
    return {std::move(fine), std::move(agg), std::move(nodal), std::move(coarse)};
}

inline nlohmann::json report_to_json(const Digraph& fine, const CoarseTopology& topo,
                                     const SolveReport& report) {
    nlohmann::json rows = nlohmann::json::array();
    std::map<int, int> histogram;
    for (const RowReport& row : report.rows) {
        nlohmann::json entry{
            {"balance_checked", row.balance_checked},
            {"connected", row.connected},
            {"cycle_dim", row.cycle_dim},
            {"edge", row.fine_edge},
            {"status", to_string(row.status)},
        };
        if (row.status == RowStatus::Infeasible) {
            nlohmann::json comps = nlohmann::json::array();
            for (const auto& comp : row.components) comps.push_back(comp);
            entry["components"] = std::move(comps);
        }
        if (row.status == RowStatus::Solved) ++histogram[row.cycle_dim];
        rows.push_back(std::move(entry));
    }
    nlohmann::json histogram_json = nlohmann::json::array();
    for (const auto& [k, count] : histogram) histogram_json.push_back({k, count});

    return nlohmann::json{
        {"coarse_edge_count", topo.coarse_graph.edge_count()},
        {"coarse_node_count", topo.coarse_graph.node_count()},
        {"commutativity", report.commutativity},
        {"counts",
         {{"infeasible", report.infeasible_count},
          {"skipped", report.skipped_count},
          {"solved", report.solved_count}}},
        {"cycle_dim_histogram", std::move(histogram_json)},
        {"fine_edge_count", fine.edge_count()},
        {"fine_node_count", fine.node_count()},
        {"rows", std::move(rows)},
        {"status", report.infeasible_count == 0 ? "ok" : "infeasible"},
        {"support_consistent", topo.support_consistent},
    };
}

struct PipelineResult {
    int exit_code = 0;  // 0 success, 2 some row infeasible
    CoarseTopology topology;
    EdgeProlongation prolongation;
    nlohmann::json report;
};

// Full pipeline over in-memory inputs; file-free so tests can drive it
// directly.
inline PipelineResult run_pipeline(const Digraph& fine, const NodalProlongation& nodal,
                                   std::optional<Digraph> coarse,
                                   Correction correction = Correction::MinNorm) {
    CoarseTopology topo = build_topology(nodal.aggregation, fine, std::move(coarse));
    CorrectionPolicy policy =
        correction == Correction::MinNorm ? min_norm_policy() : zero_policy();
    EdgeProlongation prol = solve_all(fine, nodal, topo, policy);
    nlohmann::json report = report_to_json(fine, topo, prol.report);
    const int exit_code = prol.report.infeasible_count == 0 ? 0 : 2;
    return {exit_code, std::move(topo), std::move(prol), std::move(report)};
}

// File-level pipeline: loads the instance, runs it, and writes coarse.graph,
// beta.mat and report.json into the output directory. Output bytes are a
// pure function of the input files and options.
inline PipelineResult run_pipeline_files(const InstancePaths& paths,
                                         const PipelineOptions& options) {
    LoadedInstance inst = load_instance(paths);
    PipelineResult result =
        run_pipeline(inst.fine, inst.nodal, std::move(inst.coarse), options.correction);

    namespace fs = std::filesystem;
    fs::create_directories(options.out_dir);
    const fs::path out(options.out_dir);
    write_file((out / "coarse.graph").string(),
               [&](std::ostream& os) { write_graph(os, result.topology.coarse_graph); });
    write_file((out / "beta.mat").string(),
               [&](std::ostream& os) { write_matrix(os, result.prolongation.matrix); });
    write_file((out / "report.json").string(),
               [&](std::ostream& os) { os << result.report.dump(2) << "\n"; });
    return result;
}

// Writes a generated instance as fine.graph + fine.agg.
inline void write_instance_files(const Instance& instance, const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    const fs::path out(out_dir);
    write_file((out / "fine.graph").string(),
               [&](std::ostream& os) { write_graph(os, instance.fine); });
    write_file((out / "fine.agg").string(),
               [&](std::ostream& os) { write_aggregates(os, instance.aggregation); });
}

// First fine edge whose induced coarse subgraph is disconnected, if any.
inline std::optional<InducedSubgraph> first_disconnected(const CoarseTopology& topo) {
    const int fine_edges = static_cast<int>(topo.cover.fine_to_aggs.size()) - 1;
    for (EdgeId i = 1; i <= fine_edges; ++i) {
        InducedSubgraph sub = induced_subgraph(topo, i);
        if (!sub.connected) return sub;
    }
    return std::nullopt;
}

}  // namespace comprol
