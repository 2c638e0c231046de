#include "infocycle/json_io.hpp"

#include <fstream>
#include <sstream>

namespace infocycle {

using nlohmann::json;

nlohmann::json distribution_to_json(const JointDistribution& dist) {
    json vars = json::array();
    for (const auto& v : dist.variables)
        vars.push_back({{"name", v.name}, {"cardinality", v.cardinality}});
    return json{{"variables", vars}, {"probabilities", dist.table}};
}

JointDistribution distribution_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("variables") || !j.contains("probabilities"))
        throw Error(ErrorCode::BadDocument,
                    "distribution document needs 'variables' and 'probabilities'");
    JointDistribution d;
    for (const auto& v : j.at("variables")) {
        Variable var;
        var.name = v.at("name").get<std::string>();
        var.cardinality = v.at("cardinality").get<int>();
        d.variables.push_back(std::move(var));
    }
    d.table = j.at("probabilities").get<std::vector<double>>();
    require_valid(d);
    return d;
}

JointDistribution read_distribution(const std::filesystem::path& path) {
    return distribution_from_json(read_json_file(path));
}

void write_distribution(const std::filesystem::path& path, const JointDistribution& dist) {
    write_json_file(path, distribution_to_json(dist));
}

Digraph digraph_from_json(const nlohmann::json& j) {
    json edges;
    int nodes = -1;
    if (j.is_array()) {
        edges = j;
    } else if (j.is_object() && j.contains("edges")) {
        edges = j.at("edges");
        if (j.contains("nodes")) nodes = j.at("nodes").get<int>();
    } else {
        throw Error(ErrorCode::BadDocument,
                    "graph document must be an edge list or {nodes, edges}");
    }
    if (nodes < 0) {
        nodes = 0;
        for (const auto& e : edges)
            nodes = std::max({nodes, e.at(0).get<int>() + 1, e.at(1).get<int>() + 1});
    }
    Digraph g(nodes);
    for (const auto& e : edges) g.add_edge(e.at(0).get<int>(), e.at(1).get<int>());
    return g;
}

Digraph read_digraph(const std::filesystem::path& path) {
    return digraph_from_json(read_json_file(path));
}

nlohmann::json digraph_to_json(const Digraph& g) {
    json edges = json::array();
    for (const auto& [u, v] : g.edges()) edges.push_back(json::array({u, v}));
    return json{{"nodes", g.node_count()}, {"edges", edges}};
}

nlohmann::json atom_table_to_json(const AtomTable& atoms,
                                  const std::vector<Variable>& variables) {
    json out = json::array();
    const std::uint32_t count = (1u << atoms.var_count) - 1;
    for (std::uint32_t t = 1; t <= count; ++t) {
        json subset = json::array();
        for (int i = 0; i < atoms.var_count; ++i)
            if ((t >> i) & 1u) subset.push_back(variables[i].name);
        out.push_back({{"atom", t}, {"subset", subset}, {"value_bits", atoms.values[t]}});
    }
    return out;
}

nlohmann::json report_to_json(const VerificationReport& report) {
    json values = json::object();
    for (const auto& [k, v] : report.conclusion_values) values[k] = v;

    json terms = json::array();
    for (const auto& t : report.terms) {
        json positions = json::array();
        for (int i = 0; i < 32; ++i)
            if ((t.positions >> i) & 1u) positions.push_back(i);
        terms.push_back({{"positions_mask", t.positions},
                         {"positions", positions},
                         {"sign", t.sign},
                         {"classification", term_class_name(t.classification)},
                         {"atoms_empty", t.atoms_empty},
                         {"value_bits", t.value_bits},
                         {"inter_minus_inter_bits", t.inter_minus_inter_bits},
                         {"inter_minus_union_bits", t.inter_minus_union_bits}});
    }

    return json{{"check", report.check},
                {"verdict", verdict_name(report.verdict)},
                {"hypothesis",
                 {{"residual", report.hypothesis_residual},
                  {"tol", report.hypothesis_tol},
                  {"satisfied", report.hypothesis_satisfied}}},
                {"conclusion", {{"values", values}, {"tol", report.conclusion_tol}}},
                {"terms", terms},
                {"support",
                 {{"zero_cells", report.support.zero_cells},
                  {"undefined_rows", report.support.undefined_rows}}}};
}

nlohmann::json search_result_to_json(const SearchResult& result) {
    json j = distribution_to_json(result.best);
    j["metadata"] = {{"residual", result.residual},
                     {"score_bits", result.dependence_bits},
                     {"iterations", result.iterations},
                     {"converged", result.converged},
                     {"seed", result.seed}};
    return j;
}

std::string stable_dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

void write_json_file(const std::filesystem::path& path, const nlohmann::json& j) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::IoError, "cannot open " + path.string());
    out << stable_dump(j);
    if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

nlohmann::json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorCode::IoError, "cannot open " + path.string());
    return json::parse(in);  // parse_error carries the byte offset diagnostic
}

}  // namespace infocycle
