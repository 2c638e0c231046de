// infocycle command-line front end: load distributions and graphs, run
// information measures, theorem/lemma verifications, falsification sweeps,
// and the cyclic-factorization search.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "infocycle/generate.hpp"
#include "infocycle/json_io.hpp"

namespace ic = infocycle;
using nlohmann::json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitVacuous = 10;
constexpr int kExitFail = 20;
constexpr int kExitInput = 1;
constexpr int kExitInternal = 2;

int verdict_exit_code(ic::Verdict v) {
    switch (v) {
        case ic::Verdict::Pass: return kExitPass;
        case ic::Verdict::Vacuous: return kExitVacuous;
        case ic::Verdict::Fail: return kExitFail;
    }
    return kExitInternal;
}

void emit(const json& doc, bool as_json, const std::string& out_path,
          const std::string& human_text) {
    if (!out_path.empty()) ic::write_json_file(out_path, doc);
    if (as_json)
        std::fputs(ic::stable_dump(doc).c_str(), stdout);
    else
        std::fputs(human_text.c_str(), stdout);
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::string token;
    std::istringstream ss(text);
    while (std::getline(ss, token, ',')) {
        if (token.empty()) continue;
        try {
            out.push_back(std::stoi(token));
        } catch (const std::exception&) {
            throw ic::Error(ic::ErrorCode::BadDocument, "expected an integer list, got '" + text + "'");
        }
    }
    return out;
}

// --graph accepts either a sidecar file path or an inline JSON literal.
ic::Digraph load_graph(const std::string& opt) {
    const auto first = opt.find_first_not_of(" \t");
    if (first != std::string::npos && (opt[first] == '[' || opt[first] == '{'))
        return ic::digraph_from_json(nlohmann::json::parse(opt));
    return ic::read_digraph(opt);
}

ic::CycleSpec cycle_from_option(const std::vector<int>& order, int n) {
    if (order.empty()) return ic::CycleSpec::identity(n);
    ic::CycleSpec c;
    c.order = order;
    return c;
}

std::string report_text(const ic::VerificationReport& r) {
    std::string s;
    s += "check " + r.check + ": " + ic::verdict_name(r.verdict) + "\n";
    s += "  hypothesis residual " + fmt(r.hypothesis_residual) + " (tol " +
         fmt(r.hypothesis_tol) + ", " + (r.hypothesis_satisfied ? "satisfied" : "not satisfied") +
         ")\n";
    for (const auto& [k, v] : r.conclusion_values)
        s += "  " + k + " = " + fmt(v) + "\n";
    if (!r.terms.empty()) {
        s += "  terms (" + std::to_string(r.terms.size()) + "):\n";
        for (const auto& t : r.terms) {
            s += "    W=0x";
            char buf[16];
            std::snprintf(buf, sizeof(buf), "%x", t.positions);
            s += buf;
            s += std::string(" sign ") + (t.sign > 0 ? "+" : "-") + " " +
                 ic::term_class_name(t.classification) + " value " + fmt(t.value_bits) +
                 (t.atoms_empty ? " (empty)" : "") + "\n";
        }
    }
    s += "  support: zero cells " + std::to_string(r.support.zero_cells) + ", undefined rows " +
         std::to_string(r.support.undefined_rows) + "\n";
    return s;
}

// -------- measure --------

int run_measure(const std::string& dist_path, const std::vector<std::string>& subsets,
                bool as_json, const std::string& out_path) {
    const ic::JointDistribution dist = ic::read_distribution(dist_path);
    const int n = dist.var_count();

    std::map<std::string, int> index_of_name;
    for (int i = 0; i < n; ++i) index_of_name[dist.variables[i].name] = i;

    // Requested subsets default to each single variable plus the full set.
    std::vector<std::pair<std::string, ic::VarSet>> wanted;
    if (subsets.empty()) {
        for (int i = 0; i < n; ++i)
            wanted.emplace_back(dist.variables[i].name, ic::VarSet{1} << i);
        std::string all;
        for (int i = 0; i < n; ++i) all += (i ? "," : "") + dist.variables[i].name;
        wanted.emplace_back(all, (ic::VarSet{1} << n) - 1);
    } else {
        for (const auto& spec : subsets) {
            ic::VarSet mask = 0;
            std::string label;
            std::string token;
            std::istringstream ss(spec);
            while (std::getline(ss, token, ',')) {
                auto it = index_of_name.find(token);
                if (it == index_of_name.end())
                    throw ic::Error(ic::ErrorCode::IndexOutOfRange,
                                    "unknown variable '" + token + "'");
                mask |= ic::VarSet{1} << it->second;
                label += (label.empty() ? "" : ",") + token;
            }
            wanted.emplace_back(label, mask);
        }
    }

    const ic::AtomTable atoms = ic::i_measure(dist);

    json jsubsets = json::array();
    std::string text;
    text += "variables:";
    for (const auto& v : dist.variables)
        text += " " + v.name + "(" + std::to_string(v.cardinality) + ")";
    text += "\n";
    for (const auto& [label, mask] : wanted) {
        const double h = ic::entropy(dist, mask);
        jsubsets.push_back({{"subset", label}, {"entropy_bits", h}});
        text += "H(" + label + ") = " + fmt(h) + "\n";
    }

    json mi_matrix = json::array();
    text += "pairwise mutual information (bits):\n";
    for (int i = 0; i < n; ++i) {
        json row = json::array();
        text += "  " + dist.variables[i].name + ":";
        for (int j = 0; j < n; ++j) {
            const double v = i == j ? 0.0
                                    : ic::mutual_information(dist, ic::VarSet{1} << i,
                                                             ic::VarSet{1} << j);
            row.push_back(v);
            text += " " + fmt(v);
        }
        mi_matrix.push_back(row);
        text += "\n";
    }

    double co = 0.0;
    if (n >= 2) {
        co = ic::co_information(dist);
        text += "co-information = " + fmt(co) + "\n";
    }

    text += "atoms:\n";
    const json jatoms = ic::atom_table_to_json(atoms, dist.variables);
    for (const auto& a : jatoms) {
        std::string names;
        for (const auto& s : a.at("subset")) names += (names.empty() ? "" : ",") + s.get<std::string>();
        text += "  {" + names + "} = " + fmt(a.at("value_bits").get<double>()) + "\n";
    }

    json doc{{"variables", ic::distribution_to_json(dist).at("variables")},
             {"subset_entropies", jsubsets},
             {"pairwise_mi_bits", mi_matrix},
             {"co_information_bits", co},
             {"atoms", jatoms}};
    emit(doc, as_json, out_path, text);
    return kExitPass;
}

// -------- verify --------

int run_verify(const std::string& check, const std::string& dist_path,
               const std::vector<int>& cycle_order, const std::string& graph_path,
               const std::vector<int>& a, const std::vector<int>& b, const std::vector<int>& z,
               double tol, double concl_tol, bool as_json, const std::string& out_path) {
    const ic::JointDistribution dist = ic::read_distribution(dist_path);
    const ic::CycleSpec cycle = cycle_from_option(cycle_order, dist.var_count());

    ic::VerificationReport report;
    if (check == "t1") {
        report = ic::verify_theorem1(dist, tol, concl_tol);
    } else if (check == "t2") {
        report = ic::verify_theorem2(dist, cycle, tol, concl_tol);
    } else if (check == "t3") {
        report = ic::verify_theorem3(dist, cycle, tol, concl_tol);
    } else if (check == "l1") {
        report = ic::verify_lemma1(dist, cycle, tol, concl_tol);
    } else if (check == "l2") {
        report = ic::verify_lemma2(dist, cycle);
    } else if (check == "l3l4-terms") {
        report = ic::verify_terms(dist, cycle, tol, concl_tol);
    } else if (check == "dsep-ci") {
        if (graph_path.empty())
            throw ic::Error(ic::ErrorCode::BadDocument, "dsep-ci needs --graph");
        const ic::Digraph g = load_graph(graph_path);
        // The cycle option supplies the factorization certificate; without it
        // the distribution is uncertified and the check is vacuous. The
        // certificate only speaks for g when g is exactly that cycle's graph.
        double certificate = std::numeric_limits<double>::infinity();
        if (!cycle_order.empty()) {
            const int n = cycle.size();
            bool matches = g.node_count() == n && g.edge_count() == static_cast<std::size_t>(n);
            for (int i = 0; matches && i < n; ++i)
                matches = g.has_edge(cycle.successor(i), cycle.order[i]);
            if (!matches)
                throw ic::Error(ic::ErrorCode::BadDocument,
                                "--cycle certificate does not describe the given graph");
            certificate = ic::cycle_factorization_residual(dist, cycle);
        }
        report = ic::dsep_ci_check(dist, g, a, b, z, certificate, tol, concl_tol);
    } else {
        throw ic::Error(ic::ErrorCode::BadDocument, "unknown check '" + check + "'");
    }

    emit(ic::report_to_json(report), as_json, out_path, report_text(report));
    return verdict_exit_code(report.verdict);
}

// -------- falsify --------

struct CheckCounts {
    std::uint64_t pass = 0, vacuous = 0, fail = 0;
    void add(ic::Verdict v) {
        if (v == ic::Verdict::Pass) ++pass;
        else if (v == ic::Verdict::Vacuous) ++vacuous;
        else ++fail;
    }
};

int run_falsify(int n, int card, int seeds, std::uint64_t base_seed,
                const std::vector<int>& cycle_order, double tol, double concl_tol, bool as_json,
                const std::string& out_path, const std::string& dump_dir) {
    if (n < 2) throw ic::Error(ic::ErrorCode::NTooSmall, "need at least 2 variables");
    if (card < 2) throw ic::Error(ic::ErrorCode::BadCardinality, "cardinality must be >= 2");
    const std::vector<int> cards(static_cast<std::size_t>(n), card);
    const ic::CycleSpec cycle = cycle_from_option(cycle_order, n);

    const std::vector<std::string> generators = {"random", "independent", "ipf"};
    std::map<std::string, std::map<std::string, CheckCounts>> counts;
    std::vector<std::string> dumped;
    double max_certified_co = 0.0;
    std::uint64_t adjacent_zero_violations = 0;  // set-level facts hold on every run

    for (int s = 0; s < seeds; ++s) {
        const std::uint64_t seed = base_seed + static_cast<std::uint64_t>(s);
        for (const auto& gen : generators) {
            ic::JointDistribution dist;
            if (gen == "random") {
                dist = ic::random_joint(cards, seed);
            } else if (gen == "independent") {
                std::vector<std::vector<double>> margs;
                for (int i = 0; i < n; ++i)
                    margs.push_back(ic::random_marginal(
                        card, seed * 1000003ull + static_cast<std::uint64_t>(i)));
                dist = ic::independent_joint(margs);
            } else {
                dist = ic::ipf_cycle_projection(ic::random_joint(cards, seed), cycle, 300, tol)
                           .best;
            }

            std::vector<ic::VerificationReport> reports;
            if (n == 2) reports.push_back(ic::verify_theorem1(dist, tol, concl_tol));
            reports.push_back(ic::verify_theorem2(dist, cycle, tol, concl_tol));
            reports.push_back(ic::verify_theorem3(dist, cycle, tol, concl_tol));
            reports.push_back(ic::verify_lemma1(dist, cycle, tol, concl_tol));
            reports.push_back(ic::verify_lemma2(dist, cycle));
            if (n <= 12) reports.push_back(ic::verify_terms(dist, cycle, tol, concl_tol));

            for (const auto& r : reports) {
                counts[gen][r.check].add(r.verdict);
                if (r.check == "t2" && r.hypothesis_satisfied) {
                    max_certified_co =
                        std::max(max_certified_co,
                                 std::abs(r.conclusion_values.at("co_information_bits")));
                }
                if (r.check == "l3l4-terms" &&
                    r.conclusion_values.at("adjacent_terms_exact_zero") != 1.0)
                    ++adjacent_zero_violations;
                if (r.verdict == ic::Verdict::Fail) {
                    const std::string name = "falsify_fail_" + r.check + "_" + gen + "_seed" +
                                             std::to_string(seed) + ".json";
                    const std::filesystem::path dir =
                        dump_dir.empty() ? std::filesystem::path(".")
                                         : std::filesystem::path(dump_dir);
                    ic::write_distribution(dir / name, dist);
                    dumped.push_back(name);
                }
            }
        }
    }

    json jgen = json::object();
    std::uint64_t total_pass = 0, total_vacuous = 0, total_fail = 0;
    std::string text;
    for (const auto& [gen, checks] : counts) {
        json jchecks = json::object();
        for (const auto& [check, c] : checks) {
            jchecks[check] = {{"pass", c.pass}, {"vacuous", c.vacuous}, {"fail", c.fail}};
            total_pass += c.pass;
            total_vacuous += c.vacuous;
            total_fail += c.fail;
            text += gen + "/" + check + ": pass " + std::to_string(c.pass) + ", vacuous " +
                    std::to_string(c.vacuous) + ", fail " + std::to_string(c.fail) + "\n";
        }
        jgen[gen] = jchecks;
    }
    text += "totals: pass " + std::to_string(total_pass) + ", vacuous " +
            std::to_string(total_vacuous) + ", fail " + std::to_string(total_fail) + "\n";
    text += "adjacent-term exact-zero violations: " + std::to_string(adjacent_zero_violations) +
            "\n";
    text += "max |co-information| among certified: " + fmt(max_certified_co) + "\n";

    json doc{{"n", n},
             {"cardinality", card},
             {"seeds", seeds},
             {"base_seed", base_seed},
             {"tol", tol},
             {"conclusion_tol", concl_tol},
             {"generators", jgen},
             {"totals", {{"pass", total_pass}, {"vacuous", total_vacuous}, {"fail", total_fail}}},
             {"adjacent_zero_violations", adjacent_zero_violations},
             {"max_certified_co_information_bits", max_certified_co},
             {"failures", dumped}};
    emit(doc, as_json, out_path, text);
    return (total_fail == 0 && adjacent_zero_violations == 0) ? kExitPass : kExitFail;
}

// -------- search --------

int run_search(const std::vector<int>& cards, int attempts, double tol, std::uint64_t seed,
               const std::vector<int>& cycle_order, bool as_json, const std::string& out_path) {
    if (cards.size() == 2)
        throw ic::Error(ic::ErrorCode::NTooSmall,
                        "two-variable cyclic factorizations are necessarily independent "
                        "(check t1); nothing to search");
    const ic::CycleSpec cycle = cycle_from_option(cycle_order, static_cast<int>(cards.size()));
    const ic::SearchResult result = ic::search_nontrivial_cyclic(cards, cycle, attempts, tol, seed);

    const double co = ic::co_information(result.best);
    json doc = ic::search_result_to_json(result);
    doc["metadata"]["co_information_bits"] = co;

    std::string text;
    text += "residual = " + fmt(result.residual) + (result.converged ? " (converged)" : "") + "\n";
    text += "co-information = " + fmt(co) + "\n";
    text += "dependence score = " + fmt(result.dependence_bits) + " bits\n";
    text += "iterations = " + std::to_string(result.iterations) + ", seed = " +
            std::to_string(result.seed) + "\n";
    emit(doc, as_json, out_path, text);
    return kExitPass;
}

// -------- dsep --------

int run_dsep(const std::string& graph_path, const std::vector<int>& a, const std::vector<int>& b,
             const std::vector<int>& z, bool as_json, const std::string& out_path) {
    const ic::Digraph g = load_graph(graph_path);
    const bool sep = ic::d_separated(g, a, b, z);
    json doc{{"a", a}, {"b", b}, {"z", z}, {"d_separated", sep}};
    emit(doc, as_json, out_path, std::string("d-separated: ") + (sep ? "true" : "false") + "\n");
    return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"discrete information measures and cyclic-factorization checks"};
    app.require_subcommand(1);

    // measure
    auto* measure = app.add_subcommand("measure", "entropies, MI matrix, atom table");
    std::string m_dist;
    std::vector<std::string> m_subsets;
    bool m_json = false;
    std::string m_out;
    measure->add_option("dist", m_dist, "distribution JSON file")->required();
    measure->add_option("--subset", m_subsets, "comma-separated variable names (repeatable)");
    measure->add_flag("--json", m_json, "machine-readable output");
    measure->add_option("--out", m_out, "write the JSON report to a file");

    // verify
    auto* verify = app.add_subcommand("verify", "run one theorem/lemma check");
    std::string v_check, v_dist, v_graph, v_out;
    std::string v_cycle, v_a, v_b, v_z;
    double v_tol = ic::kHypothesisTol, v_ctol = ic::kConclusionTol;
    bool v_json = false;
    verify->add_option("check", v_check, "t1|t2|t3|l1|l2|l3l4-terms|dsep-ci")->required();
    verify->add_option("dist", v_dist, "distribution JSON file")->required();
    verify->add_option("--cycle", v_cycle, "cycle order, e.g. 0,1,2");
    verify->add_option("--graph", v_graph, "graph JSON file or inline edge list (dsep-ci)");
    verify->add_option("--a", v_a, "node set A (dsep-ci), e.g. 0,1");
    verify->add_option("--b", v_b, "node set B (dsep-ci)");
    verify->add_option("--z", v_z, "conditioning set Z (dsep-ci)");
    verify->add_option("--tol", v_tol, "hypothesis tolerance");
    verify->add_option("--conclusion-tol", v_ctol, "conclusion tolerance");
    verify->add_flag("--json", v_json, "machine-readable output");
    verify->add_option("--out", v_out, "write the JSON report to a file");

    // falsify
    auto* falsify = app.add_subcommand("falsify", "randomized counterexample sweep");
    int f_n = 3, f_card = 2, f_seeds = 100;
    std::uint64_t f_seed = 1;
    std::string f_cycle;
    double f_tol = ic::kHypothesisTol, f_ctol = ic::kConclusionTol;
    bool f_json = false;
    std::string f_out, f_dump;
    falsify->add_option("--n", f_n, "variable count")->required();
    falsify->add_option("--card", f_card, "cardinality of every variable");
    falsify->add_option("--seeds", f_seeds, "distributions per generator");
    falsify->add_option("--seed", f_seed, "base seed");
    falsify->add_option("--cycle", f_cycle, "cycle order");
    falsify->add_option("--tol", f_tol, "hypothesis tolerance");
    falsify->add_option("--conclusion-tol", f_ctol, "conclusion tolerance");
    falsify->add_flag("--json", f_json, "machine-readable output");
    falsify->add_option("--out", f_out, "write the JSON summary to a file");
    falsify->add_option("--dump-dir", f_dump, "directory for failing distributions");

    // search
    auto* search = app.add_subcommand("search", "search for cyclically factorizing distributions");
    std::string s_cards, s_cycle;
    int s_attempts = 100;
    double s_tol = ic::kHypothesisTol;
    std::uint64_t s_seed = 1;
    bool s_json = false;
    std::string s_out;
    search->add_option("--cards", s_cards, "cardinalities, e.g. 2,2,2")->required();
    search->add_option("--attempts", s_attempts, "random starts");
    search->add_option("--tol", s_tol, "residual tolerance");
    search->add_option("--seed", s_seed, "base seed");
    search->add_option("--cycle", s_cycle, "cycle order");
    search->add_flag("--json", s_json, "machine-readable output");
    search->add_option("--out", s_out, "write the result distribution + metadata to a file");

    // dsep
    auto* dsep = app.add_subcommand("dsep", "d-separation query on a directed graph");
    std::string d_graph, d_out;
    std::string d_a, d_b, d_z;
    bool d_json = false;
    dsep->add_option("--graph", d_graph, "graph JSON file or inline edge list")->required();
    dsep->add_option("--a", d_a, "node set A, e.g. 0,1")->required();
    dsep->add_option("--b", d_b, "node set B")->required();
    dsep->add_option("--z", d_z, "conditioning set Z");
    dsep->add_flag("--json", d_json, "machine-readable output");
    dsep->add_option("--out", d_out, "write the JSON result to a file");

    CLI11_PARSE(app, argc, argv);

    try {
        if (measure->parsed()) return run_measure(m_dist, m_subsets, m_json, m_out);
        if (verify->parsed())
            return run_verify(v_check, v_dist, parse_int_list(v_cycle), v_graph,
                              parse_int_list(v_a), parse_int_list(v_b), parse_int_list(v_z),
                              v_tol, v_ctol, v_json, v_out);
        if (falsify->parsed())
            return run_falsify(f_n, f_card, f_seeds, f_seed, parse_int_list(f_cycle), f_tol,
                               f_ctol, f_json, f_out, f_dump);
        if (search->parsed())
            return run_search(parse_int_list(s_cards), s_attempts, s_tol, s_seed,
                              parse_int_list(s_cycle), s_json, s_out);
        if (dsep->parsed())
            return run_dsep(d_graph, parse_int_list(d_a), parse_int_list(d_b),
                            parse_int_list(d_z), d_json, d_out);
    } catch (const ic::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInput;
    } catch (const nlohmann::json::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInput;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "internal error: %s\n", e.what());
        return kExitInternal;
    }
    return kExitInput;
}
