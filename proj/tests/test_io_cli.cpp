#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include "fixtures.hpp"
#include "infocycle/generate.hpp"
#include "infocycle/json_io.hpp"

using namespace infocycle;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const fs::path& work_dir() {
    static const fs::path dir = [] {
        fs::path p = fs::temp_directory_path() /
                     ("infocycle_io_test_" + std::to_string(::getpid()));
        fs::create_directories(p);
        return p;
    }();
    return dir;
}

int run_cli(const std::string& args, const fs::path& stdout_file) {
    const std::string cmd = std::string(INFOCYCLE_CLI_PATH) + " " + args + " > " +
                            stdout_file.string() + " 2> " + stdout_file.string() + ".err";
    const int status = std::system(cmd.c_str());
    REQUIRE(WIFEXITED(status));
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("distribution json round trip is bit-identical") {
    const int cards[3] = {2, 3, 2};
    const auto d = random_joint(cards, 77);
    const fs::path p1 = work_dir() / "round1.json";
    const fs::path p2 = work_dir() / "round2.json";
    write_distribution(p1, d);
    const auto d2 = read_distribution(p1);
    CHECK(d2.table == d.table);
    write_distribution(p2, d2);
    CHECK(slurp(p1) == slurp(p2));
}

TEST_CASE("distribution parsing validates invariants") {
    const json bad{{"variables", json::array({{{"name", "X"}, {"cardinality", 2}}})},
                   {"probabilities", {0.5, 0.6}}};
    CHECK_THROWS_AS(distribution_from_json(bad), Error);

    const json negative{{"variables", json::array({{{"name", "X"}, {"cardinality", 2}}})},
                        {"probabilities", {1.1, -0.1}}};
    CHECK_THROWS_AS(distribution_from_json(negative), Error);

    CHECK_THROWS_AS(distribution_from_json(json::object()), Error);
}

TEST_CASE("extra top-level fields (search metadata) are ignored when reading") {
    SearchResult r;
    r.best = fixtures::copy_pair();
    r.residual = 0.5;
    r.seed = 3;
    const json doc = search_result_to_json(r);
    const auto d = distribution_from_json(doc);
    CHECK(d.table == r.best.table);
}

TEST_CASE("graph json forms") {
    const auto bare = digraph_from_json(json::parse("[[0,1],[1,2]]"));
    CHECK(bare.node_count() == 3);
    CHECK(bare.has_edge(0, 1));

    const auto wrapped = digraph_from_json(json{{"nodes", 4}, {"edges", {{2, 3}}}});
    CHECK(wrapped.node_count() == 4);
    CHECK(wrapped.has_edge(2, 3));

    const auto round = digraph_from_json(digraph_to_json(cycle_graph(4)));
    CHECK(round.edges() == cycle_graph(4).edges());
}

TEST_CASE("atom table serialization is sorted by bitmask with names") {
    const auto atoms = i_measure(fixtures::copy_pair());
    const auto j = atom_table_to_json(atoms, fixtures::copy_pair().variables);
    REQUIRE(j.size() == 3);
    CHECK(j[0]["atom"] == 1);
    CHECK(j[0]["subset"] == json::array({"X"}));
    CHECK(j[1]["atom"] == 2);
    CHECK(j[2]["atom"] == 3);
    CHECK(j[2]["subset"] == json::array({"X", "Y"}));
    CHECK(j[2]["value_bits"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("verification report schema is stable") {
    const auto r = verify_theorem1(fixtures::copy_pair());
    const auto j = report_to_json(r);
    CHECK(j.contains("check"));
    CHECK(j.contains("verdict"));
    CHECK(j["hypothesis"].contains("residual"));
    CHECK(j["hypothesis"].contains("tol"));
    CHECK(j["hypothesis"].contains("satisfied"));
    CHECK(j["conclusion"].contains("values"));
    CHECK(j["conclusion"].contains("tol"));
    CHECK(j.contains("terms"));
    CHECK(j["support"].contains("zero_cells"));
    CHECK(j["support"].contains("undefined_rows"));
    CHECK(j["verdict"] == "vacuous");
}

TEST_CASE("cli: measure prints the xor co-information") {
    const fs::path dist = work_dir() / "xor.json";
    write_distribution(dist, fixtures::xor_triple());
    const fs::path out = work_dir() / "measure_out.json";
    const int code = run_cli("measure " + dist.string() + " --json", out);
    CHECK(code == 0);
    const auto doc = json::parse(slurp(out));
    CHECK(doc["co_information_bits"].get<double>() == doctest::Approx(-1.0).epsilon(1e-9));
    CHECK(slurp(fs::path(out.string() + ".err")).empty());
}

TEST_CASE("cli: measure --subset on a uniform binary variable") {
    const fs::path dist = work_dir() / "unif.json";
    write_distribution(dist, fixtures::uniform_pair());
    const fs::path out = work_dir() / "measure_sub.json";
    const int code = run_cli("measure " + dist.string() + " --subset X --json", out);
    CHECK(code == 0);
    const auto doc = json::parse(slurp(out));
    REQUIRE(doc["subset_entropies"].size() == 1);
    CHECK(doc["subset_entropies"][0]["entropy_bits"].get<double>() ==
          doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("cli: malformed json gives a nonzero exit and a diagnostic") {
    const fs::path dist = work_dir() / "broken.json";
    std::ofstream(dist) << "{ not json";
    const fs::path out = work_dir() / "broken_out.txt";
    const int code = run_cli("measure " + dist.string(), out);
    CHECK(code == 1);
    CHECK_FALSE(slurp(fs::path(out.string() + ".err")).empty());
}

TEST_CASE("cli: verify exit codes map verdicts") {
    const fs::path copy = work_dir() / "copy.json";
    write_distribution(copy, fixtures::copy_pair());
    const fs::path indep = work_dir() / "indep.json";
    write_distribution(indep, fixtures::independent_pair(0.3, 0.7));
    const fs::path out = work_dir() / "verify_out.txt";

    CHECK(run_cli("verify t1 " + copy.string(), out) == 10);   // vacuous
    CHECK(run_cli("verify t1 " + indep.string(), out) == 0);   // pass

    const fs::path indep3 = work_dir() / "indep3.json";
    write_distribution(indep3, independent_joint({{0.3, 0.7}, {0.6, 0.4}, {0.5, 0.5}}));
    CHECK(run_cli("verify t2 --cycle 0,1,2 " + indep3.string(), out) == 0);
    CHECK(run_cli("verify l2 " + indep3.string(), out) == 0);
    CHECK(run_cli("verify nonsense " + indep3.string(), out) == 1);
}

TEST_CASE("cli: dsep query") {
    const fs::path graph = work_dir() / "cycle4.json";
    write_json_file(graph, digraph_to_json(cycle_graph(4)));
    const fs::path out = work_dir() / "dsep_out.json";
    const int code =
        run_cli("dsep --graph " + graph.string() + " --a 0 --b 2 --z 1,3 --json", out);
    CHECK(code == 0);
    CHECK(json::parse(slurp(out))["d_separated"] == true);
}

TEST_CASE("cli: dsep accepts an inline graph literal") {
    const fs::path out = work_dir() / "dsep_inline.json";
    const int code =
        run_cli("dsep --graph '[[0,2],[1,2]]' --a 0 --b 1 --json", out);
    CHECK(code == 0);
    CHECK(json::parse(slurp(out))["d_separated"] == true);
}

TEST_CASE("cli: dsep-ci with a cycle certificate") {
    const fs::path graph = work_dir() / "cycle4b.json";
    write_json_file(graph, digraph_to_json(cycle_graph(4)));
    const fs::path dist = work_dir() / "indep4.json";
    write_distribution(dist,
                       independent_joint({{0.3, 0.7}, {0.6, 0.4}, {0.5, 0.5}, {0.2, 0.8}}));
    const fs::path out = work_dir() / "dsepci_out.txt";
    CHECK(run_cli("verify dsep-ci " + dist.string() + " --graph " + graph.string() +
                      " --a 0 --b 2 --z 1,3 --cycle 0,1,2,3",
                  out) == 0);
    // without the cycle certificate the check is vacuous
    CHECK(run_cli("verify dsep-ci " + dist.string() + " --graph " + graph.string() +
                      " --a 0 --b 2 --z 1,3",
                  out) == 10);
}

TEST_CASE("cli: search emits a result whose file re-verifies") {
    const fs::path result = work_dir() / "search_result.json";
    const fs::path out = work_dir() / "search_out.json";
    const int code = run_cli(
        "search --cards 2,2,2 --attempts 4 --seed 5 --out " + result.string() + " --json", out);
    CHECK(code == 0);
    const auto doc = json::parse(slurp(result));
    REQUIRE(doc.contains("metadata"));
    if (doc["metadata"]["converged"].get<bool>()) {
        const fs::path vout = work_dir() / "search_verify.txt";
        CHECK(run_cli("verify t2 --cycle 0,1,2 " + result.string(), vout) == 0);
    }

    // the two-variable case is rejected up front
    const fs::path out2 = work_dir() / "search_reject.txt";
    CHECK(run_cli("search --cards 2,2 --attempts 4", out2) == 1);
    CHECK(slurp(fs::path(out2.string() + ".err")).find("t1") != std::string::npos);
}

TEST_CASE("cli: falsify reruns reproduce byte-identical reports") {
    const fs::path out1 = work_dir() / "falsify1.json";
    const fs::path out2 = work_dir() / "falsify2.json";
    const fs::path so = work_dir() / "falsify_stdout.txt";
    CHECK(run_cli("falsify --n 3 --card 2 --seeds 5 --seed 11 --out " + out1.string(), so) == 0);
    CHECK(run_cli("falsify --n 3 --card 2 --seeds 5 --seed 11 --out " + out2.string(), so) == 0);
    const std::string a = slurp(out1), b = slurp(out2);
    CHECK_FALSE(a.empty());
    CHECK(a == b);
}
