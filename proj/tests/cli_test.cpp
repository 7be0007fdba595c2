#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "rhq/cli.hpp"
#include "test_util.hpp"

#include "json.hpp"

#include <array>
#include <cstdio>
#include <sstream>
#include <fstream>
#include <string>

namespace {

using nlohmann::json;

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args, bool merge_stderr = false) {
    const std::string cmd =
        std::string(RHQ_CLI_PATH) + " " + args + (merge_stderr ? " 2>&1" : " 2>/dev/null");
    RunResult res;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf{};
    size_t got = 0;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) res.out.append(buf.data(), got);
    const int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

std::string data(const std::string& name) { return std::string(RHQ_DATA_DIR) + "/" + name; }

}  // namespace

TEST_CASE("report reproduces the genus-2 table rows") {
    SUBCASE("config (3,3)") {
        auto res = run_cli("report --input " + data("config_3_3.json") + " --machine --skip-numeric");
        REQUIRE(res.exit_code == 0);
        const auto j = json::parse(res.out);
        CHECK(j["gl_invariant"]["partition_string"] == "2+2+2");
        CHECK(j["gl_invariant"]["s"] == 0);
        CHECK(j["diffeomorphism_types"]["base"] == "T³");
        CHECK(j["diffeomorphism_types"]["cover"] == "T³");
        CHECK(j["curve"]["k"] == 3);
        CHECK(j["normal_form"]["eps"] == json::array({1, -1, 1}));
        CHECK(j["stiefel_whitney"]["relatively_spin"] == true);
        CHECK(j["ok"] == true);
    }
    SUBCASE("config (0,1)") {
        auto res = run_cli("report --input " + data("config_0_1.json") + " --machine --skip-numeric");
        REQUIRE(res.exit_code == 0);
        const auto j = json::parse(res.out);
        CHECK(j["gl_invariant"]["s"] == 3);
        CHECK(j["gl_invariant"]["partition"] == json::array());
        CHECK(j["diffeomorphism_types"]["base"] == "L(4,1)");
        CHECK(j["diffeomorphism_types"]["cover"] == "ℝP³");
    }
}

TEST_CASE("machine output is byte-identical across runs") {
    const std::string args =
        "report --input " + data("config_2_1.json") + " --machine --samples 150 --seed 9";
    auto r1 = run_cli(args);
    auto r2 = run_cli(args);
    REQUIRE(r1.exit_code == 0);
    CHECK(r1.out == r2.out);
    CHECK_FALSE(r1.out.empty());
}

TEST_CASE("invalid input exits 1 with a diagnostic") {
    SUBCASE("divisor multiplicity sum") {
        const std::string path = "/tmp/rhq_bad_divisor.json";
        {
            std::ofstream f(path);
            f << R"({"genus": 2,
                     "weierstrass": [{"re":"0","im":"0"},{"re":"1","im":"0"},{"re":"2","im":"0"},
                                     {"re":"3","im":"0"},{"re":"4","im":"0"},{"re":"5","im":"0"}],
                     "divisor": [{"point": {"re":"6","im":"0"}, "mult": -3}]})";
        }
        auto res = run_cli("report --input " + path, /*merge_stderr=*/true);
        CHECK(res.exit_code == 1);
        CHECK(res.out.find("expected -(2g+1)") != std::string::npos);
    }
    SUBCASE("missing file") {
        auto res = run_cli("report --input /nonexistent/nowhere.json");
        CHECK(res.exit_code == 1);
    }
    SUBCASE("malformed JSON") {
        const std::string path = "/tmp/rhq_bad_json.json";
        {
            std::ofstream f(path);
            f << "{ not json";
        }
        auto res = run_cli("report --input " + path);
        CHECK(res.exit_code == 1);
    }
}

TEST_CASE("sw subcommand") {
    auto res = run_cli("sw --genus 3 --machine");
    REQUIRE(res.exit_code == 0);
    const auto j = json::parse(res.out);
    CHECK(j["spin"] == true);
    CHECK(j["relatively_spin"] == true);
    CHECK(j["w2"] == "0");

    auto res2 = run_cli("sw --genus 2 --machine");
    const auto j2 = json::parse(res2.out);
    CHECK(j2["spin"] == false);
    CHECK(j2["w2"] == "w1^2");
}

TEST_CASE("verify subcommand is deterministic and exits 0 on good input") {
    const std::string args =
        "verify --input " + data("config_1_1.json") + " --machine --samples 200 --seed 5";
    auto r1 = run_cli(args);
    REQUIRE(r1.exit_code == 0);
    const auto j = json::parse(r1.out);
    CHECK(j["sampling_ok"] == true);
    CHECK(j["smooth_ok"] == true);
    CHECK(j["components"] == 1);
    auto r2 = run_cli(args);
    CHECK(r1.out == r2.out);
}

TEST_CASE("verify --dump-cloud writes coordinate rows") {
    const std::string path = "/tmp/rhq_cloud.txt";
    auto res = run_cli("verify --input " + data("config_3_3.json") +
                       " --samples 120 --seed 3 --dump-cloud " + path);
    REQUIRE(res.exit_code == 0);
    std::ifstream in(path);
    REQUIRE(in.good());
    std::string line;
    int rows = 0;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        double x;
        int cols = 0;
        while (ls >> x) ++cols;
        CHECK(cols == 6);
        ++rows;
    }
    CHECK(rows >= 100);
}

TEST_CASE("build_report on random genus-2 curves stays internally consistent") {
    // build_report cross-checks the computed (s, partition) against the table
    // row selected by (n, k) and throws on any mismatch, so a clean pass over
    // random inputs pins the whole pipeline together.
    rhq::testutil::Rng rng(60222);
    int seen_nk[4][4] = {};
    for (int iter = 0; iter < 60; ++iter) {
        const int n = rhq::testutil::rand_int(rng, 0, 3);
        auto W = rhq::testutil::random_weierstrass(2, n, rng);
        auto D = rhq::testutil::random_divisor(W, rng);
        rhq::InputSpec spec;
        spec.genus = 2;
        spec.weierstrass = W.points;
        spec.divisor = D.entries;
        spec.options.skip_numeric = true;
        auto rep = rhq::build_report(spec);
        CHECK(rep.congruence.ok);
        CHECK(rep.profile.k % 2 == 1);
        CHECK(rep.has_types);
        CHECK(rep.types.classified);
        ++seen_nk[rep.topology.n][rep.profile.k];
    }
    // the sampler should visit several distinct classes
    int classes = 0;
    for (int n = 0; n <= 3; ++n)
        for (int k = 0; k <= 3; ++k) classes += seen_nk[n][k] > 0 ? 1 : 0;
    CHECK(classes >= 3);
}

TEST_CASE("build_report handles a chart that needs an inversion") {
    using rhq::testutil::make_D;
    using rhq::testutil::make_W;
    using rhq::testutil::rc;
    auto W = make_W(2, {rc(0), rc(1), rc(2), rc(3), rc(4), rc(5)});
    auto D = make_D(W, {{rc(-1), -1}, {rc(6), -1}, {rc(3, 2, 0, 1), -3}});
    rhq::InputSpec spec;
    spec.genus = 2;
    spec.weierstrass = W.points;
    spec.divisor = D.entries;
    spec.options.skip_numeric = true;
    auto rep = rhq::build_report(spec);
    CHECK_FALSE(rep.transform.is_identity());
    CHECK(rep.profile.k == 1);
    CHECK(rep.gl.partition == std::vector<int>{1, 1, 1, 1, 2});
    CHECK(rep.types.base == "#₃(S¹×S²)");
    CHECK(rep.ok);
}

TEST_CASE("classify and curve-info subcommands") {
    auto res = run_cli("classify --input " + data("config_3_1.json") + " --machine");
    REQUIRE(res.exit_code == 0);
    const auto j = json::parse(res.out);
    CHECK(j["partition_string"] == "1+1+1+1+2");
    CHECK(j["diffeomorphism_types"]["cover"] == "#₅(S¹×S²)");

    auto info = run_cli("curve-info --input " + data("config_3_1.json") + " --machine");
    REQUIRE(info.exit_code == 0);
    const auto ji = json::parse(info.out);
    CHECK(ji["n"] == 3);
    CHECK(ji["profile"]["k"] == 1);
    CHECK(ji["dividing_tau"] == true);
}
