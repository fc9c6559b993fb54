// End-to-end checks of the CLI binary: JSON payloads, determinism, exit codes.
#include <catch2/catch_amalgamated.hpp>
#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <string>

using json = nlohmann::json;

namespace {

std::string cli_path() {
    const char* p = std::getenv("BRINGV_CLI");
    REQUIRE(p != nullptr);
    return p;
}

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    std::string cmd = cli_path() + " " + args + " 2>/dev/null";
    std::array<char, 4096> buf{};
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
    int status = pclose(pipe);
    int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return {code, out};
}

}  // namespace

TEST_CASE("genus subcommand") {
    auto r = run_cli("genus --m 5");
    CHECK(r.exit_code == 0);
    auto j = json::parse(r.out);
    CHECK(j["genus"] == 4);
    CHECK(j["degree"] == 6);
}

TEST_CASE("count subcommand") {
    auto r = run_cli("count --m 6 --p 7");
    CHECK(r.exit_code == 0);
    CHECK(json::parse(r.out)["points"] == 120);

    auto r2 = run_cli("count --m 6 --p 7 --ext 2");
    CHECK(json::parse(r2.out)["points"] == 120);

    auto r3 = run_cli("count --m 6 --p 7 --affine");
    CHECK(json::parse(r3.out)["nonzero"] == 720);
}

TEST_CASE("maximal-scan subcommand") {
    auto r = run_cli("maximal-scan --limit 1000");
    CHECK(r.exit_code == 0);
    CHECK(json::parse(r.out)["primes"] == std::vector<int>{29, 59, 149, 239, 269, 839});
}

TEST_CASE("order-seq subcommand") {
    auto r = run_cli("order-seq --p 7");
    CHECK(r.exit_code == 0);
    auto j = json::parse(r.out);
    CHECK(j["orders"] == std::vector<int>{0, 1, 2, 3, 10});
    CHECK(j["lastOrder"] == 10);
    CHECK(j["hermitianTangentOrder"] == 10);
    CHECK(j["frobeniusOsculating"] == true);
}

TEST_CASE("redei subcommand") {
    auto r = run_cli("redei --p 7");
    CHECK(r.exit_code == 0);
    auto j = json::parse(r.out);
    CHECK(j["constant"] == 7);
    CHECK(j["permutation"] == 5040);
    CHECK(j["other"] == 0);
}

TEST_CASE("other subcommands produce sane payloads") {
    CHECK(json::parse(run_cli("quotient-genus --m 6 --l 3").out)["quotientGenus"] == 3);
    auto plane = json::parse(run_cli("plane-curve --m 6 --p 7").out);
    CHECK(plane["points"] == 20);
    CHECK(plane["svBound"] == 20);
    CHECK(plane["identityVerified"] == true);
    auto cls = json::parse(run_cli("classify --m 5 --p 29").out);
    CHECK(cls["Omega_epsilon"] == 30);
    auto proj = json::parse(run_cli("project-check --m 6 --p 7 --keep 4,5,6").out);
    CHECK(proj["genericFiberSize"] == 6);
    auto iso = json::parse(run_cli("isogeny-check --p 29 --samples 100").out);
    CHECK(iso["ok"] == true);
    auto reg = json::parse(run_cli("regular --m 5 --p 11 --max-ext 2").out);
    CHECK(reg["regular"] == true);
    auto inv = json::parse(run_cli("invariants-check --p 29 --ext 2 --samples 50").out);
    CHECK(inv["ok"] == true);
}

TEST_CASE("csv ranges") {
    auto r = run_cli("genus --csv --from 5 --to 7");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "5,6,4\n6,24,49\n7,120,481\n");
    auto r2 = run_cli("quotient-genus --l 3 --csv --from 5 --to 6");
    CHECK(r2.out == "5,3,1\n6,3,3\n");
}

TEST_CASE("deterministic stdout") {
    for (std::string cmd : {std::string("count --m 5 --p 29 --ext 2"), std::string("order-seq --p 7"),
                            std::string("isogeny-check --p 29 --samples 50")}) {
        auto a = run_cli(cmd);
        auto b = run_cli(cmd);
        CHECK(a.out == b.out);
    }
}

TEST_CASE("exit codes") {
    CHECK(run_cli("no-such-subcommand").exit_code == 2);
    CHECK(run_cli("count --m 6 --nonsense 3").exit_code == 2);
    CHECK(run_cli("count --m 10 --p 11 --budget 1000").exit_code == 3);
    CHECK(run_cli("redei --p 11").exit_code == 3);
    CHECK(run_cli("count --m 9 --p 7").exit_code == 1);  // m > p-1
}

TEST_CASE("point set dump format") {
    std::string path = "/tmp/bringv_test_points.txt";
    auto r = run_cli("count --m 5 --p 11 --out " + path);
    CHECK(r.exit_code == 0);
    std::ifstream in(path);
    REQUIRE(in.good());
    std::string header;
    std::getline(in, header);
    CHECK(header == "# m=5 q=11^1 K=1,2,3");
    std::string line;
    size_t rows = 0;
    while (std::getline(in, line)) {
        if (!line.empty()) ++rows;
    }
    CHECK(rows == 24);
    std::remove(path.c_str());
}
