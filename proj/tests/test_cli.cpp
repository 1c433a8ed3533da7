#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dirops/cli.hpp"

using dirops::run_command;

namespace {
struct RunResult {
    int exit_code;
    std::string out;
    std::string err;
};

RunResult run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run_command(args, out, err);
    return {code, out.str(), err.str()};
}
} // namespace

TEST_CASE("bounds: pass, CSV schema and exit 0") {
    const auto r = run({"bounds", "--symbol", "affine:1,0,0.25,0", "--K", "48", "--N", "48"});
    CHECK(r.exit_code == 0);
    CHECK(r.out.rfind("c1_re,c1_im,c2_re,c2_im,K,N,lower,sigma1_sq,upper", 0) == 0);
    CHECK(r.out.find("PASS lower_bound") != std::string::npos);
    CHECK(r.out.find("PASS upper_bound") != std::string::npos);
}

TEST_CASE("bounds: canonical quarter symbol at K=N=96 exits 0") {
    const auto r = run({"bounds", "--symbol", "affine:1,0,0.25,0", "--K", "96", "--N", "96"});
    CHECK(r.exit_code == 0);
    CHECK(r.out.find(",2,") != std::string::npos); // lower bound column = 2
}

TEST_CASE("bounds: validation failure exits 1") {
    const auto r = run({"bounds", "--symbol", "affine:0.6,0,0.2,0"});
    CHECK(r.exit_code == 1);
    CHECK(r.err.find("strict interior") != std::string::npos);
}

TEST_CASE("bounds: forced bound violation exits 2") {
    const auto r = run({"bounds", "--symbol", "affine:1,0,0.25,0", "--K", "32", "--N", "32",
                        "--tol", "lower-slack=1.5"});
    CHECK(r.exit_code == 2);
    CHECK(r.out.find("FAIL lower_bound") != std::string::npos);
}

TEST_CASE("bounds: power-iteration cap exits 3") {
    const auto r = run({"bounds", "--symbol", "affine:1,0,0.25,0", "--K", "32", "--N", "32",
                        "--tol", "power-cap=1"});
    CHECK(r.exit_code == 3);
    CHECK(r.err.find("non-convergence") != std::string::npos);
}

TEST_CASE("tolerance override validation") {
    CHECK(run({"bounds", "--symbol", "affine:1,0,0.25,0", "--tol", "no-such-name=1"}).exit_code ==
          1);
    CHECK(run({"bounds", "--symbol", "affine:1,0,0.25,0", "--tol", "garbage"}).exit_code == 1);
}

TEST_CASE("argument errors exit 1") {
    CHECK(run({}).exit_code == 1);
    CHECK(run({"bounds"}).exit_code == 1);             // missing --symbol
    CHECK(run({"frobnicate"}).exit_code == 1);         // unknown subcommand
    CHECK(run({"diverge", "--delta", "0.2", "--epsilon", "0.1"}).exit_code == 1);
}

TEST_CASE("help exits 0") {
    const auto r = run({"--help"});
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("bounds") != std::string::npos);
}

TEST_CASE("approx requires real parameters for the analytic bound") {
    const auto r = run({"approx", "--symbol", "affine:1.5,0.5,0.1,0.2", "--K", "16", "--N", "16"});
    CHECK(r.exit_code == 1);
}

TEST_CASE("approx passes on the quarter symbol") {
    const auto r =
        run({"approx", "--symbol", "affine:1,0,0.25,0", "--K", "32", "--N", "32", "--n-max", "6"});
    CHECK(r.exit_code == 0);
    CHECK(r.out.rfind("index,sigma,analytic_bound", 0) == 0);
    CHECK(r.out.find("FAIL") == std::string::npos);
}

TEST_CASE("counting output is byte-identical across worker counts") {
    const std::vector<std::string> args = {"counting", "--symbol", "affine:1,0,0.25,0",
                                           "--grid",   "0.8:1.2:5,-0.1:0.1:3", "--T", "10000"};
    setenv("DIROPS_THREADS", "1", 1);
    const auto serial = run(args);
    setenv("DIROPS_THREADS", "7", 1);
    const auto parallel = run(args);
    unsetenv("DIROPS_THREADS");
    CHECK(serial.exit_code == 0);
    CHECK(serial.out == parallel.out);
}

TEST_CASE("json format emits parseable data") {
    const auto r = run({"spectrum", "--symbol", "affine:1,0,0.25,0", "--N", "32", "--m-max", "8",
                        "--format", "json"});
    CHECK(r.exit_code == 0);
    const auto end = r.out.find("\nPASS");
    REQUIRE(end != std::string::npos);
    const auto parsed = nlohmann::json::parse(r.out.substr(0, end + 1));
    REQUIRE(parsed.is_array());
    CHECK(parsed.size() == 4); // m = 1, 2, 4, 8
    CHECK(parsed[0]["m"] == 1);
    CHECK(parsed[0]["estimate"].is_number());
}

TEST_CASE("--out routes the data away from stdout") {
    const std::string path = "/tmp/dirops_cli_test_out.csv";
    std::remove(path.c_str());
    const auto r = run({"lp", "--count", "3", "--len", "8", "--out", path});
    CHECK(r.exit_code == 0);
    CHECK(r.out.rfind("PASS", 0) == 0); // only check lines on stdout
    std::ifstream f(path);
    REQUIRE(f.good());
    std::string header;
    std::getline(f, header);
    CHECK(header == "draw,rel_err");
    std::remove(path.c_str());
}

TEST_CASE("classify reports the expected evidence") {
    const auto r = run({"classify", "--symbol", "general:0;0,0;1,0", "--samples", "64", "--seed",
                        "7", "--format", "json"});
    CHECK(r.exit_code == 0);
    const auto parsed = nlohmann::json::parse(r.out);
    CHECK(parsed["class"] == "counterexample");
    CHECK(parsed["witness"].is_object());

    const auto ok = run({"classify", "--symbol", "general:0;2,0", "--samples", "64", "--seed",
                         "7", "--format", "json"});
    CHECK(nlohmann::json::parse(ok.out)["class"] == "zero-char-evidence");
}

TEST_CASE("kernels with an adjoint check") {
    const auto r = run({"kernels", "--a", "1,0", "--N", "24", "--symbol", "affine:1,0,0.25,0",
                        "--K", "40"});
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("PASS kernel_reproduction") != std::string::npos);
    CHECK(r.out.find("PASS derivative_reproduction") != std::string::npos);
    CHECK(r.out.find("PASS adjoint_kernel") != std::string::npos);
}

TEST_CASE("selfadjoint verdicts") {
    CHECK(run({"selfadjoint", "--symbol", "translate:2,0", "--N", "24"}).exit_code == 0);
    CHECK(run({"selfadjoint", "--symbol", "translate:1,0.5", "--N", "24"}).exit_code == 0);
    CHECK(run({"selfadjoint", "--symbol", "affine:1,0,0.25,0", "--N", "64"}).exit_code == 0);
}

TEST_CASE("hs and remainder subcommands pass") {
    CHECK(run({"hs", "--symbol", "affine:1,0,0.25,0", "--K", "60", "--N", "48"}).exit_code == 0);
    CHECK(run({"remainder", "--symbol", "affine:1,0,0.25,0", "--K", "32", "--N", "32", "--n-max",
               "4"}).exit_code == 0);
}

TEST_CASE("cov subcommand emits the report schema") {
    const auto r = run({"cov", "--symbol", "affine:1,0,0.25,0", "--K", "40", "--count", "1",
                        "--len", "6", "--format", "json"});
    CHECK(r.exit_code == 0);
    const auto end = r.out.find("\nPASS");
    REQUIRE(end != std::string::npos);
    const auto parsed = nlohmann::json::parse(r.out.substr(0, end + 1));
    CHECK(parsed[0].contains("tail_budget"));
    CHECK(parsed[0]["rel_err"].get<double>() <= 1e-4);
}

TEST_CASE("bounds --dump-matrix writes the entry CSV") {
    const std::string path = "/tmp/dirops_cli_test_matrix.csv";
    std::remove(path.c_str());
    const auto r = run({"bounds", "--symbol", "affine:1,0,0.25,0", "--K", "48", "--N", "48",
                        "--dump-matrix", path});
    CHECK(r.exit_code == 0);
    std::ifstream f(path);
    REQUIRE(f.good());
    std::string header;
    std::getline(f, header);
    CHECK(header == "k,n,re,im");
    std::remove(path.c_str());
}

TEST_CASE("diverge passes at the reference deltas") {
    const auto r = run({"diverge", "--delta", "0.001", "--epsilon", "0.1"});
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("PASS halving_ratio") != std::string::npos);
}
