#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

#include "sdof/matrix.hpp"

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run(const std::string& args) {
    const std::string cmd = std::string(SDOF_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    std::array<char, 4096> buf;
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string write_temp(const std::string& name, const std::string& content) {
    const std::string path = "/tmp/sdof_cli_test_" + name;
    std::ofstream f(path);
    f << content;
    return path;
}

}  // namespace

TEST_CASE("region subcommand with generic ranks from antenna counts") {
    const RunResult r = run("region --nt1 2 --nt2 2 --nr 3 --ne 1");
    CHECK(r.exit_code == 0);
    const auto j = sdof::json::parse(r.out);
    REQUIRE(j.at("vertices").size() == 3);
    CHECK(j.at("vertices")[0] == sdof::json::parse("[[0,1],[0,1]]"));
    CHECK(j.at("vertices")[1] == sdof::json::parse("[[1,1],[0,1]]"));
    CHECK(j.at("vertices")[2] == sdof::json::parse("[[0,1],[1,1]]"));
}

TEST_CASE("region subcommand writes a CSV vertex table") {
    const std::string csv_path = "/tmp/sdof_cli_test_region.csv";
    const RunResult r = run("region --r0 3 --r1 2 --r2 2 --ne 0 --csv " + csv_path);
    CHECK(r.exit_code == 0);
    std::ifstream f(csv_path);
    std::string header;
    std::getline(f, header);
    CHECK(header == "d1,d2");
    long rows = 0;
    for (std::string line; std::getline(f, line);) ++rows;
    CHECK(rows == 5);
    std::remove(csv_path.c_str());
}

TEST_CASE("cover subcommand prints the wrap-around row") {
    const RunResult r = run("cover --f 3 --g 7");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("5\t{6,7,1}\t{1}\t{2,3,4,5,6,7}\t3\n") != std::string::npos);
    CHECK(r.out.find("|F|=3 |G|=7") != std::string::npos);
}

TEST_CASE("certify exit codes") {
    const RunResult ok = run("certify --r0 3 --r1 2 --r2 2 --ne 1");
    CHECK(ok.exit_code == 0);
    const auto j = sdof::json::parse(ok.out);
    CHECK(j.at("verdict") == true);
    CHECK(j.at("case") == "A");

    const RunResult partial = run("certify --r0 3");  // incomplete rank profile
    CHECK(partial.exit_code == 2);
    const RunResult bad = run("certify --r0 1 --r1 2 --r2 0 --ne 0");  // r1 > r0
    CHECK(bad.exit_code == 2);
}

TEST_CASE("certify sweep over a small antenna grid") {
    const RunResult r = run("certify --sweep-max 2");
    CHECK(r.exit_code == 0);
    const auto j = sdof::json::parse(r.out);
    REQUIRE(j.is_array());
    CHECK(j.size() == 81);
    for (const auto& cert : j) CHECK(cert.at("verdict") == true);
}

TEST_CASE("decompose subcommand round trip") {
    sdof::ComplexMatrix h1 = sdof::ComplexMatrix::Zero(2, 3);
    h1(0, 0) = 1.0;
    h1(1, 1) = 1.0;
    sdof::ComplexMatrix h2 = sdof::ComplexMatrix::Zero(2, 3);
    h2(0, 1) = 1.0;
    h2(1, 2) = 1.0;
    sdof::json in;
    in["h1"] = sdof::matrix_to_json(h1);
    in["h2"] = sdof::matrix_to_json(h2);
    in["n_e"] = 1;
    const std::string path = write_temp("decompose.json", in.dump());

    const RunResult r = run("decompose -i " + path);
    CHECK(r.exit_code == 0);
    const auto j = sdof::json::parse(r.out);
    CHECK(j.at("gsvd").at("dims").at("r0") == 3);
    CHECK(j.at("gsvd").at("dims").at("r1") == 2);
    CHECK(j.at("gsvd").at("dims").at("r2") == 2);
    CHECK(j.at("parallel").at("a") == 1);
    CHECK(j.at("parallel").at("b") == 1);
    CHECK(j.at("parallel").at("c") == 1);
    CHECK(j.at("parallel").at("n_e") == 1);
    std::remove(path.c_str());
}

TEST_CASE("sweep subcommand emits the rate CSV") {
    sdof::json model;
    model["a"] = 1;
    model["b"] = 1;
    model["c"] = 1;
    model["n_e"] = 1;
    model["sigma_plus"] = 1.0;
    model["sigma"] = 1.0;
    model["s_bar"] = 1.0;
    const std::string path = write_temp("model.json", model.dump());
    const RunResult r = run("sweep -i " + path + " --target p3");
    CHECK(r.exit_code == 0);
    CHECK(r.out.rfind("log2_p,", 0) == 0);
    CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 7);  // header + 6 rows

    const RunResult bad = run("sweep -i " + path + " --target custom --t1 5 --t2 0");
    CHECK(bad.exit_code == 2);
    std::remove(path.c_str());
}

TEST_CASE("output is byte-deterministic across runs") {
    const std::string args = "certify --r0 5 --r1 4 --r2 3 --ne 2";
    const RunResult a = run(args);
    const RunResult b = run(args);
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK(!a.out.empty());
}

TEST_CASE("unknown subcommand fails cleanly") {
    const RunResult r = run("frobnicate");
    CHECK(r.exit_code != 0);
}
