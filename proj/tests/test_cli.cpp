#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include "inellipse/json_io.hpp"

using namespace inellipse;

namespace {

struct RunResult {
    int code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return text;
}

RunResult run(const std::string& args, const std::string& env_prefix = "") {
    static int counter = 0;
    const std::string tag = std::to_string(counter++);
    const std::string out_file = "cli_stdout_" + tag + ".txt";
    const std::string err_file = "cli_stderr_" + tag + ".txt";
    std::string cmd;
    if (!env_prefix.empty())
        cmd += "env " + env_prefix + " ";
    cmd += std::string("\"") + INELLIPSE_CLI_PATH + "\" " + args;
    cmd += " > " + out_file + " 2> " + err_file;
    const int rc = std::system(cmd.c_str());
    RunResult r;
    if (rc != -1 && WIFEXITED(rc))
        r.code = WEXITSTATUS(rc);
    r.out = slurp(out_file);
    r.err = slurp(err_file);
    return r;
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

constexpr const char* kShearedKite = "0 0 0 1 2 4 1 1";
constexpr const char* kSquare = "0 0 0 1 1 1 1 0";

} // namespace

TEST_CASE("classify names the class and echoes the normalized shape") {
    const RunResult square = run(std::string("classify ") + kSquare);
    CHECK(square.code == 0);
    CHECK(contains(square.out, "parallelogram"));

    const RunResult gen = run(std::string("--json classify ") + kShearedKite);
    REQUIRE(gen.code == 0);
    const ResultDocument doc = result_from_json(gen.out);
    CHECK(doc.classification == "mdq-type-1");
    REQUIRE(doc.normalized.has_value());
    CHECK(std::abs(doc.normalized->s - 2) <= 1e-12);
    CHECK(std::abs(doc.normalized->t - 2) <= 1e-12);

    // global flags also parse after the subcommand
    const RunResult trailing = run(std::string("classify ") + kSquare + " --json");
    CHECK(trailing.code == 0);
    CHECK(contains(trailing.out, "\"parallelogram\""));
}

TEST_CASE("midpoints reports the two paired ellipses of the sheared kite") {
    const RunResult r = run(std::string("--json midpoints ") + kShearedKite);
    REQUIRE(r.code == 0);
    const ResultDocument doc = result_from_json(r.out);
    REQUIRE(doc.ellipses.size() == 2);
    CHECK(std::abs(doc.ellipses[0].q - 0.5) <= 1e-12);
    CHECK((doc.ellipses[0].midpoint_sides == std::vector<int>{1, 4}));
    CHECK(std::abs(doc.ellipses[1].q - 0.25) <= 1e-12);
    CHECK((doc.ellipses[1].midpoint_sides == std::vector<int>{2, 3}));
}

TEST_CASE("maxarea lands exactly on 1/2 for a trapezoid") {
    const RunResult r = run("--json maxarea 0 0 0 1 4 1 1 0");
    REQUIRE(r.code == 0);
    const ResultDocument doc = result_from_json(r.out);
    CHECK(doc.classification == "trapezoid");
    REQUIRE(doc.maximal.has_value());
    CHECK(doc.maximal->q == 0.5);
    CHECK(std::abs(doc.maximal->area - 3.14159265358979323846 / 2) <= 1e-12);
}

TEST_CASE("family evaluates requested parameters") {
    const RunResult r = run(std::string("--json family ") + kShearedKite + " --q 0.5");
    REQUIRE(r.code == 0);
    const ResultDocument doc = result_from_json(r.out);
    REQUIRE(doc.ellipses.size() == 1);
    CHECK(doc.ellipses[0].q == 0.5);
    CHECK(doc.ellipses[0].midpoint_sides.empty());

    const RunResult multi = run(std::string("--json family ") + kShearedKite + " --q 0.2,0.4,0.6");
    REQUIRE(multi.code == 0);
    CHECK(result_from_json(multi.out).ellipses.size() == 3);

    const RunResult bad = run(std::string("family ") + kShearedKite + " --q 1.5");
    CHECK(bad.code == 2);
}

TEST_CASE("error paths map to distinct exit codes") {
    CHECK(run(std::string("midpoints ") + kSquare).code == 4);
    CHECK(run("classify 0 0 2 0 2 2 1.2 1").code == 3);
    CHECK(run("classify 0 0 0 1 1 1").code == 2);
    CHECK(run("nonsense").code == 2);
    CHECK(run("fuzz bogus --trials 5").code == 2);
    CHECK(run("fuzz t1 --trials 0").code == 2);
    CHECK(run("classify --in no_such_file.json").code == 5);
    CHECK(run("--out no_such_dir/out.svg render " + std::string(kShearedKite)).code == 5);
    CHECK(run("--help").code == 0);

    std::ofstream("bad_quad.json") << "{not json";
    CHECK(run("classify --in bad_quad.json").code == 2);
    std::ofstream("six_vertices.json") << "{\"vertices\": [[0,0],[0,1],[1,1]]}";
    CHECK(run("classify --in six_vertices.json").code == 2);
}

TEST_CASE("vertices load from a JSON document") {
    std::ofstream("quad_in.json") << "{\"vertices\": [[0,0],[0,1],[2,4],[1,1]]}";
    const RunResult r = run("--json classify --in quad_in.json");
    REQUIRE(r.code == 0);
    CHECK(result_from_json(r.out).classification == "mdq-type-1");
    CHECK(run(std::string("classify --in quad_in.json ") + kSquare).code == 2);
}

TEST_CASE("fuzz subcommand runs and reports") {
    const RunResult counts = run("fuzz counts --trials 20 --grid 64 --class trapezoid");
    CHECK(counts.code == 0);
    CHECK(contains(counts.out, "PASS"));

    const RunResult t1 = run("--json fuzz t1 --trials 20 --grid 64 --serial --seed 3");
    CHECK(t1.code == 0);
    CHECK(contains(t1.out, "\"passed\": true"));

    CHECK(run("fuzz t1 --trials 5 --grid 64 --class trapezoid").code == 2);
}

TEST_CASE("render writes deterministic SVG") {
    const RunResult a = run(std::string("--out scene_a.svg render ") + kShearedKite);
    const RunResult b = run(std::string("--out scene_b.svg render ") + kShearedKite);
    REQUIRE(a.code == 0);
    REQUIRE(b.code == 0);
    const std::string sa = slurp("scene_a.svg");
    CHECK(contains(sa, "<svg"));
    CHECK(contains(sa, "<ellipse"));
    CHECK(sa == slurp("scene_b.svg"));
}

TEST_CASE("tolerance is adjustable from the environment") {
    const std::string near_square = "classify 0 0 0 1 1.05 1.02 1 0";
    const RunResult strict = run(near_square);
    REQUIRE(strict.code == 0);
    CHECK_FALSE(contains(strict.out, "parallelogram"));
    const RunResult loose = run(near_square, "INELLIPSE_TOL=0.5");
    REQUIRE(loose.code == 0);
    CHECK(contains(loose.out, "parallelogram"));
}
