#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

using nlohmann::json;

namespace {

struct RunResult {
    int code = -1;
    std::string out;
};

RunResult run(const std::string& args, const std::string& input = "") {
    static int counter = 0;
    std::string cmd = std::string(LATCOVER_CLI_PATH) + " " + args;
    if (!input.empty()) {
        std::string infile =
            "/tmp/latcover_cli_in_" + std::to_string(++counter) + ".json";
        std::ofstream(infile) << input;
        cmd += " " + infile;
    }
    cmd += " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::string out;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
    int st = pclose(p);
    return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

const char* kCube =
    R"({"vertices": [["0","0","0"],["1","0","0"],["0","1","0"],["1","1","0"],
        ["0","0","1"],["1","0","1"],["0","1","1"],["1","1","1"]]})";
const char* kReeve =
    R"({"vertices": [["0","0","0"],["1","0","0"],["0","1","0"],["1","1","2"]]})";
const char* kBall3 =
    R"({"A": [["1","0","0"],["0","1","0"],["0","0","1"]], "center": ["0","0","0"]})";

}  // namespace

TEST_CASE("exit codes follow the ok/fail/error contract") {
    CHECK(run("is-normal", kCube).code == 0);
    CHECK(run("is-very-ample", kReeve).code == 1);
    CHECK(run("is-normal", "this is not json").code == 2);
    CHECK(run("no-such-command").code == 2);
    CHECK(run("is-normal /tmp/latcover_no_such_file.json").code == 2);
    CHECK(run("--help").code == 0);
}

TEST_CASE("failure payloads carry machine-checkable witnesses") {
    RunResult r = run("is-very-ample", kReeve);
    json env = json::parse(r.out);
    CHECK(env["status"] == "fail");
    CHECK(env["payload"]["very_ample"] == false);
    CHECK(env["payload"]["vertex"] == json({"0", "0", "0"}));
    CHECK(env["payload"]["element"] == json({"1", "1", "1"}));

    RunResult n = run("is-normal", kReeve);
    CHECK(n.code == 1);
    json nenv = json::parse(n.out);
    CHECK(nenv["payload"]["normal"] == false);
    CHECK(nenv["payload"].contains("x"));
}

TEST_CASE("hilbert basis and sebo triangulation of a sharp cone") {
    const char* cone = R"({"rays": [["1","0","0"],["0","1","0"],["1","1","2"]]})";
    RunResult r = run("hilbert-basis", cone);
    REQUIRE(r.code == 0);
    json env = json::parse(r.out);
    CHECK(env["payload"]["count"] == 4);
    bool has_111 = false;
    for (const json& b : env["payload"]["basis"])
        if (b == json({"1", "1", "1"})) has_111 = true;
    CHECK(has_111);

    RunResult t = run("sebo-triangulate", cone);
    REQUIRE(t.code == 0);
    json tenv = json::parse(t.out);
    CHECK(tenv["payload"]["pieces"] == 3);
    int npool = (int)tenv["payload"]["rays"].size();
    for (const json& tri : tenv["payload"]["triangles"]) {
        CHECK(tri.size() == 3);
        for (const json& ix : tri) CHECK(ix.get<int>() < npool);
    }
}

TEST_CASE("gp and hull report lattice structure") {
    RunResult g = run("gp", kReeve);
    REQUIRE(g.code == 0);
    json genv = json::parse(g.out);
    CHECK(genv["payload"]["rank"] == 3);
    CHECK(genv["payload"]["direct_summand"] == false);
    CHECK(genv["payload"]["index_in_saturation"] == "2");

    RunResult gc = run("gp", kCube);
    json gcenv = json::parse(gc.out);
    CHECK(gcenv["payload"]["direct_summand"] == true);
    CHECK(gcenv["payload"]["index_in_saturation"] == "1");

    RunResult h = run("hull", kCube);
    REQUIRE(h.code == 0);
    json henv = json::parse(h.out);
    CHECK(henv["payload"]["dim"] == 3);
    CHECK(henv["payload"]["facets"].size() == 6);
    CHECK(henv["payload"]["lattice_point_count"] == 8);
}

TEST_CASE("ellipsoid points with and without the surface flag") {
    RunResult solid = run("ellipsoid-points", kBall3);
    REQUIRE(solid.code == 0);
    CHECK(json::parse(solid.out)["payload"]["count"] == 7);
    RunResult surf = run("ellipsoid-points --surface", kBall3);
    REQUIRE(surf.code == 0);
    CHECK(json::parse(surf.out)["payload"]["count"] == 6);
}

TEST_CASE("cover pipeline round-trips through verify-cover") {
    RunResult c = run("cover-ellipsoid3", kBall3);
    REQUIRE(c.code == 0);
    json cenv = json::parse(c.out);
    CHECK(cenv["payload"]["scope"] == "full");
    CHECK(cenv["payload"]["verified"] == true);

    static int counter = 0;
    std::string payload_file =
        "/tmp/latcover_cli_payload_" + std::to_string(++counter) + ".json";
    std::ofstream(payload_file) << cenv["payload"].dump();
    RunResult v = run("verify-cover " + payload_file);
    CHECK(v.code == 0);
    CHECK(json::parse(v.out)["payload"]["covered"] == true);

    RunResult s = run("cover-ellipsoid3 --method=symmetric", kBall3);
    REQUIRE(s.code == 0);
    CHECK(json::parse(s.out)["payload"]["simplices"].size() == 8);
}

TEST_CASE("boundary cover command distinguishes very ample inputs") {
    RunResult ok = run("boundary-cover", kCube);
    REQUIRE(ok.code == 0);
    json env = json::parse(ok.out);
    CHECK(env["payload"]["scope"] == "boundary-neighborhood");
    CHECK(env["payload"]["verified"] == true);
    CHECK(env["payload"]["simplices"].size() > 8);

    RunResult bad = run("boundary-cover", kReeve);
    CHECK(bad.code == 1);
    CHECK(json::parse(bad.out)["payload"]["very_ample"] == false);
}

TEST_CASE("counterexample verification at d = 6") {
    RunResult r = run("verify-counterexample --d 6");
    REQUIRE(r.code == 0);
    json env = json::parse(r.out);
    CHECK(env["payload"]["point_count"] == 76);
    CHECK(env["payload"]["representable"] == false);
    CHECK(env["payload"]["gp_is_whole_lattice"] == true);
    CHECK(env["payload"]["normal"] == false);
    json target = env["payload"]["target"];
    REQUIRE(target.size() == 6);
    for (const json& t : target) CHECK(t == "5/2");
}

TEST_CASE("stack lifts an ellipsoidal set one dimension") {
    const char* disk = R"({"A": [["1","0"],["0","1"]], "center": ["0","0"]})";
    RunResult r = run("stack --b 1", disk);
    REQUIRE(r.code == 0);
    json env = json::parse(r.out);
    CHECK(env["payload"]["point_count"] == 10);
    CHECK(env["payload"]["dim"] == 3);
    CHECK(run("stack --b 2", disk).code == 2);
}

TEST_CASE("outputs are deterministic and re-parse cleanly") {
    RunResult a = run("peel-chain", kBall3);
    RunResult b = run("peel-chain", kBall3);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    json env = json::parse(a.out);
    CHECK(env["payload"]["sizes"].size() == 7);

    RunResult s = run("build-qd --d 5 --format summary");
    REQUIRE(s.code == 0);
    CHECK(s.out.substr(0, 2) == "ok");
    CHECK(s.out.find("p_point_count=43") != std::string::npos);
}
