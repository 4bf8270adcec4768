#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <string>

#include <json.hpp>

#include "gblab/mesh_shapes.hpp"

using nlohmann::json;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run(const std::string& args) {
    const std::string cmd = std::string(GBLAB_BIN) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string write_temp(const std::string& name, const std::string& text) {
    const std::string path = "/tmp/gblab_test_" + name;
    std::ofstream out(path, std::ios::binary);
    out << text;
    return path;
}

constexpr double kPi = std::numbers::pi;

}  // namespace

TEST_CASE("curvature at a point emits one JSON record") {
    const RunResult r = run("curvature --surface sphere:1 --at 0.3,0.7");
    CHECK(r.exit_code == 0);
    const json j = json::parse(r.out);
    CHECK(j["K"].get<double>() == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(j["k1"].get<double>() == doctest::Approx(-1.0).epsilon(1e-9));
}

TEST_CASE("curvature grids in CSV carry the curvature sign structure") {
    const RunResult r = run("curvature --surface torus:2,1 --grid 64x64 --format csv");
    CHECK(r.exit_code == 0);
    std::istringstream lines(r.out);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "u,v,K,k1,k2,nx,ny,nz");
    int rows = 0, sign_flips = 0;
    double prev_K = 0.0;
    while (std::getline(lines, line)) {
        double u, v, K;
        REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf", &u, &v, &K) == 3);
        if (rows > 0 && (K > 0) != (prev_K > 0)) ++sign_flips;
        prev_K = K;
        ++rows;
    }
    CHECK(rows == 4096);
    CHECK(sign_flips > 0);  // K changes sign across the tube angle
}

TEST_CASE("unknown surfaces and bad loops are usage errors") {
    CHECK(run("curvature --surface nosuch --at 0,0").exit_code == 2);
    CHECK(run("transport --surface sphere:1 --loop warp:1").exit_code == 2);
    CHECK(run("transport --surface plane --loop tube:30").exit_code == 2);
    CHECK(run("verify nonsense").exit_code == 2);
}

TEST_CASE("transport reports the latitude deficit") {
    const RunResult r =
        run("transport --surface sphere:1 --loop latitude:30deg --steps 2048");
    CHECK(r.exit_code == 0);
    const json j = json::parse(r.out);
    CHECK(j["deficit"].get<double>() == doctest::Approx(kPi).epsilon(1e-8));
}

TEST_CASE("transport --compare-integral pairs deficit with quadrature") {
    const RunResult r = run(
        "transport --surface torus:2,1 --loop tube:45deg --steps 2048 --resolution 512 "
        "--compare-integral");
    CHECK(r.exit_code == 0);
    const json j = json::parse(r.out);
    CHECK(j["abs_error"].get<double>() < 1e-5);
}

TEST_CASE("verify subcommands emit reports and honor --tolerance") {
    {
        const RunResult r = run("verify total --surface torus:2,1");
        CHECK(r.exit_code == 0);
        const json j = json::parse(r.out);
        CHECK(j["identity"] == "total_curvature");
        CHECK(std::abs(j["lhs"].get<double>()) < 1e-8);
        CHECK(j["rhs"].get<double>() == 0.0);
    }
    {
        const RunResult r = run("verify foucault --latitude 48.8566");
        const json j = json::parse(r.out);
        CHECK(j["lhs"].get<double>() == doctest::Approx(271.1).epsilon(1e-3));
    }
    {
        const RunResult r = run("verify triangle --surface sphere:1 --vertices octant "
                                "--steps 512 --resolution 512");
        CHECK(r.exit_code == 0);
        const json j = json::parse(r.out);
        CHECK(j["lhs"].get<double>() == doctest::Approx(kPi / 2).epsilon(1e-4));
    }
    {
        // a coarse stokes run cannot meet a 1e-12 tolerance: exit 1
        const RunResult r = run("verify stokes --latitude 30 --steps 16 --tolerance 1e-12");
        CHECK(r.exit_code == 1);
    }
    {
        // coincident triangle vertices: numerical failure, exit 3
        const RunResult r = run(
            "verify triangle --surface sphere:1 --vertices 0.3,0.3,0.3,0.3,0.5,0.5");
        CHECK(r.exit_code == 3);
    }
    {
        const RunResult r = run("verify deficit --surface torus:2,1 --random-loops 3 "
                                "--seed 7 --resolution 256 --steps 1024");
        CHECK(r.exit_code == 0);
        std::istringstream lines(r.out);
        std::string line;
        int records = 0;
        while (std::getline(lines, line)) {
            const json j = json::parse(line);
            CHECK(j["abs_error"].get<double>() < 1e-3);
            ++records;
        }
        CHECK(records == 3);
    }
}

TEST_CASE("identical invocations produce byte-identical output") {
    const std::string cmd =
        "verify deficit --surface sphere:1 --random-loops 2 --seed 42 --resolution 128 "
        "--steps 512";
    const RunResult a = run(cmd);
    const RunResult b = run(cmd);
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK(!a.out.empty());
}

TEST_CASE("mesh subcommands: defect, chi, validate") {
    const std::string tetra = write_temp("tetra.off",
                                         "OFF\n4 4 6\n"
                                         "1 1 1\n1 -1 -1\n-1 1 -1\n-1 -1 1\n"
                                         "3 0 2 1\n3 0 1 3\n3 0 3 2\n3 1 2 3\n");
    {
        const RunResult r = run("mesh defect " + tetra);
        CHECK(r.exit_code == 0);
        const json j = json::parse(r.out);
        CHECK(j["chi"] == 2);
        CHECK(j["total_defect"].get<double>() ==
              doctest::Approx(4.0 * kPi).epsilon(1e-12));
    }
    {
        const RunResult r = run("mesh chi " + tetra);
        const json j = json::parse(r.out);
        CHECK(j["chi"] == 2);
    }
    {
        const RunResult r = run("mesh defect " + tetra + " --format csv");
        CHECK(r.out.rfind("vertex_index,defect_radians\n", 0) == 0);
    }
    {
        // an open strip: validation fails, boundary edges listed
        std::ostringstream off;
        off << "OFF\n4 2 0\n0 0 0\n1 0 0\n1 1 0\n0 1 0\n3 0 1 2\n3 0 2 3\n";
        const std::string strip = write_temp("strip.off", off.str());
        const RunResult r = run("mesh validate " + strip);
        CHECK(r.exit_code == 1);
        const json j = json::parse(r.out);
        CHECK(j["closed"] == false);
        CHECK(j["boundary_edges"].size() == 4);
    }
    {
        const RunResult r = run("mesh defect /tmp/gblab_no_such_file.off");
        CHECK(r.exit_code == 3);
    }
}

TEST_CASE("obj meshes load through the CLI") {
    const std::string cube = write_temp("cube.obj", gblab::cube_quads_obj_text());
    const RunResult r = run("mesh defect " + cube);
    CHECK(r.exit_code == 0);
    const json j = json::parse(r.out);
    CHECK(j["faces"] == 12);
    CHECK(j["total_defect"].get<double>() == doctest::Approx(4.0 * kPi).epsilon(1e-12));
}
