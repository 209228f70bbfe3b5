#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#ifndef WORKBENCH_BIN
#error "WORKBENCH_BIN must point at the command-line binary"
#endif

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct RunResult {
    int code = -1;
    std::string out;
    std::string err;
};

const fs::path& work_dir() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / ("workbench-cli-" + std::to_string(getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const fs::path& p, const std::string& content) {
    std::ofstream out(p, std::ios::binary);
    out << content;
}

RunResult run(const std::string& args) {
    static int counter = 0;
    const fs::path outPath = work_dir() / ("stdout-" + std::to_string(counter) + ".txt");
    const fs::path errPath = work_dir() / ("stderr-" + std::to_string(counter) + ".txt");
    ++counter;
    const std::string cmd = std::string(WORKBENCH_BIN) + " " + args + " > " +
                            outPath.string() + " 2> " + errPath.string();
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.code = (status >= 0 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
    r.out = slurp(outPath);
    r.err = slurp(errPath);
    return r;
}

fs::path config_file(const std::string& name, const std::string& content) {
    const fs::path p = work_dir() / name;
    spit(p, content);
    return p;
}

std::string square_json() {
    return R"({"points": [[0,0],[1,0],[0,1],[1,1]]})";
}

std::string pentagon_json() {
    return R"({"points": [[0,0],[3,0],[4,2],[2,4],[-1,2]]})";
}

std::string hexagon_json() {
    return R"({"points": [[0,0],[4,0],[6,3],[5,7],[1,8],[-2,3]]})";
}

}  // namespace

TEST_CASE("validate: exit codes 0, 2 and 3") {
    const auto okPath = config_file("sq.json", square_json());
    const RunResult ok = run("validate " + okPath.string());
    CHECK(ok.code == 0);
    const json report = json::parse(ok.out);
    CHECK(report["valid"] == true);
    CHECK(report["points"] == 4);

    // three collinear points: named on standard error
    const auto colPath =
        config_file("collinear.json", R"({"points": [[0,0],[1,1],[5,0],[2,2]]})");
    const RunResult col = run("validate " + colPath.string());
    CHECK(col.code == 2);
    CHECK(col.err.find("collinear") != std::string::npos);
    CHECK(col.err.find("0") != std::string::npos);
    CHECK(col.err.find("1") != std::string::npos);
    CHECK(col.err.find("3") != std::string::npos);

    // duplicate points
    const auto dupPath =
        config_file("dup.json", R"({"points": [[0,0],[1,0],[0,0],[0,1]]})");
    CHECK(run("validate " + dupPath.string()).code == 2);

    // malformed input
    const auto badPath = config_file("trunc.json", R"({"points": [[0,0],[1,)");
    CHECK(run("validate " + badPath.string()).code == 3);
    CHECK(run("validate " + (work_dir() / "missing.json").string()).code == 3);
    const auto wrongType = config_file("wrongtype.json", R"({"points": 7})");
    CHECK(run("validate " + wrongType.string()).code == 3);
    const auto fractional =
        config_file("frac.json", R"({"points": [[0,0],[1,0],[0.5,1],[1,1]]})");
    CHECK(run("validate " + fractional.string()).code == 3);
}

TEST_CASE("enumerate: counts, ids, filters, region flag") {
    const auto sq = config_file("sq.json", square_json());
    const RunResult r = run("enumerate " + sq.string());
    REQUIRE(r.code == 0);
    const json report = json::parse(r.out);
    CHECK(report["count"] == 3);
    CHECK(report["by_wall_count"] == json::array({1, 2}));
    REQUIRE(report["subdivisions"].size() == 3);
    for (size_t i = 0; i < 3; ++i) CHECK(report["subdivisions"][i]["id"] == i);

    // max-codim filter
    const RunResult coarse = run("enumerate " + sq.string() + " --max-codim 0");
    CHECK(json::parse(coarse.out)["count"] == 1);

    // region restricted to one triangle
    const RunResult corner = run("enumerate " + sq.string() + " --region 0,1,3");
    CHECK(json::parse(corner.out)["count"] == 1);

    // region parsing and validation failures
    CHECK(run("enumerate " + sq.string() + " --region 0,x,3").code == 3);
    CHECK(run("enumerate " + sq.string() + " --region 0,9").code == 2);
    CHECK(run("enumerate " + sq.string() + " --region 0,2,1").code == 2);  // clockwise

    // budget exhaustion
    const auto hex = config_file("hex.json", hexagon_json());
    CHECK(run("enumerate " + hex.string() + " --budget 3").code == 5);

    // write to a file instead of stdout
    const fs::path outFile = work_dir() / "enum-out.json";
    const RunResult filed = run("enumerate " + sq.string() + " -o " + outFile.string());
    CHECK(filed.code == 0);
    CHECK(filed.out.empty());
    CHECK(json::parse(slurp(outFile))["count"] == 3);
}

TEST_CASE("classify: statuses, seeds from flag and file, stabilization limit") {
    const auto pent = config_file("pent.json", pentagon_json());
    const RunResult r = run("classify " + pent.string());
    REQUIRE(r.code == 0);
    const json report = json::parse(r.out);
    CHECK(report["count"] == 11);
    CHECK(report["scheme"]["seed"] == 1);
    CHECK(report["scheme"]["t"] == "1/65536");
    for (const json& row : report["rows"]) {
        CHECK(row["status"] == "regular");
        CHECK(row["too_rigid"] == false);
    }

    // --max-codim keeps the trivial subdivision and the five walls
    const RunResult coarse = run("classify " + pent.string() + " --max-codim 1");
    CHECK(json::parse(coarse.out)["count"] == 6);

    // seed precedence: file overrides default, flag overrides file
    const auto seeded = config_file(
        "pent-seeded.json", R"({"points": [[0,0],[3,0],[4,2],[2,4],[-1,2]], "seed": 5})");
    CHECK(json::parse(run("classify " + seeded.string()).out)["scheme"]["seed"] == 5);
    CHECK(json::parse(run("classify " + seeded.string() + " --seed 9").out)["scheme"]["seed"] ==
          9);

    // a sweep cut off before three windows agree cannot stabilize
    const auto sq = config_file("sq.json", square_json());
    CHECK(run("classify " + sq.string() + " --max-k 16").code == 4);
}

TEST_CASE("differential and secondary-cone by id") {
    const auto sq = config_file("sq.json", square_json());
    // find the trivial subdivision's id from the enumeration
    const json enumerated = json::parse(run("enumerate " + sq.string()).out);
    int trivialId = -1;
    for (const json& d : enumerated["subdivisions"]) {
        if (d["walls"].empty()) trivialId = d["id"].get<int>();
    }
    REQUIRE(trivialId >= 0);

    const RunResult diff =
        run("differential " + sq.string() + " --id " + std::to_string(trivialId));
    REQUIRE(diff.code == 0);
    const json dreport = json::parse(diff.out);
    REQUIRE(dreport["terms"].size() == 2);
    for (const json& term : dreport["terms"]) {
        CHECK(term["coefficient"] == -1);
        CHECK(term["codim"] == 1);
    }

    const RunResult cone =
        run("secondary-cone " + sq.string() + " --id " + std::to_string(trivialId));
    REQUIRE(cone.code == 0);
    const json creport = json::parse(cone.out);
    CHECK(creport["regular"] == true);
    CHECK(creport["dim"] == 3);

    // ids come from the enumeration order; out-of-range is a usage error
    CHECK(run("differential " + sq.string() + " --id 99").code == 2);
    CHECK(run("secondary-cone " + sq.string() + " --id -1").code == 2);
}

TEST_CASE("verify: exit 0 on sound configs, byte-identical reruns") {
    const auto sq = config_file("sq.json", square_json());
    const fs::path a = work_dir() / "verify-a.json";
    const fs::path b = work_dir() / "verify-b.json";
    CHECK(run("verify " + sq.string() + " -o " + a.string()).code == 0);
    CHECK(run("verify " + sq.string() + " -o " + b.string()).code == 0);
    const std::string bytesA = slurp(a);
    CHECK(!bytesA.empty());
    CHECK(bytesA == slurp(b));

    const json report = json::parse(bytesA);
    CHECK(report["pass"] == true);
    CHECK(report["homology"] == json::array({0, 1}));
    for (const json& check : report["checks"]) CHECK(check["pass"] == true);
}

TEST_CASE("verify: an injected sign fault fails with a named witness") {
    const auto pent = config_file("pent.json", pentagon_json());
    const RunResult r = run("verify " + pent.string() + " --flip-sign 0");
    CHECK(r.code == 1);
    const json report = json::parse(r.out);
    CHECK(report["pass"] == false);
    bool sawDsq = false;
    for (const json& check : report["checks"]) {
        if (check["name"] == "d_squared_zero") {
            sawDsq = true;
            CHECK(check["pass"] == false);
        }
    }
    CHECK(sawDsq);
    REQUIRE(report["d_squared"]["ok"] == false);
    REQUIRE(!report["d_squared"]["failures"].empty());
    // the witness names a concrete target subdivision of the codim-2 layer
    const json& failure = report["d_squared"]["failures"][0];
    CHECK(failure.contains("target"));
    CHECK(failure["total"] != 0);
}

TEST_CASE("render: subdivision and fan SVGs, deterministic bytes") {
    const auto sq = config_file("sq.json", square_json());
    const json enumerated = json::parse(run("enumerate " + sq.string()).out);
    int diagonalId = -1, trivialId = -1;
    for (const json& d : enumerated["subdivisions"]) {
        if (d["walls"].size() == 1) diagonalId = d["id"].get<int>();
        if (d["walls"].empty()) trivialId = d["id"].get<int>();
    }
    REQUIRE(diagonalId >= 0);
    REQUIRE(trivialId >= 0);

    const fs::path cells = work_dir() / "cells.svg";
    CHECK(run("render " + sq.string() + " --subdivision " + std::to_string(diagonalId) +
              " -o " + cells.string())
              .code == 0);
    const std::string svg = slurp(cells);
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(svg.find("<polygon") != std::string::npos);

    const fs::path fan = work_dir() / "fan.svg";
    CHECK(run("render " + sq.string() + " --fan " + std::to_string(diagonalId) + " -o " +
              fan.string())
              .code == 0);
    const std::string fanSvg = slurp(fan);
    CHECK(fanSvg.find("<svg") != std::string::npos);
    CHECK(fanSvg.find("<line") != std::string::npos);

    // one vertex, boundary rays only
    const fs::path trivialFan = work_dir() / "trivial-fan.svg";
    CHECK(run("render " + sq.string() + " --fan " + std::to_string(trivialId) + " -o " +
              trivialFan.string())
              .code == 0);

    // deterministic artifact bytes
    const fs::path again = work_dir() / "cells-again.svg";
    CHECK(run("render " + sq.string() + " --subdivision " + std::to_string(diagonalId) +
              " -o " + again.string())
              .code == 0);
    CHECK(slurp(again) == svg);

    // exactly one of --subdivision / --fan
    CHECK(run("render " + sq.string() + " -o " + (work_dir() / "x.svg").string()).code == 3);
    CHECK(run("render " + sq.string() + " --subdivision 0 --fan 1 -o " +
              (work_dir() / "y.svg").string())
              .code == 3);
    CHECK(run("render " + sq.string() + " --subdivision 99 -o " +
              (work_dir() / "z.svg").string())
              .code == 2);
}
