// End-to-end checks of the spin-align binary: exit codes, output shapes,
// determinism, and file emission.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#ifndef SPIN_ALIGN_CLI
#error "SPIN_ALIGN_CLI must point at the spin-align binary"
#endif

namespace {

namespace fs = std::filesystem;

struct Scratch {
    fs::path dir;
    Scratch() {
        dir = fs::temp_directory_path() /
              ("spin_align_cli_" + std::to_string(::getpid()));
        fs::create_directories(dir);
    }
    ~Scratch() { fs::remove_all(dir); }
    std::string path(const std::string& name) const { return (dir / name).string(); }
};

int run(const std::string& args, const std::string& stdout_path) {
    const std::string cmd =
        std::string(SPIN_ALIGN_CLI) + " " + args + " > " + stdout_path + " 2>/dev/null";
    const int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("reproduce: exit 0 and a passing report") {
    Scratch s;
    const int rc = run("reproduce --no-timestamp", s.path("out.json"));
    CHECK(rc == 0);
    const nlohmann::json j = nlohmann::json::parse(slurp(s.path("out.json")));
    CHECK(j.at("all_pass") == true);
    CHECK(j.at("kyfan3").get<double>() > 5.0 / 6.0);
}

TEST_CASE("reproduce: byte-identical without a timestamp") {
    Scratch s;
    REQUIRE(run("reproduce --no-timestamp", s.path("a.json")) == 0);
    REQUIRE(run("reproduce --no-timestamp", s.path("b.json")) == 0);
    CHECK(slurp(s.path("a.json")) == slurp(s.path("b.json")));
}

TEST_CASE("reproduce: csv output lists 8 target eigenvalues summing to 1") {
    Scratch s;
    REQUIRE(run("reproduce --no-timestamp --format csv", s.path("out.csv")) == 0);
    std::istringstream in(slurp(s.path("out.csv")));
    std::string line;
    std::getline(in, line);
    CHECK(line == "series,index,value");
    double total = 0.0;
    int target_rows = 0;
    while (std::getline(in, line)) {
        if (line.rfind("target_spectrum,", 0) == 0) {
            ++target_rows;
            total += std::stod(line.substr(line.rfind(',') + 1));
        }
    }
    CHECK(target_rows == 8);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("check: the emitted built-in instance violates with exit 2") {
    Scratch s;
    REQUIRE(run("reproduce --no-timestamp --emit-problem " + s.path("problem.json"),
                s.path("report.json")) == 0);
    const int rc = run("check " + s.path("problem.json") + " --no-timestamp", s.path("check.json"));
    CHECK(rc == 2);
    const nlohmann::json j = nlohmann::json::parse(slurp(s.path("check.json")));
    CHECK(j.at("holds") == false);
    CHECK(j.at("report").at("first_violation") == 3);
}

TEST_CASE("check: malformed and missing files exit 1") {
    Scratch s;
    std::ofstream(s.path("bad.json")) << "{ nope";
    CHECK(run("check " + s.path("bad.json"), s.path("out.json")) == 1);
    CHECK(run("check " + s.path("absent.json"), s.path("out.json")) == 1);
}

TEST_CASE("check: measure that does not sum to one exits 1") {
    Scratch s;
    std::ofstream(s.path("p.json")) << R"({
      "n": 3, "d": 2,
      "Q": [[0.5,0],[0,0],[0,0],[0.5,0]],
      "mu": [{"subset": [1,2], "weight": 0.5}],
      "states": [{"subset": [1,2], "amplitudes": [[1,0],[0,0],[0,0],[0,0]]}]
    })";
    CHECK(run("check " + s.path("p.json"), s.path("out.json")) == 1);
}

TEST_CASE("spectrum: csv rows for both operators") {
    Scratch s;
    REQUIRE(run("reproduce --no-timestamp --emit-problem " + s.path("problem.json"),
                s.path("r.json")) == 0);
    REQUIRE(run("spectrum " + s.path("problem.json") + " --no-timestamp --format csv",
                s.path("spec.csv")) == 0);
    const std::string csv = slurp(s.path("spec.csv"));
    CHECK(csv.find("operator_spectrum,1,") != std::string::npos);
    CHECK(csv.find("target_spectrum,8,") != std::string::npos);
}

TEST_CASE("verify-prop: a small campaign passes with exit 0") {
    Scratch s;
    const int rc = run("verify-prop --trials 60 --seed 1 --no-timestamp", s.path("v.json"));
    CHECK(rc == 0);
    const nlohmann::json j = nlohmann::json::parse(slurp(s.path("v.json")));
    CHECK(j.at("all_pass") == true);
    CHECK(j.at("checks").at("final_majorization").at("failures") == 0);
}

TEST_CASE("search: free mode emits a violating problem file, exit 2") {
    Scratch s;
    const int rc = run("search --mode free --restarts 3 --iters 250 --seed 11 --no-timestamp"
                       " --out " + s.path("winner.json"),
                       s.path("search.json"));
    CHECK(rc == 2);
    const nlohmann::json j = nlohmann::json::parse(slurp(s.path("search.json")));
    CHECK(j.at("verdict") == "violation_found");
    // the emitted file re-checks as a violation: the verdicts agree
    CHECK(run("check " + s.path("winner.json"), s.path("check.json")) == 2);
}

TEST_CASE("search: compatible mode exits 0") {
    Scratch s;
    const int rc = run("search --mode compatible --restarts 2 --iters 150 --seed 3 --no-timestamp",
                       s.path("search.json"));
    CHECK(rc == 0);
    const nlohmann::json j = nlohmann::json::parse(slurp(s.path("search.json")));
    CHECK(j.at("verdict") == "none_found");
}

TEST_CASE("search: single party with all weight on its only subset exits 0") {
    Scratch s;
    std::ofstream(s.path("mu.json")) << R"([{"subset": [1], "weight": 1.0}])";
    const int rc = run("search --mode free --n 1 --restarts 2 --iters 100 --no-timestamp --mu " +
                           s.path("mu.json"),
                       s.path("search.json"));
    CHECK(rc == 0);
}

TEST_CASE("search: n != 3 without a measure exits 1") {
    Scratch s;
    CHECK(run("search --n 4 --restarts 1 --iters 10", s.path("out.json")) == 1);
}

TEST_CASE("SPIN_ALIGN_THREADS changes nothing but the wall clock") {
    Scratch s;
    REQUIRE(run("verify-prop --trials 40 --seed 5 --no-timestamp", s.path("one.json")) == 0);
    const std::string cmd = std::string("SPIN_ALIGN_THREADS=4 ") + SPIN_ALIGN_CLI +
                            " verify-prop --trials 40 --seed 5 --no-timestamp > " +
                            s.path("four.json") + " 2>/dev/null";
    REQUIRE(WEXITSTATUS(std::system(cmd.c_str())) == 0);
    CHECK(slurp(s.path("one.json")) == slurp(s.path("four.json")));
}

TEST_CASE("usage errors exit 1") {
    Scratch s;
    CHECK(run("no-such-command", s.path("out.json")) == 1);
    CHECK(run("reproduce --format yaml", s.path("out.json")) == 1);
    CHECK(run("", s.path("out.json")) == 1);
}
