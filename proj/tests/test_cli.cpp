#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "selfaffine/dissection_io.hpp"

#ifndef CLI_BINARY_PATH
#error "CLI_BINARY_PATH must be defined"
#endif

using namespace selfaffine;

namespace {

namespace fs = std::filesystem;

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

fs::path scratch_dir() {
    static fs::path dir = [] {
        fs::path p = fs::temp_directory_path() / "selfaffine_cli_tests";
        fs::create_directories(p);
        return p;
    }();
    return dir;
}

RunResult run_cli(const std::string& args) {
    fs::path out = scratch_dir() / "stdout.txt";
    fs::path err = scratch_dir() / "stderr.txt";
    std::string cmd = std::string(CLI_BINARY_PATH) + " " + args + " > " + out.string() +
                      " 2> " + err.string();
    int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WEXITSTATUS(status);
    auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

std::string slurp_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("exit codes follow the contract") {
    CHECK(run_cli("member --x 0.5 --y 0.75").exit_code == 0);
    CHECK(run_cli("member --x 0.2 --y 0.3").exit_code == 1);   // invalid params
    CHECK(run_cli("member --x 0.5").exit_code == 64);          // missing flag
    CHECK(run_cli("bogus-subcommand").exit_code == 64);
    CHECK(run_cli("member --x 0.5 --y 0.75 --frobnicate").exit_code == 64);
    CHECK(run_cli("").exit_code == 64);  // a subcommand is required
    CHECK(run_cli("--help").exit_code == 0);
}

TEST_CASE("member reports family C on the parabola") {
    auto r = run_cli("member --x 0.5 --y 0.75");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"families\":[\"C\"]") != std::string::npos);

    auto r8 = run_cli("member --x 0.5 --y 0.719223593595584");
    CHECK(r8.out.find("\"S8\"") != std::string::npos);
}

TEST_CASE("normalize emits the canonical pair and the input region") {
    auto r = run_cli("normalize --x 1.5 --y 0.75");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"region\":\"Pbar3prime\"") != std::string::npos);
    CHECK(r.out.find("0.6666666666666") != std::string::npos);
    CHECK(r.out.find("0.8333333333333") != std::string::npos);
}

TEST_CASE("table1 CSV has 13 rows matching the printed decimals") {
    auto r = run_cli("table1 --format csv");
    CHECK(r.exit_code == 0);
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    CHECK(line == "id,eq1,eq2,x,y,closed_form");
    int rows = 0;
    const double printed[13][2] = {
        {0.54368, 0.83928}, {0.55706, 0.85490}, {0.54660, 0.72669}, {0.50678, 0.67567},
        {0.47759, 0.81530}, {0.25805, 0.84781}, {0.58750, 0.78257}, {0.5, 0.71922},
        {0.59100, 0.85403}, {0.41803, 0.71831}, {0.33133, 0.78783}, {0.4, 0.66666},
        {0.59717, 0.87586}};
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        ++rows;
        std::size_t last_comma = line.rfind(',');
        std::string rest = line.substr(0, last_comma);
        std::size_t y_comma = rest.rfind(',');
        std::string rest2 = rest.substr(0, y_comma);
        std::size_t x_comma = rest2.rfind(',');
        double x = std::stod(rest2.substr(x_comma + 1));
        double y = std::stod(rest.substr(y_comma + 1));
        CHECK(std::fabs(x - printed[rows - 1][0]) < 1e-5);
        CHECK(std::fabs(y - printed[rows - 1][1]) < 1e-5);
    }
    CHECK(rows == 13);
    // Closed forms present on rows 5, 8, 12.
    CHECK(r.out.find("sqrt(2)") != std::string::npos);
    CHECK(r.out.find("sqrt(17)") != std::string::npos);
    CHECK(r.out.find("(2/5; 2/3)") != std::string::npos);
}

TEST_CASE("construct, verify and render round-trip through files") {
    fs::path dj = scratch_dir() / "trapezoid_b.json";
    auto rc = run_cli("construct trapezoid-b --z 0.5 --out " + dj.string());
    REQUIRE(rc.exit_code == 0);

    auto rv = run_cli("verify --in " + dj.string());
    CHECK(rv.exit_code == 0);
    CHECK(rv.out.find("\"passed\":true") != std::string::npos);

    // Re-emitting the parsed dissection reproduces the file bytes.
    std::string bytes = slurp_file(dj);
    Dissection d = dissection_from_json(bytes);
    CHECK(dissection_to_json(d) == bytes);

    fs::path svg = scratch_dir() / "trapezoid_b.svg";
    auto rr = run_cli("render --in " + dj.string() + " --labels --out " + svg.string());
    CHECK(rr.exit_code == 0);
    std::string svg_bytes = slurp_file(svg);
    CHECK(svg_bytes.rfind("<svg", 0) == 0);
    CHECK(svg_bytes.find("<text") != std::string::npos);

    // A corrupted dissection file fails verification with exit code 2.
    Dissection bad = d;
    bad.pieces[0].quad.v[2].x += 0.02;
    fs::path badj = scratch_dir() / "bad.json";
    std::ofstream(badj) << dissection_to_json(bad);
    auto rbad = run_cli("verify --in " + badj.string());
    CHECK(rbad.exit_code == 2);
    CHECK(rbad.out.find("\"passed\":false") != std::string::npos);

    // Unreadable input is a domain error.
    CHECK(run_cli("verify --in /nonexistent/nope.json").exit_code == 1);
}

TEST_CASE("construct rejects invalid parameters with exit 1") {
    CHECK(run_cli("construct trapezoid-c --z 0.9999999").exit_code == 1);
    CHECK(run_cli("construct trapezoid-a --z 0.5 --weights 0.5 0.5 0.5").exit_code == 1);
}

TEST_CASE("sample emits CSV and JSON") {
    auto rc = run_cli("sample --curve C --n 3 --format csv");
    CHECK(rc.exit_code == 0);
    CHECK(rc.out.find("x,y") == 0);
    CHECK(rc.out.find("0.25,0.8125") != std::string::npos);
    auto rj = run_cli("sample --curve B1 --n 2 --format json");
    CHECK(rj.exit_code == 0);
    CHECK(rj.out.rfind("[[", 0) == 0);
}

TEST_CASE("tiny sweeps are deterministic across runs and job counts") {
    fs::path c1 = scratch_dir() / "cat1.json";
    fs::path c2 = scratch_dir() / "cat2.json";
    REQUIRE(run_cli("sweep --template c --seed 3 --starts 4 --jobs 2 --out " + c1.string())
                .exit_code == 0);
    REQUIRE(run_cli("sweep --template c --seed 3 --starts 4 --jobs 1 --out " + c2.string())
                .exit_code == 0);
    CHECK(slurp_file(c1) == slurp_file(c2));

    // A starved sweep misses solutions: the reproduction report must fail
    // its census check and name it.
    fs::path rep = scratch_dir() / "report.json";
    auto rr = run_cli("report --catalogue " + c1.string() + " --out " + rep.string());
    CHECK(rr.exit_code == 2);
    std::string rep_bytes = slurp_file(rep);
    CHECK(rep_bytes.find("\"name\":\"permutation census\",\"passed\":false") !=
          std::string::npos);
    CHECK(run_cli("report --catalogue /nonexistent/cat.json").exit_code == 1);
}
