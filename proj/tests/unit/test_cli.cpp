#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "wlab/body_io.hpp"
#include "wlab/cli.hpp"
#include "wlab/error.hpp"
#include "wlab/parallel.hpp"

using namespace wlab;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "wlab_cli_tests";
    fs::create_directories(dir);
    return dir / name;
}

int invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "wlab");
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    return cli::main(static_cast<int>(argv.size()), argv.data());
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

fs::path square_file() {
    const fs::path p = scratch("square.json");
    write_body(p, Polygon2::from_ccw({{-1, -1}, {1, -1}, {1, 1}, {-1, 1}}));
    return p;
}

}  // namespace

TEST_CASE("run writes CSV with a seed column") {
    cli::ExperimentConfig c;
    c.command = cli::Command::VerifyMain;
    c.generator = "polygon2";
    c.count = 20;
    c.seed = 9;
    std::ostringstream out, log;
    CHECK(cli::run(c, out, log) == 0);
    const std::string csv = out.str();
    CHECK(first_line(csv) == "index,kind,n,lambda,bound,margin,deficit,holds,seed");
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 21);
}

TEST_CASE("verify-main is deterministic across job counts") {
    const fs::path a = scratch("a.csv"), b = scratch("b.csv");
    CHECK(invoke({"verify-main", "--generate", "polygon2", "--count", "200", "--seed", "42", "--jobs", "1", "--out", a.string()}) == 0);
    CHECK(invoke({"verify-main", "--generate", "polygon2", "--count", "200", "--seed", "42", "--jobs", "4", "--out", b.string()}) == 0);
    CHECK(slurp(a) == slurp(b));
    const fs::path c = scratch("c.csv");
    CHECK(invoke({"verify-main", "--generate", "polygon2", "--count", "200", "--seed", "43", "--out", c.string()}) == 0);
    CHECK(slurp(a) != slurp(c));
}

TEST_CASE("functionals on a body file in both formats") {
    const fs::path body = square_file(), csv = scratch("f.csv"), js = scratch("f.json");
    CHECK(invoke({"functionals", "--body", body.string(), "--out", csv.string()}) == 0);
    CHECK(first_line(slurp(csv)).find("seed") != std::string::npos);
    CHECK(invoke({"functionals", "--body", body.string(), "--format", "json", "--out", js.string()}) == 0);
    const auto j = nlohmann::json::parse(slurp(js));
    CHECK(j.contains("seed"));
    CHECK(j["bodies"].size() == 1);
}

TEST_CASE("flow, crop, steklov and wentzell headers") {
    const fs::path body = square_file();
    const fs::path f = scratch("flow.csv"), k = scratch("crop.csv"), s = scratch("st.csv"), w = scratch("we.csv");
    CHECK(invoke({"flow-imcf", "--ellipse", "0.5,2", "--T", "0.1", "--out", f.string()}) == 0);
    CHECK(first_line(slurp(f)) == "t,V,P,W,lambda,excess,rmax,seed");
    CHECK(invoke({"crop", "--body", body.string(), "--eps", "0.1,0.05", "--out", k.string()}) == 0);
    CHECK(first_line(slurp(k)) == "body_id,eps,dV,dP,dW,dlam_actual,dlam_predicted,ratio,residual,seed");
    CHECK(invoke({"steklov", "--body", body.string(), "--refine", "2", "--csv", s.string()}) == 0);
    CHECK(first_line(slurp(s)).find("seed") != std::string::npos);
    CHECK(invoke({"wentzell", "--disk", "--refine", "3", "--beta", "0.1,0.5", "--csv", w.string()}) == 0);
    const std::string we = slurp(w);
    CHECK(first_line(we).find("seed") != std::string::npos);
    CHECK(std::count(we.begin(), we.end(), '\n') == 3);
}

TEST_CASE("exit codes") {
    const fs::path out = scratch("x.csv");
    CHECK(invoke({"functionals", "--body", "/nonexistent/body.json", "--out", out.string()}) == 2);
    CHECK(invoke({"no-such-command"}) == 2);
    CHECK(invoke({"verify-main", "--generate", "hexagon3", "--out", out.string()}) == 2);
    CHECK(invoke({"wentzell", "--disk", "--beta", "-1", "--csv", out.string()}) == 2);
    CHECK(invoke({"crop", "--body", square_file().string(), "--eps", "5", "--out", out.string()}) == 2);
    CHECK(invoke({"reproduce", "no-such-target", "--out", out.string()}) == 2);
    CHECK(invoke({"functionals", "--body", square_file().string(), "--out", "/nonexistent/dir/x.csv"}) == 2);
}

TEST_CASE("reproduce prints PASS lines") {
    cli::ExperimentConfig c;
    c.command = cli::Command::Reproduce;
    c.target = "cardioid";
    std::ostringstream out, log;
    CHECK(cli::run(c, out, log) == 0);
    CHECK(first_line(out.str()) == "quantity,value");
    CHECK(log.str().find("PASS") != std::string::npos);
    CHECK(log.str().find("FAIL") == std::string::npos);
}

TEST_CASE("job resolution and parallel map") {
    CHECK(resolve_jobs(3) == 3);
    ::setenv("WEINSTOCK_LAB_JOBS", "5", 1);
    CHECK(resolve_jobs(0) == 5);
    ::setenv("WEINSTOCK_LAB_JOBS", "zero", 1);
    CHECK_THROWS_AS(resolve_jobs(0), Error);
    ::unsetenv("WEINSTOCK_LAB_JOBS");
    CHECK(resolve_jobs(0) >= 1);
    CHECK_THROWS_AS(resolve_jobs(-2), Error);

    const auto squares = parallel_map(1000, 7, [](std::size_t i) { return i * i; });
    for (std::size_t i = 0; i < squares.size(); ++i) CHECK(squares[i] == i * i);
    CHECK_THROWS_AS(parallel_map(50, 4,
                                 [](std::size_t i) {
                                     if (i == 31) throw Error(ErrorKind::BadConfig, "boom");
                                     return i;
                                 }),
                    Error);
}
