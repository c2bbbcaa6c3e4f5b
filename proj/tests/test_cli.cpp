#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <unistd.h>
#include <sys/wait.h>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "framelab/frame.hpp"
#include "framelab/io.hpp"

using namespace framelab;
namespace fs = std::filesystem;

namespace {

struct RunResult {
    int exit_code;
    std::string output;  // stdout + stderr
};

const std::string& cli_path() {
    static const std::string path = [] {
        const char* env = std::getenv("FRAMELAB_CLI");
        REQUIRE_MESSAGE(env != nullptr, "FRAMELAB_CLI must point at the framelab binary");
        return std::string(env);
    }();
    return path;
}

RunResult run(const std::string& args) {
    const std::string command = cli_path() + " " + args + " 2>&1";
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string output;
    char buf[512];
    while (std::size_t got = std::fread(buf, 1, sizeof(buf), pipe)) output.append(buf, got);
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, output};
}

const fs::path& work_dir() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() /
                     ("framelab_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// first number following "label = " on the matching line
double printed_value(const std::string& output, const std::string& label) {
    const std::size_t at = output.find(label);
    REQUIRE(at != std::string::npos);
    const std::size_t eq = output.find('=', at);
    REQUIRE(eq != std::string::npos);
    return std::stod(output.substr(eq + 1));
}

}  // namespace

TEST_CASE("frame gen: explicit vectors, summary, output file") {
    const fs::path out = work_dir() / "example.json";
    const RunResult r = run("frame gen --kind explicit --vectors \"1,0;0,1;1,1\" -o " +
                            out.string() + " --no-timestamp");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("n = 2, N = 3") != std::string::npos);
    CHECK(r.output.find("tight: no") != std::string::npos);

    const Frame frame = load_frame(out.string());
    CHECK(frame.dim() == 2);
    CHECK(frame.count() == 3);
    CHECK(frame.vectors()(2, 0) == cxd{1.0, 0.0});
}

TEST_CASE("frame gen: deterministic random output, byte for byte") {
    const fs::path a = work_dir() / "rand_a.json";
    const fs::path b = work_dir() / "rand_b.json";
    CHECK(run("frame gen --kind random --n 3 --N 7 --seed 42 -o " + a.string() +
              " --no-timestamp")
              .exit_code == 0);
    CHECK(run("frame gen --kind random --n 3 --N 7 --seed 42 -o " + b.string() +
              " --no-timestamp")
              .exit_code == 0);
    CHECK(slurp(a) == slurp(b));
    // frame JSON round-trips bit-exactly through 17-digit decimals
    CHECK(max_abs_diff(load_frame(a.string()).vectors(), random_frame(7, 3, 42).vectors()) ==
          0.0);
}

TEST_CASE("frame gen: invalid arguments exit with 2") {
    CHECK(run("frame gen --kind bogus").exit_code == 2);
    CHECK(run("frame gen --kind harmonic --n 3 --N 2").exit_code == 2);
    CHECK(run("frame gen").exit_code == 2);
}

TEST_CASE("frame info") {
    const fs::path mb = work_dir() / "mb.json";
    REQUIRE(run("frame gen --kind mb -o " + mb.string() + " --no-timestamp").exit_code == 0);
    const RunResult r = run("frame info " + mb.string());
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("n = 2, N = 3") != std::string::npos);
    CHECK(r.output.find("tight: yes") != std::string::npos);
    CHECK(r.output.find("equiangular: yes") != std::string::npos);
    CHECK(run("frame info " + (work_dir() / "missing.json").string()).exit_code == 3);

    // malformed and schema-violating files are I/O failures
    const fs::path garbled = work_dir() / "garbled.json";
    save_text(garbled.string(), "{ this is not json");
    CHECK(run("frame info " + garbled.string()).exit_code == 3);
    const fs::path wrong_schema = work_dir() / "wrong_schema.json";
    save_text(wrong_schema.string(), "{\"n\": 2, \"N\": 3}");
    CHECK(run("frame info " + wrong_schema.string()).exit_code == 3);
}

TEST_CASE("ae on the worked example") {
    const fs::path ex = work_dir() / "ex.json";
    REQUIRE(run("frame gen --kind explicit --vectors \"1,0;0,1;1,1\" -o " + ex.string() +
                " --no-timestamp")
                .exit_code == 0);

    const RunResult spec = run("ae " + ex.string() + " --canonical --measure spec --m 1 --p 2");
    CHECK(spec.exit_code == 0);
    CHECK(std::abs(printed_value(spec.output, "average") - 2.0 / 3.0) <= 1e-12);
    CHECK(std::abs(printed_value(spec.output, "lower bound n/N") - 2.0 / 3.0) <= 1e-12);

    const RunResult fro = run("ae " + ex.string() + " --canonical --measure fro --m 1 --p 2");
    CHECK(std::abs(printed_value(fro.output, "average") - std::sqrt(14.0 / 27.0)) <= 1e-12);

    const RunResult full = run("ae " + ex.string() + " --canonical --measure fro --m 3 --p 2");
    CHECK(std::abs(printed_value(full.output, "average") - std::sqrt(2.0)) <= 1e-12);
}

TEST_CASE("ae writes per-pattern CSV with 1-based patterns") {
    const fs::path ex = work_dir() / "ex2.json";
    const fs::path csv = work_dir() / "report.csv";
    REQUIRE(run("frame gen --kind harmonic --n 2 --N 4 -o " + ex.string() + " --no-timestamp")
                .exit_code == 0);
    const RunResult r = run("ae " + ex.string() +
                            " --canonical --measure fro --m 2 --p 2 --no-timestamp --out-csv " +
                            csv.string());
    CHECK(r.exit_code == 0);
    const std::string text = slurp(csv);
    CHECK(text.find("pattern,value\n") != std::string::npos);
    CHECK(text.find("1;2,") != std::string::npos);
    CHECK(text.find("3;4,") != std::string::npos);
    CHECK(text.find("0;") == std::string::npos);  // nothing 0-based
    // six rows for C(4, 2)
    std::size_t rows = 0;
    for (char c : text.substr(text.find("pattern,value"))) rows += c == '\n';
    CHECK(rows == 7);
}

TEST_CASE("ae argument and budget failures") {
    const fs::path ex = work_dir() / "ex3.json";
    REQUIRE(run("frame gen --kind harmonic --n 2 --N 5 -o " + ex.string() + " --no-timestamp")
                .exit_code == 0);
    CHECK(run("ae " + ex.string() + " --canonical --measure fro --p 1.0").exit_code == 2);
    CHECK(run("ae " + ex.string() + " --canonical --measure fro --p 0.5").exit_code == 2);
    CHECK(run("ae " + ex.string() + " --measure fro").exit_code == 2);  // no dual choice
    CHECK(run("ae " + ex.string() + " --canonical --measure oops").exit_code == 2);
    CHECK(run("ae " + ex.string() + " --canonical --measure fro --m 2 --cap 5").exit_code == 5);
    CHECK(run("ae " + ex.string() + " --canonical --measure fro --m 9").exit_code == 2);
}

TEST_CASE("dual canonical, dual verify and the not-a-dual exit code") {
    const fs::path ex = work_dir() / "ex4.json";
    const fs::path dual = work_dir() / "dual.json";
    REQUIRE(run("frame gen --kind explicit --vectors \"1,0;0,1;1,1\" -o " + ex.string() +
                " --no-timestamp")
                .exit_code == 0);
    CHECK(run("dual canonical " + ex.string() + " -o " + dual.string() + " --no-timestamp")
              .exit_code == 0);
    CHECK(run("dual verify " + ex.string() + " " + dual.string()).exit_code == 0);

    // corrupt the dual by scaling it down; the residual is then visible
    Frame loaded = load_frame(dual.string());
    const Frame corrupted = Frame::from_vectors(loaded.vectors() * cxd{0.95, 0.0});
    const fs::path bad = work_dir() / "bad_dual.json";
    save_text(bad.string(), frame_to_json(corrupted, Meta{"test", std::nullopt}));
    CHECK(run("dual verify " + ex.string() + " " + bad.string()).exit_code == 4);
    CHECK(run("ae " + ex.string() + " --dual " + bad.string() + " --measure fro").exit_code ==
          4);
}

TEST_CASE("dual from-param maps the worked example's optimal shift") {
    const fs::path ex = work_dir() / "ex5.json";
    const fs::path param = work_dir() / "param.json";
    const fs::path dual = work_dir() / "opt_dual.json";
    REQUIRE(run("frame gen --kind explicit --vectors \"1,0;0,1;1,1\" -o " + ex.string() +
                " --no-timestamp")
                .exit_code == 0);
    CMatrix b(1, 2);
    b(0, 0) = std::sqrt(3.0) / 12.0;
    b(0, 1) = std::sqrt(3.0) / 12.0;
    save_text(param.string(), parameter_to_json(b, Meta{"test", std::nullopt}));
    CHECK(run("dual from-param " + ex.string() + " " + param.string() + " -o " + dual.string() +
              " --no-timestamp")
              .exit_code == 0);
    const Frame mapped = load_frame(dual.string());
    CHECK(std::abs(mapped.vectors()(0, 0) - cxd{0.75, 0.0}) <= 1e-12);
    CHECK(std::abs(mapped.vectors()(2, 1) - cxd{0.25, 0.0}) <= 1e-12);

    // a parameter of the wrong shape is a usage error
    const fs::path bad_param = work_dir() / "bad_param.json";
    save_text(bad_param.string(), parameter_to_json(CMatrix(2, 2), Meta{"test", std::nullopt}));
    CHECK(run("dual from-param " + ex.string() + " " + bad_param.string()).exit_code == 2);
}

TEST_CASE("ae --worst-case prints the max over patterns") {
    const fs::path ex = work_dir() / "ex_wc.json";
    REQUIRE(run("frame gen --kind explicit --vectors \"1,0;0,1;1,1\" -o " + ex.string() +
                " --no-timestamp")
                .exit_code == 0);
    const RunResult r =
        run("ae " + ex.string() + " --canonical --measure fro --m 1 --p 2 --worst-case");
    CHECK(r.exit_code == 0);
    // max_i ||f_i|| ||g_i|| = sqrt(5)/3
    CHECK(std::abs(printed_value(r.output, "worst case") - std::sqrt(5.0) / 3.0) <= 1e-12);
}

TEST_CASE("optimize: closed form on the worked example") {
    const fs::path ex = work_dir() / "ex6.json";
    const fs::path dual = work_dir() / "best.json";
    const fs::path trace = work_dir() / "trace.csv";
    REQUIRE(run("frame gen --kind explicit --vectors \"1,0;0,1;1,1\" -o " + ex.string() +
                " --no-timestamp")
                .exit_code == 0);
    const RunResult r = run("optimize " + ex.string() +
                            " --measure fro --m 1 --p 2 --method closed --no-timestamp "
                            "--out-dual " +
                            dual.string() + " --out-trace " + trace.string());
    CHECK(r.exit_code == 0);
    CHECK(std::abs(printed_value(r.output, "optimal value") - 1.0 / std::sqrt(2.0)) <= 1e-9);
    CHECK(std::abs(printed_value(r.output, "canonical value") - std::sqrt(14.0 / 27.0)) <=
          1e-9);
    const Frame best = load_frame(dual.string());
    CHECK(std::abs(best.vectors()(0, 0) - cxd{0.75, 0.0}) <= 1e-9);
    CHECK(slurp(trace).find("iter,value,step") != std::string::npos);
}

TEST_CASE("optimize: spectral descent lands on the canonical dual") {
    const fs::path ex = work_dir() / "ex7.json";
    REQUIRE(run("frame gen --kind explicit --vectors \"1,0;0,1;1,1\" -o " + ex.string() +
                " --no-timestamp")
                .exit_code == 0);
    const RunResult r =
        run("optimize " + ex.string() + " --measure spec --m 1 --p 2 --seed 5 --restarts 2");
    CHECK(r.exit_code == 0);
    CHECK(std::abs(printed_value(r.output, "optimal value") - 2.0 / 3.0) <= 1e-9);
    CHECK(r.output.find("lower_bound_attained") != std::string::npos);
}

TEST_CASE("optimize: nested mode runs end to end") {
    const fs::path ex = work_dir() / "ex_nested.json";
    REQUIRE(run("frame gen --kind explicit --vectors \"1,0;0,1;1,1\" -o " + ex.string() +
                " --no-timestamp")
                .exit_code == 0);
    const RunResult r = run("optimize " + ex.string() +
                            " --measure fro --m 2 --p 2 --nested --seed 4 --restarts 2 "
                            "--max-iters 150");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("optimal value") != std::string::npos);
}

TEST_CASE("optimize: identical seeds give byte-identical outputs") {
    const fs::path ex = work_dir() / "ex8.json";
    REQUIRE(run("frame gen --kind harmonic --n 2 --N 4 -o " + ex.string() + " --no-timestamp")
                .exit_code == 0);
    const fs::path a = work_dir() / "opt_a.json";
    const fs::path b = work_dir() / "opt_b.json";
    const std::string cmd = "optimize " + ex.string() +
                            " --measure fro --m 1 --p 3 --seed 11 --restarts 3 "
                            "--no-timestamp --out-json ";
    CHECK(run(cmd + a.string()).exit_code == 0);
    CHECK(run(cmd + b.string()).exit_code == 0);
    CHECK(slurp(a) == slurp(b));
}

TEST_CASE("verify: single checks, listings, unknown ids") {
    CHECK(run("verify worked-example").exit_code == 0);
    CHECK(run("verify --list").output.find("spectral-iff-one-uniform") != std::string::npos);
    CHECK(run("verify bogus-id").exit_code == 2);
    CHECK(run("verify negative-control").exit_code == 1);
    CHECK(run("verify").exit_code == 2);
}

TEST_CASE("complex components parse in explicit vectors") {
    const fs::path out = work_dir() / "complex.json";
    const RunResult r = run("frame gen --kind explicit --vectors \"1i,0;0,1;1+2i,1-1i\" -o " +
                            out.string() + " --no-timestamp");
    CHECK(r.exit_code == 0);
    const Frame frame = load_frame(out.string());
    CHECK(frame.vectors()(0, 0) == cxd{0.0, 1.0});
    CHECK(frame.vectors()(2, 0) == cxd{1.0, 2.0});
    CHECK(frame.vectors()(2, 1) == cxd{1.0, -1.0});
}
