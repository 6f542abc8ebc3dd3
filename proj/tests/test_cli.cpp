#include <gtest/gtest.h>

#include <sys/wait.h>

#include <unistd.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#ifndef WINSOR_BOUNDS_EXE
#error "WINSOR_BOUNDS_EXE must be defined"
#endif

namespace {

struct CliRun {
    int code = -1;
    std::string out;
};

CliRun run(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + " '" WINSOR_BOUNDS_EXE "' " + args + " 2>/dev/null";
    CliRun r;
    FILE* pipe = ::popen(cmd.c_str(), "r");
    if (pipe == nullptr) return r;
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
    const int status = ::pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string value_of(const std::string& out, const std::string& key) {
    std::istringstream is(out);
    std::string field;
    while (is >> field) {
        if (field.rfind(key + "=", 0) == 0) return field.substr(key.size() + 1);
    }
    return {};
}

}  // namespace

TEST(Cli, UniversalBound) {
    const CliRun r = run("bound --kind universal-winsor --sigma 1");
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 1);  // one record line
    EXPECT_EQ(value_of(r.out, "kind"), "universal-winsor");
    EXPECT_EQ(value_of(r.out, "bound").rfind("0.878", 0), 0u) << r.out;
    EXPECT_FALSE(value_of(r.out, "c_sigma").empty());
}

TEST(Cli, FixedAndTrunc) {
    const CliRun w = run("bound --kind fixed-c-winsor --c 1 --sigma 1");
    ASSERT_EQ(w.code, 0);
    EXPECT_EQ(value_of(w.out, "c"), "1");
    const CliRun t = run("bound --kind trunc --c 1 --sigma 0.5");
    ASSERT_EQ(t.code, 0);
    EXPECT_EQ(value_of(t.out, "branch"), "small-sigma");
    EXPECT_EQ(value_of(t.out, "bound").rfind("0.823", 0), 0u) << t.out;
}

TEST(Cli, ValidationErrorsExitTwo) {
    EXPECT_EQ(run("bound --kind trunc --sigma 1").code, 2);  // missing --c
    EXPECT_EQ(run("bound --kind fixed-c-winsor --c -1 --sigma 1").code, 2);
    EXPECT_EQ(run("bound --kind bogus --sigma 1").code, 2);
    EXPECT_EQ(run("bound --kind universal-winsor --sigma 1e300").code, 2);
    EXPECT_EQ(run("nosuchcommand").code, 2);
    EXPECT_EQ(run("verify --suite nope").code, 2);
    EXPECT_EQ(run("sweep --kind trunc --sigma-min 10 --sigma-max 1 --c 1").code, 2);
}

TEST(Cli, ToleranceEnvironment) {
    EXPECT_EQ(run("bound --kind universal-winsor --sigma 1", "WINSOR_BOUNDS_TOL=abc").code, 2);
    EXPECT_EQ(run("bound --kind universal-winsor --sigma 1", "WINSOR_BOUNDS_TOL=-1").code, 2);
    EXPECT_EQ(run("bound --kind universal-winsor --sigma 1", "WINSOR_BOUNDS_TOL=1e-13").code, 0);
}

TEST(Cli, SweepToStdoutAndFile) {
    const CliRun r = run("sweep --kind fixed-c-winsor --c 1,2 --points 4");
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(r.out.rfind("sigma,c=1,c=2\n", 0), 0u);
    EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 5);

    const std::filesystem::path p =
        std::filesystem::temp_directory_path() / ("wb_cli_" + std::to_string(::getpid()) + ".csv");
    ASSERT_EQ(run("sweep --kind universal-winsor --points 3 --out '" + p.string() + "'").code, 0);
    std::ifstream is(p);
    std::stringstream ss;
    ss << is.rdbuf();
    EXPECT_EQ(ss.str().rfind("sigma,L_W\n", 0), 0u);
    std::filesystem::remove(p);
}

TEST(Cli, Constants) {
    const CliRun r = run("constants");
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(value_of(r.out, "t_star").rfind("0.2031", 0), 0u) << r.out;
    EXPECT_EQ(value_of(r.out, "minus_ln_t_star").rfind("1.5936", 0), 0u) << r.out;
}

TEST(Cli, CollapseDemoSingleStep) {
    const CliRun r = run("collapse-demo --steps 1");
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 2) << r.out;  // header + one row
    EXPECT_EQ(run("collapse-demo --steps 0").code, 2);
}

TEST(Cli, VerifySuite) {
    const CliRun r = run("verify --suite roots");
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
}

TEST(Cli, Help) { EXPECT_EQ(run("--help").code, 0); }
