// Runs the hypercong executable and checks the exit-code contract.
#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct Run {
    int status = -1;
    std::string out;
};

Run run(const std::string& args) {
    const std::string cmd = std::string(HYPERCONG_CLI_PATH) + " " + args + " 2>/dev/null";
    Run r;
    FILE* pipe = ::popen(cmd.c_str(), "r");
    if (pipe == nullptr) {
        return r;
    }
    char buf[4096];
    std::size_t got = 0;
    while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) {
        r.out.append(buf, got);
    }
    const int raw = ::pclose(pipe);
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return r;
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

TEST(Cli, Primes) {
    const auto r = run("primes 30");
    EXPECT_EQ(r.status, 0);
    EXPECT_EQ(r.out, "2\n3\n5\n7\n11\n13\n17\n19\n23\n29\n");
}

TEST(Cli, VerifyHolds) {
    const auto r = run("verify theorem1 --n 4 --q 1 --p 7");
    EXPECT_EQ(r.status, 0);
    EXPECT_NE(r.out.find("theorem1 n=4 q=1 p=7: holds"), std::string::npos) << r.out;
}

TEST(Cli, VerifyPreconditionIsConfigError) {
    EXPECT_EQ(run("verify theorem1 --n 3 --q 2 --p 11").status, 2);
    const auto r = run("verify theorem1 --n 3 --q 2 --p 11 --exploratory");
    EXPECT_EQ(r.status, 0);
    EXPECT_NE(r.out.find("hypothesis_violated"), std::string::npos);
}

TEST(Cli, UnknownCheckExitsTwo) {
    EXPECT_EQ(run("sweep --checks theorem9").status, 2);
    EXPECT_EQ(run("verify theorem9 --p 7").status, 2);
    EXPECT_EQ(run("sweep --bogus-flag").status, 2);
    EXPECT_EQ(run("sweep --checks theorem1 --format xml").status, 2);
}

TEST(Cli, SweepToFileWithConfigOverride) {
    const auto dir = std::filesystem::temp_directory_path() / "hypercong_cli_test";
    std::filesystem::create_directories(dir);
    const auto config = dir / "config.json";
    {
        std::ofstream out(config);
        out << R"({"checks": ["theorem1"], "n": "3..4", "q": "1..2", "p_max": 13, "format": "json"})";
    }
    const auto json_path = dir / "out.json";
    const auto csv_path = dir / "out.csv";
    EXPECT_EQ(run("sweep --config " + config.string() + " --out " + json_path.string()).status, 0);
    EXPECT_EQ(run("sweep --config " + config.string() + " --format csv --out " + csv_path.string()).status, 0);
    EXPECT_EQ(slurp(json_path).front(), '{');
    EXPECT_EQ(slurp(csv_path).rfind("check_id,", 0), 0U);
    std::filesystem::remove_all(dir);
}

TEST(Cli, MoritaCapEnvironment) {
    const auto r = run("sweep --checks dflst --n 3..3 --p-max 20 --format csv");
    EXPECT_EQ(r.status, 0);
    EXPECT_EQ(r.out.find("skipped"), std::string::npos);
    ::setenv("HYPERCONG_MORITA_CAP", "3000", 1);
    const auto capped = run("sweep --checks dflst --n 3..3 --p-max 20 --format csv");
    ::unsetenv("HYPERCONG_MORITA_CAP");
    EXPECT_EQ(capped.status, 0);
    EXPECT_NE(capped.out.find("skipped"), std::string::npos);
}

}  // namespace
