#include "isoparam/io.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

using namespace isoparam;

namespace {

std::string tmp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / ("isoparam_test_" + name)).string();
}

int run(const std::string& args, std::string* out = nullptr, const std::string& env = {}) {
    std::string path = tmp_path("stdout.json");
    std::string cmd = env + " " + ISOPARAM_CLI + std::string(" ") + args + " > " + path + " 2>/dev/null";
    int status = std::system(cmd.c_str());
    if (out) {
        std::ifstream in(path);
        std::stringstream ss;
        ss << in.rdbuf();
        *out = ss.str();
    }
    return WEXITSTATUS(status);
}

}  // namespace

TEST(Io, SystemRoundTrip) {
    CliffordSystem sys = fkm_system(3, 2);
    std::string path = tmp_path("sys.json");
    write_json_file(path, system_to_json(sys));
    CliffordSystem back = system_from_json(read_json_file(path));
    EXPECT_EQ(back.half_dim, 8);
    EXPECT_TRUE(back.exact);
    ASSERT_EQ(back.operators.size(), sys.operators.size());
    for (std::size_t i = 0; i < sys.operators.size(); ++i) EXPECT_EQ(max_abs(back.operators[i] - sys.operators[i]), 0.0);
}

TEST(Io, ParseErrorCarriesOffset) {
    std::string path = tmp_path("bad.json");
    std::ofstream(path) << "{\"half_dim\": 2, \"operators\": [[1,,2]]}";
    try {
        read_json_file(path);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ParseError);
        EXPECT_NE(std::string(e.what()).find("byte offset 33"), std::string::npos) << e.what();
    }
}

TEST(Io, ShapeChecks) {
    Json j = system_to_json(fkm_system(2, 2));
    j["half_dim"] = 3;
    EXPECT_THROW(system_from_json(j), Error);
    Json k = system_to_json(fkm_system(2, 2));
    k["operators"][0][1] = Json::array({1.0});
    EXPECT_THROW(system_from_json(k), Error);
}

TEST(Cli, EnumeratePrintsOpenPairs) {
    std::string out;
    ASSERT_EQ(run("enumerate --max-m1 16", &out), 0);
    Json j = Json::parse(out);
    Json expected = Json::parse("[[3,4],[4,7],[5,10],[6,9],[7,8],[7,16],[8,15],[9,22],[10,21]]");
    EXPECT_EQ(j["result"]["enumeration"]["open_cases"], expected);
    EXPECT_EQ(j["provenance"]["version"], kVersion);
}

TEST(Cli, VerifyPasses) {
    std::string out;
    EXPECT_EQ(run("verify --m 3 --k 2 --seed 7 --tol 1e-9", &out), 0);
    Json j = Json::parse(out);
    EXPECT_EQ(j["provenance"]["seed"], 7);
    EXPECT_EQ(j["provenance"]["tol"], 1e-9);
    EXPECT_TRUE(j["pass"].get<bool>());
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run("construct --m 2 --k 1"), 2);
    EXPECT_EQ(run("construct --m 3 --l 6"), 2);
    EXPECT_EQ(run("verify --m 3 --k 2 --tol 0"), 1);
    EXPECT_EQ(run("bogus"), 2);
    std::string bad = tmp_path("cli_bad.json");
    std::ofstream(bad) << "{\"half_dim\": ";
    std::string out;
    EXPECT_EQ(run("verify --in " + bad, &out), 2);
    EXPECT_NE(out.find("ParseError"), std::string::npos);
}

TEST(Cli, ConstructThenVerifyFromFile) {
    std::string path = tmp_path("cli_sys.json");
    ASSERT_EQ(run("construct --m 4 --k 2 --out " + path), 0);
    EXPECT_EQ(run("verify --in " + path + " --samples 50"), 0);
    EXPECT_EQ(run("reconstruct --in " + path + " --samples 3"), 0);
}

TEST(Cli, DeterministicAcrossThreadCounts) {
    std::string a, b, c;
    run("quadforms --m 3 --k 2 --seed 5 --samples 300", &a, "ISOPARAM_THREADS=1");
    run("quadforms --m 3 --k 2 --seed 5 --samples 300", &b, "ISOPARAM_THREADS=3");
    run("quadforms --m 3 --k 2 --seed 5 --samples 300", &c, "ISOPARAM_THREADS=1");
    EXPECT_FALSE(a.empty());
    EXPECT_EQ(a, b);
    EXPECT_EQ(a, c);
}
