#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "nlohmann/json.hpp"

// End-to-end checks of the command line surface: exit codes, schema shape,
// frozen example outputs, and byte determinism for fixed (args, seed).

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    std::string cmd = std::string(PADICREP_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    EXPECT_NE(pipe, nullptr);
    std::string out;
    std::array<char, 4096> buf;
    size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
    int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::vector<std::string> tsv_lines(const std::string& out) {
    std::vector<std::string> lines;
    std::stringstream ss(out);
    std::string line;
    while (std::getline(ss, line))
        if (!line.empty()) lines.push_back(line);
    return lines;
}

std::string column(const std::string& line, int idx) {
    std::stringstream ss(line);
    std::string field;
    for (int i = 0; i <= idx; ++i)
        if (!std::getline(ss, field, '\t')) return "";
    return field;
}

using Json = nlohmann::json;

}  // namespace

TEST(CliReduce, LadderPointExample) {
    RunResult r = run_cli("reduce -p 5 -k 4 -L 0");
    ASSERT_EQ(r.exit_code, 0);
    Json j = Json::parse(r.out);
    EXPECT_EQ(j["branch"], "point");
    EXPECT_EQ(j["index"], 1);
    EXPECT_EQ(j["nu"], "0");
    EXPECT_EQ(j["descriptor"]["type"], "reducible");
    EXPECT_EQ(j["lambda"][0], 3);
    EXPECT_EQ(j["lambda"][1], 0);
    EXPECT_TRUE(j["det_check"].get<bool>());
}

TEST(CliReduce, IntervalExample) {
    RunResult r = run_cli("reduce -p 5 -k 4 -L 3/2");
    ASSERT_EQ(r.exit_code, 0);
    Json j = Json::parse(r.out);
    EXPECT_EQ(j["branch"], "interval");
    EXPECT_EQ(j["descriptor"]["type"], "irreducible");
    EXPECT_EQ(j["descriptor"]["omega2_exp"], 7);
    EXPECT_TRUE(j["det_check"].get<bool>());
}

TEST(CliReduce, OmittedBranchParameterMeansInfinite) {
    RunResult r = run_cli("reduce -p 5 -k 4");
    ASSERT_EQ(r.exit_code, 0);
    Json j = Json::parse(r.out);
    EXPECT_EQ(j["L"], "inf");
    EXPECT_EQ(j["nu"], "inf");
}

TEST(CliReduce, UsageErrors) {
    EXPECT_EQ(run_cli("reduce -p 5 -k 9").exit_code, 2);
    EXPECT_EQ(run_cli("reduce -p 6 -k 4").exit_code, 2);
    EXPECT_EQ(run_cli("reduce -p 3 -k 4").exit_code, 2);
    EXPECT_EQ(run_cli("reduce -p 5 -k 4 -L 1/0").exit_code, 2);
    EXPECT_EQ(run_cli("reduce -p 5 -k 4 -L abc").exit_code, 2);
    EXPECT_EQ(run_cli("bogus-subcommand").exit_code, 2);
}

TEST(CliScan, GridSweepAlternates) {
    RunResult r = run_cli("scan -p 5 -k 6 --nu-grid -2,-3/2,-1,-1/2,0,1/2,1 --format tsv");
    ASSERT_EQ(r.exit_code, 0);
    std::vector<std::string> lines = tsv_lines(r.out);
    ASSERT_EQ(lines.size(), 8u);
    const char* branch[] = {"interval", "interval", "point", "interval",
                            "point",    "interval", "interval"};
    const char* index[] = {"1", "1", "1", "2", "2", "3", "3"};
    for (int i = 0; i < 7; ++i) {
        EXPECT_EQ(column(lines[i + 1], 1), branch[i]) << "row " << i;
        EXPECT_EQ(column(lines[i + 1], 2), index[i]) << "row " << i;
        EXPECT_EQ(column(lines[i + 1], 4), "ok") << "row " << i;
    }
}

TEST(CliScan, EmptyGridYieldsHeaderOnly) {
    RunResult r = run_cli("scan -p 5 -k 6 --nu-grid \"\" --format tsv");
    ASSERT_EQ(r.exit_code, 0);
    EXPECT_EQ(tsv_lines(r.out).size(), 1u);
}

TEST(CliScan, JsonArrayShape) {
    RunResult r = run_cli("scan -p 5 -k 6 --nu-grid -2,-3/2,-1,-1/2,0,1/2,1");
    ASSERT_EQ(r.exit_code, 0);
    Json j = Json::parse(r.out);
    ASSERT_TRUE(j.is_array());
    ASSERT_EQ(j.size(), 7u);
    EXPECT_EQ(j[2]["branch"], "point");
    EXPECT_EQ(j[2]["descriptor"]["type"], "reducible");
    EXPECT_EQ(j[0]["descriptor"]["type"], "irreducible");
}

TEST(CliHecke, RegularCharacterVanishing) {
    RunResult r = run_cli("hecke-verify -p 5 -r 2 --trials 20 --seed 7");
    ASSERT_EQ(r.exit_code, 0);
    Json j = Json::parse(r.out);
    EXPECT_TRUE(j["all_pass"].get<bool>());
    bool saw_vanish = false;
    for (const auto& rel : j["relations"]) {
        EXPECT_TRUE(rel["pass"].get<bool>());
        if (rel["name"] == "lowering_raising_vanishes") saw_vanish = true;
    }
    EXPECT_TRUE(saw_vanish);
}

TEST(CliHecke, TrivialCharacterBraid) {
    RunResult r = run_cli("hecke-verify -p 5 -r 0 --trials 15 --seed 3");
    ASSERT_EQ(r.exit_code, 0);
    Json j = Json::parse(r.out);
    EXPECT_TRUE(j["all_pass"].get<bool>());
    std::vector<std::string> names;
    for (const auto& rel : j["relations"]) names.push_back(rel["name"]);
    EXPECT_NE(std::find(names.begin(), names.end(), "braid_contraction"), names.end());
    EXPECT_NE(std::find(names.begin(), names.end(), "composite_reversal"), names.end());
}

TEST(CliHecke, ExponentOutOfRange) {
    EXPECT_EQ(run_cli("hecke-verify -p 5 -r 5").exit_code, 2);
    EXPECT_EQ(run_cli("hecke-verify -p 5 -r -1").exit_code, 2);
}

TEST(CliLab, IntegerScaleReport) {
    RunResult r = run_cli("lab -p 5 -r 3 -n 3 -x -1");
    ASSERT_EQ(r.exit_code, 0);
    Json j = Json::parse(r.out);
    EXPECT_TRUE(j["all_pass"].get<bool>());
    ASSERT_EQ(j["entries"].size(), 15u);
    for (const auto& e : j["entries"]) EXPECT_TRUE(e["pass"].get<bool>());
}

TEST(CliLab, HalfIntegerScale) {
    RunResult r = run_cli("lab -p 7 -r 4 -n 4 -x -1/2");
    ASSERT_EQ(r.exit_code, 0);
    Json j = Json::parse(r.out);
    EXPECT_TRUE(j["all_pass"].get<bool>());
    EXPECT_EQ(j["x"], "-1/2");
}

TEST(CliLab, RejectsNarrowWitnessWindow) {
    EXPECT_EQ(run_cli("lab -p 5 -r 4 -n 2").exit_code, 2);
}

TEST(CliGeneral, ByteDeterminism) {
    std::string args = "hecke-verify -p 7 -r 3 --trials 25 --seed 99";
    RunResult a = run_cli(args);
    RunResult b = run_cli(args);
    EXPECT_EQ(a.exit_code, 0);
    EXPECT_EQ(a.out, b.out);

    args = "lab -p 5 -r 3 -n 3 -x -1";
    EXPECT_EQ(run_cli(args).out, run_cli(args).out);
}

TEST(CliGeneral, HelpExitsZero) {
    EXPECT_EQ(run_cli("--help").exit_code, 0);
    EXPECT_EQ(run_cli("reduce --help").exit_code, 0);
}

TEST(CliGeneral, PrecisionFloor) {
    EXPECT_EQ(run_cli("lab -p 5 -r 3 -n 3 --precision 1").exit_code, 2);
}
