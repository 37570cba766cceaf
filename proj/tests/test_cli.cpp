// Copyright 2026 The qcpcp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qcpcp/cli.hpp"

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

using nlohmann::json;
using qcpcp::run_cli;

namespace {

namespace fs = std::filesystem;

struct Run {
    int code = -1;
    std::string out;
    std::string err;
    json doc() const { return json::parse(out); }
};

Run cli(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    Run r;
    r.code = run_cli(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::string fixture(const std::string &name) { return (fs::path(QCPCP_FIXTURE_DIR) / name).string(); }

fs::path scratch_dir() {
    const auto dir = fs::temp_directory_path() / ("qcpcp_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    return dir;
}

void write_file(const fs::path &path, const std::string &text) {
    std::ofstream(path, std::ios::binary) << text;
}

}  // namespace

TEST(CliBinary, runs_as_a_process) {
    const std::string cmd = std::string("\"") + QCPCP_CLI_PATH + "\" bv --secret 101 --seed 1";
    FILE *pipe = ::popen(cmd.c_str(), "r");
    ASSERT_NE(pipe, nullptr);
    std::string out;
    char buf[512];
    while (std::fgets(buf, sizeof buf, pipe) != nullptr) {
        out += buf;
    }
    const int status = ::pclose(pipe);
    ASSERT_TRUE(WIFEXITED(status));
    EXPECT_EQ(WEXITSTATUS(status), 0);
    EXPECT_EQ(json::parse(out).at("decoded"), "101");
}

TEST(CliBinary, usage_errors_exit_two) {
    const std::string cmd = std::string("\"") + QCPCP_CLI_PATH + "\" bv --secret '' 2>/dev/null";
    const int status = std::system(cmd.c_str());
    ASSERT_TRUE(WIFEXITED(status));
    EXPECT_EQ(WEXITSTATUS(status), qcpcp::kExitUsage);
}

TEST(CliExtract, bit_reader_fixture) {
    const auto r = cli({"extract", "--circuit", fixture("bit_reader.json")});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto terms = r.doc().at("terms");
    ASSERT_EQ(terms.size(), 1U);
    EXPECT_EQ(terms[0].at("subset"), json::array({3}));
    EXPECT_NEAR(terms[0].at("coeff").get<double>(), 1.0, 1e-9);
}

TEST(CliExtract, parity_fixture) {
    const auto r = cli({"extract", "--circuit", fixture("parity.json")});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto terms = r.doc().at("terms");
    ASSERT_EQ(terms.size(), 3U);
    EXPECT_NEAR(terms[2].at("coeff").get<double>(), -2.0, 1e-9);
}

TEST(CliExtract, malformed_file) {
    const auto r = cli({"extract", "--circuit", fixture("malformed.json")});
    EXPECT_EQ(r.code, qcpcp::kExitUsage);
    EXPECT_NE(r.err.find("ops["), std::string::npos) << r.err;
    const auto missing = cli({"extract", "--circuit", fixture("does_not_exist.json")});
    EXPECT_EQ(missing.code, qcpcp::kExitUsage);
    const auto no_flag = cli({"extract"});
    EXPECT_EQ(no_flag.code, qcpcp::kExitUsage);
}

TEST(CliLearn, replays_byte_identically) {
    const std::vector<std::string> args{"learn", "--circuit", fixture("bit_reader.json"), "--c", "0.6667", "--s",
                                        "0.3333", "--shots-override", "4095", "--seed", "7"};
    const auto a = cli(args);
    const auto b = cli(args);
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
    const auto doc = a.doc();
    EXPECT_EQ(doc.at("seed"), 7);
    EXPECT_EQ(doc.at("params").at("shots"), 4095);
    EXPECT_EQ(doc.at("params").at("guarantee"), "override");
}

TEST(CliLearn, parameter_errors) {
    const auto bad_delta = cli({"learn", "--circuit", fixture("bit_reader.json"), "--c", "0.9", "--s", "0.1",
                                "--delta", "0.5", "--shots-override", "255"});
    EXPECT_EQ(bad_delta.code, qcpcp::kExitUsage);
    EXPECT_NE(bad_delta.err.find("delta"), std::string::npos);
    const auto bad_gap = cli({"learn", "--circuit", fixture("bit_reader.json"), "--c", "0.2", "--s", "0.4"});
    EXPECT_EQ(bad_gap.code, qcpcp::kExitUsage);
    const auto bad_override = cli({"learn", "--circuit", fixture("bit_reader.json"), "--c", "0.9", "--s", "0.1",
                                   "--shots-override", "1000"});
    EXPECT_EQ(bad_override.code, qcpcp::kExitUsage);
}

TEST(CliLearn, seed_sweep_csv) {
    const auto r = cli({"learn", "--circuit", fixture("parity.json"), "--c", "0.9", "--s", "0.1", "--shots-override",
                        "255", "--seeds", "3", "--format", "csv"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out.rfind("seed,pass,sup_error,max_coefficient_error\n", 0), 0U);
    EXPECT_NE(r.out.find("summary,pass_rate,1.0,3"), std::string::npos) << r.out;
}

TEST(CliReduce, yes_and_no_fixtures) {
    const auto yes = cli({"reduce", "--circuit", fixture("bit_reader.json"), "--c", "1", "--s", "0",
                          "--shots-override", "255", "--seed", "2"});
    ASSERT_EQ(yes.code, 0) << yes.err;
    EXPECT_EQ(yes.doc().at("answer"), "YES");
    EXPECT_EQ(yes.doc().at("witness").get<std::string>().at(2), '1');

    const auto no = cli({"reduce", "--circuit", fixture("constant_reject.json"), "--c", "1", "--s", "0",
                         "--shots-override", "255", "--seed", "2"});
    ASSERT_EQ(no.code, 0) << no.err;
    EXPECT_EQ(no.doc().at("answer"), "NO");
    EXPECT_TRUE(no.doc().at("witness").is_null());

    const auto even = cli({"reduce", "--circuit", fixture("bit_reader.json"), "--c", "1", "--s", "0",
                           "--shots-override", "255", "--amplify-k", "4"});
    EXPECT_EQ(even.code, qcpcp::kExitUsage);
}

TEST(CliReduce, budget_errors_exit_three) {
    const auto r = cli({"reduce", "--circuit", fixture("parity.json"), "--c", "0.9", "--s", "0.1"});
    EXPECT_EQ(r.code, qcpcp::kExitBudget) << r.err;
    EXPECT_NE(r.err.find("shots-override"), std::string::npos) << r.err;
}

TEST(CliBv, single_secret) {
    const auto r = cli({"bv", "--secret", "10110", "--seed", "4"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.doc().at("decoded"), "10110");
    EXPECT_EQ(r.doc().at("queries"), 1);
    EXPECT_EQ(r.doc().at("proof_len"), 32);
}

TEST(CliBv, concatenated_secret) {
    const auto r = cli({"bv-concat", "--secret", "110010101111", "--chunk-bits", "4"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.doc().at("decoded"), "110010101111");
    EXPECT_EQ(r.doc().at("queries"), 3);
}

TEST(CliBv, empty_or_bad_secret) {
    EXPECT_EQ(cli({"bv", "--secret", ""}).code, qcpcp::kExitUsage);
    EXPECT_EQ(cli({"bv", "--secret", "10x"}).code, qcpcp::kExitUsage);
    EXPECT_EQ(cli({"bv"}).code, qcpcp::kExitUsage);
    EXPECT_EQ(cli({"bv-concat", "--secret", "", "--chunk-bits", "2"}).code, qcpcp::kExitUsage);
}

TEST(CliExperiment, or_with_advice) {
    const auto r = cli({"experiment-or", "--n", "8", "--advice", "0", "--advice", "8", "--trials", "2"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto doc = r.doc();
    EXPECT_TRUE(doc.at("pass").get<bool>());
    const auto &levels = doc.at("levels");
    ASSERT_EQ(levels.size(), 2U);
    EXPECT_EQ(levels[0].at("reference"), 13);
    const int k_star = levels[0].at("k_star");
    EXPECT_GE(k_star, 7);
    EXPECT_LE(k_star, 26);
    EXPECT_EQ(levels[1].at("k_star"), 0);
    EXPECT_LE(doc.at("max_abs_diff").get<double>(), 1e-6);
}

TEST(CliExperiment, csv_table) {
    const auto r = cli({"experiment-or", "--n", "6", "--advice", "2", "--format", "csv"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out.rfind("advice,k,simulated,closed_form,abs_diff\n", 0), 0U);
}

// Three free bits reach 2/3 after one iteration while the reference is 3, so
// the factor-2 check fails and the command reports it through its exit code.
TEST(CliExperiment, failed_check_exits_one) {
    const auto r = cli({"experiment-or", "--n", "4", "--advice", "1"});
    EXPECT_EQ(r.code, qcpcp::kExitCheckFailed);
    EXPECT_FALSE(r.doc().at("pass").get<bool>());
    EXPECT_EQ(r.doc().at("levels")[0].at("k_star"), 1);
}

TEST(CliReport, merge_preserves_seeds_and_is_idempotent) {
    const auto dir = scratch_dir();
    const auto a = dir / "a.json";
    const auto b = dir / "b.json";
    const auto merged = dir / "merged.json";
    ASSERT_EQ(cli({"bv", "--secret", "1", "--seed", "11", "--out", a.string()}).code, 0);
    ASSERT_EQ(cli({"bv", "--secret", "0", "--seed", "12", "--out", b.string()}).code, 0);

    const auto first = cli({"report", a.string(), b.string()});
    ASSERT_EQ(first.code, 0) << first.err;
    EXPECT_EQ(first.doc().at("seeds"), json::array({11, 12}));
    EXPECT_EQ(first.doc().at("count"), 2);
    write_file(merged, first.out);

    const auto again = cli({"report", merged.string()});
    EXPECT_EQ(again.out, first.out);
    const auto mixed = cli({"report", merged.string(), a.string(), b.string()});
    EXPECT_EQ(mixed.out, first.out);
    fs::remove_all(dir);
}

TEST(CliReport, empty_input_is_usage_error) {
    EXPECT_EQ(cli({"report"}).code, qcpcp::kExitUsage);
    EXPECT_EQ(cli({"extract", "--circuit", fixture("bit_reader.json"), "--format", "csv"}).code, qcpcp::kExitUsage);
}

TEST(CliGeneral, help_and_unknown_commands) {
    EXPECT_EQ(cli({"--help"}).code, 0);
    EXPECT_EQ(cli({}).code, qcpcp::kExitUsage);
    EXPECT_EQ(cli({"frobnicate"}).code, qcpcp::kExitUsage);
}

TEST(CliGeneral, timing_is_opt_in) {
    const auto plain = cli({"bv", "--secret", "11"});
    EXPECT_FALSE(plain.doc().contains("wall_clock_seconds"));
    const auto timed = cli({"bv", "--secret", "11", "--timing"});
    EXPECT_TRUE(timed.doc().contains("wall_clock_seconds"));
}
