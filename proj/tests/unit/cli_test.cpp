// Copyright 2026 The qembed Authors
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.


#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

namespace qembed::cli {
namespace {

namespace fs = std::filesystem;

RunConfig parse(std::vector<std::string> args, std::optional<std::string> env = std::nullopt) {
    return parse_args(args, env);
}

std::string usage_token(std::vector<std::string> args) {
    try {
        parse(std::move(args));
    } catch (const UsageError& e) {
        return e.token();
    }
    ADD_FAILURE() << "no UsageError";
    return {};
}

struct Result {
    int code;
    std::string out, err;
};

Result invoke(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = main_entry(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "qembed_cli_test";
    fs::create_directories(dir);
    fs::remove(dir / name);
    return dir / name;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void write(const fs::path& path, const std::string& text) {
    std::ofstream(path, std::ios::binary) << text;
}

TEST(ParseArgs, SweepDeskWithSeed) {
    const RunConfig c = parse({"sweep", "--desk", "--seed", "7"});
    EXPECT_EQ(c.command, Command::sweep);
    EXPECT_EQ(c.scope, SweepScope::desk);
    EXPECT_EQ(c.embed.seed, 7u);
    EXPECT_EQ(c.embed.max_tries, 16u);
    EXPECT_EQ(c.embed.max_rounds, 32u);
    EXPECT_EQ(c.attempts_per_n, 3u);
    EXPECT_GE(c.workers, 1u);
    EXPECT_EQ(c.format, OutputFormat::jsonl);
}

TEST(ParseArgs, GenerateZephyr) {
    const RunConfig c = parse({"generate", "--family", "zephyr", "--m", "2", "--t", "1"});
    EXPECT_EQ(c.command, Command::generate);
    ASSERT_TRUE(c.generator.has_value());
    EXPECT_EQ(c.generator->label(), "zephyr-m2-t1");
    EXPECT_FALSE(c.stats);
}

TEST(ParseArgs, GenerateHavelHakimi) {
    const RunConfig c = parse({"generate", "--family", "hh", "--deg", "5", "--n", "50", "--stats"});
    EXPECT_EQ(c.generator->label(), "hh-deg5-n50");
    EXPECT_TRUE(c.stats);
}

TEST(ParseArgs, EmbedDefaultsAndOverrides) {
    const RunConfig c = parse({"embed", "--problem", "clique:6", "--qpu", "zephyr:2,1", "--tries", "3",
                               "--rounds", "9", "--timeout-ms", "500", "--no-trim"});
    EXPECT_EQ(c.command, Command::embed);
    EXPECT_EQ(c.clique, 6u);
    EXPECT_EQ(c.qpus, std::vector<std::string>{"zephyr:2,1"});
    EXPECT_EQ(c.embed.max_tries, 3u);
    EXPECT_EQ(c.embed.max_rounds, 9u);
    EXPECT_EQ(c.embed.timeout_ms, 500u);
    EXPECT_FALSE(c.embed.trim_chains);
    EXPECT_EQ(c.embed.seed, 0u);
}

TEST(ParseArgs, UsageErrorsNameTheToken) {
    EXPECT_EQ(usage_token({"embed", "--problem", "clique:0", "--qpu", "zephyr:2,1"}), "clique:0");
    EXPECT_EQ(usage_token({"embed", "--problem", "clique:x", "--qpu", "zephyr:2,1"}), "clique:x");
    EXPECT_EQ(usage_token({"sweep", "--bogus"}), "--bogus");
    EXPECT_EQ(usage_token({"generate", "--family", "zephyr", "--m", "two", "--t", "1"}), "two");
    EXPECT_EQ(usage_token({"generate", "--family", "pegasus"}), "pegasus");
    EXPECT_EQ(usage_token({"generate", "--family", "zephyr", "--t", "1"}), "--m");
    EXPECT_EQ(usage_token({"sweep", "--workers", "0"}), "0");
    EXPECT_EQ(usage_token({"sweep", "--format", "xml"}), "xml");
    EXPECT_EQ(usage_token({"sweep", "--desk", "--full"}), "--full");
    EXPECT_EQ(usage_token({"report", "--results", "r.jsonl", "--kind", "fig3"}), "fig3");
    EXPECT_EQ(usage_token({"maxclique", "--qpu", "zephyr:2"}), "zephyr:2");
    EXPECT_EQ(usage_token({"maxclique", "--qpu", "hh:0,5"}), "hh:0,5");
    EXPECT_EQ(usage_token({"frobnicate"}), "frobnicate");
}

TEST(ParseArgs, WorkersFromEnvironment) {
    EXPECT_EQ(parse({"sweep"}, "5").workers, 5u);
    EXPECT_EQ(parse({"sweep", "--workers", "2"}, "5").workers, 2u);
    try {
        parse({"sweep"}, "lots");
        FAIL() << "expected UsageError";
    } catch (const UsageError& e) {
        EXPECT_EQ(e.token(), "lots");
    }
}

TEST(ParseArgs, SweepScopes) {
    EXPECT_EQ(parse({"sweep", "--full"}).scope, SweepScope::full);
    const RunConfig custom = parse({"sweep", "--qpu", "zephyr:2,1", "--qpu", "hosts/a.txt"});
    EXPECT_EQ(custom.scope, SweepScope::custom);
    EXPECT_EQ(custom.qpus.size(), 2u);
}

TEST(ParseArgs, Help) {
    EXPECT_EQ(parse({"--help"}).command, Command::help);
    EXPECT_NE(parse({"--help"}).help_text.find("sweep"), std::string::npos);
    EXPECT_EQ(invoke({"--help"}).code, kExitOk);
}

TEST(Cli, UsageErrorExitCode) {
    const Result r = invoke({"embed", "--problem", "clique:0", "--qpu", "zephyr:2,1"});
    EXPECT_EQ(r.code, kExitUsage);
    EXPECT_NE(r.err.find("clique:0"), std::string::npos);
}

TEST(Cli, GenerateThenMetricsRoundTrip) {
    const fs::path graph = scratch("z22.txt");
    const Result gen = invoke({"generate", "--family", "zephyr", "--m", "2", "--t", "2", "--stats", "-o",
                               graph.string()});
    ASSERT_EQ(gen.code, kExitOk) << gen.err;
    const Result metrics = invoke({"metrics", "--graph", graph.string()});
    ASSERT_EQ(metrics.code, kExitOk) << metrics.err;
    EXPECT_EQ(gen.out, metrics.out);
    EXPECT_EQ(slurp(graph).rfind("graph 80 ", 0), 0u);
}

TEST(Cli, GenerateToStdoutAppendsStats) {
    const Result r = invoke({"generate", "--family", "hh", "--deg", "3", "--n", "4", "--stats"});
    ASSERT_EQ(r.code, kExitOk);
    EXPECT_EQ(r.out.rfind("graph 4 6\n0 1\n", 0), 0u);
    EXPECT_NE(r.out.find("\n{\"nodes\":4,\"edges\":6,"), std::string::npos);
}

TEST(Cli, NonGraphicalGenerationIsADataError) {
    const Result r = invoke({"generate", "--family", "hh", "--deg", "3", "--n", "5"});
    EXPECT_EQ(r.code, kExitData);
    EXPECT_NE(r.err.find("not graphical"), std::string::npos);
    EXPECT_TRUE(r.out.empty());
}

TEST(Cli, EmbedCliqueIntoZephyr) {
    const Result r = invoke({"embed", "--problem", "clique:5", "--qpu", "zephyr:2,1"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_EQ(r.out.rfind("{\"problem_size\":5,\"qpu_label\":\"zephyr-m2-t1\",\"chains\":[[", 0), 0u);
    EXPECT_EQ(r.out, invoke({"embed", "--problem", "clique:5", "--qpu", "zephyr:2,1"}).out);
}

TEST(Cli, EmbedFailureIsADataError) {
    const fs::path tree = scratch("tree.txt");
    write(tree, "graph 4 3\n0 1\n1 2\n2 3\n");
    const Result r = invoke({"embed", "--problem", "clique:3", "--qpu", tree.string(), "--tries", "2"});
    EXPECT_EQ(r.code, kExitData);
    EXPECT_NE(r.err.find("exhausted"), std::string::npos);
}

TEST(Cli, EmbedProblemFromFile) {
    const fs::path problem = scratch("triangle.txt");
    write(problem, "graph 3 3\n0 1\n0 2\n1 2\n");
    const Result r = invoke({"embed", "--problem", problem.string(), "--qpu", "hh:3,4"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_EQ(r.out, "{\"problem_size\":3,\"qpu_label\":\"hh-deg3-n4\",\"chains\":[[0],[1],[2]]}\n");
}

TEST(Cli, MissingAndMalformedFilesAreDataErrors) {
    EXPECT_EQ(invoke({"metrics", "--graph", scratch("absent.txt").string()}).code, kExitData);
    const fs::path bad = scratch("bad.txt");
    write(bad, "graph 3 2\n0 1\n2 1\n");
    const Result r = invoke({"metrics", "--graph", bad.string()});
    EXPECT_EQ(r.code, kExitData);
    EXPECT_NE(r.err.find("line 3"), std::string::npos);
}

TEST(Cli, MaxcliqueOnCustomHost) {
    const fs::path k6 = scratch("k6.txt");
    write(k6, "graph 6 15\n0 1\n0 2\n0 3\n0 4\n0 5\n1 2\n1 3\n1 4\n1 5\n2 3\n2 4\n2 5\n3 4\n3 5\n4 5\n");
    const Result r = invoke({"maxclique", "--qpu", k6.string(), "--attempts", "1"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_EQ(r.out.rfind("{\"label\":\"custom-k6\",\"family\":\"custom\"", 0), 0u);
    EXPECT_NE(r.out.find("\"max\":6,"), std::string::npos);
}

TEST(Cli, SweepReportPipeline) {
    const fs::path results = scratch("results.jsonl");
    const fs::path csv = scratch("results.csv");
    const Result sweep = invoke({"sweep", "--qpu", "zephyr:2,1", "--qpu", "zephyr:1,2", "--qpu", "zephyr:2,2",
                                 "--qpu", "hh:3,4", "--qpu", "hh:5,50", "--qpu", "hh:3,12", "--tries", "2",
                                 "--rounds", "8", "--attempts", "1", "--workers", "2", "-o",
                                 results.string(), "--csv", csv.string()});
    ASSERT_EQ(sweep.code, kExitOk) << sweep.err;
    EXPECT_NE(sweep.err.find("[6/6]"), std::string::npos);
    EXPECT_EQ(slurp(csv).rfind("family,label,nodes,", 0), 0u);

    const std::string before = slurp(results);
    const auto stamp = fs::last_write_time(results);
    for (const char* kind : {"fig2a", "fig2b", "summary"}) {
        const Result r = invoke({"report", "--results", results.string(), "--kind", kind});
        ASSERT_EQ(r.code, kExitOk) << r.err;
        EXPECT_FALSE(r.out.empty());
    }
    const Result summary = invoke({"report", "--results", results.string()});
    EXPECT_NE(summary.out.find("verdict: havel_hakimi slope="), std::string::npos);
    EXPECT_NE(summary.out.find("; zephyr slope="), std::string::npos);
    EXPECT_EQ(slurp(results), before);
    EXPECT_EQ(fs::last_write_time(results), stamp);
}

TEST(Cli, SweepCsvFormat) {
    const Result r = invoke({"sweep", "--qpu", "hh:3,4", "--format", "csv", "--attempts", "1"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_EQ(r.out.rfind("family,label,", 0), 0u);
    EXPECT_NE(r.out.find("\nhavel_hakimi,hh-deg3-n4,4,6,3,1,"), std::string::npos);
}

TEST(Cli, SweepRowFailuresExitThree) {
    const fs::path empty = scratch("empty-host.txt");
    write(empty, "graph 0 0\n");
    const Result r = invoke({"sweep", "--qpu", "hh:3,4", "--qpu", empty.string(), "--attempts", "1"});
    EXPECT_EQ(r.code, kExitRowFailures);
    EXPECT_NE(r.out.find("\"error\":\"host graph has no nodes\""), std::string::npos);
    EXPECT_NE(r.err.find("1 of 2 rows failed"), std::string::npos);
}

TEST(Cli, ReportErrors) {
    const fs::path empty = scratch("empty.jsonl");
    write(empty, "");
    EXPECT_EQ(invoke({"report", "--results", empty.string()}).code, kExitData);

    const fs::path results = scratch("one.jsonl");
    ASSERT_EQ(invoke({"sweep", "--qpu", "hh:3,4", "--attempts", "1", "-o", results.string()}).code, kExitOk);
    write(results, slurp(results) + "garbage\n");
    const Result r = invoke({"report", "--results", results.string(), "--kind", "fig2a"});
    EXPECT_EQ(r.code, kExitData);
    EXPECT_NE(r.err.find("line 2"), std::string::npos);
    EXPECT_TRUE(r.out.empty());
}

}  // namespace
}  // namespace qembed::cli
