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


#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qembed/find_embedding.hpp"
#include "qembed/report.hpp"
#include "qembed/topology.hpp"

namespace qembed::cli {

/// Environment variable holding the default sweep worker count.
inline constexpr const char* kWorkersEnv = "QEMBED_WORKERS";

enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,
    kExitData = 2,
    kExitRowFailures = 3,
};

enum class Command { help, generate, metrics, embed, maxclique, sweep, report };

enum class SweepScope { desk, full, custom };

enum class OutputFormat { jsonl, csv };

struct RunConfig {
    Command command = Command::help;
    std::string help_text;

    // generate
    std::optional<QpuConfig> generator;
    bool stats = false;

    // metrics
    std::string graph_path;

    // embed: either a clique size or an edge-list path
    std::optional<std::size_t> clique;
    std::string problem_path;

    // embed, maxclique: one host; sweep: the custom scope
    std::vector<std::string> qpus;

    EmbedParams embed;
    std::size_t attempts_per_n = 3;

    SweepScope scope = SweepScope::desk;
    std::size_t workers = 1;
    std::optional<std::string> checkpoint;
    OutputFormat format = OutputFormat::jsonl;
    std::optional<std::string> csv_path;

    // report
    std::string results_path;
    ReportKind kind = ReportKind::summary;

    /// Unset means standard output.
    std::optional<std::string> output;
};

class UsageError : public std::runtime_error {
public:
    UsageError(std::string token, const std::string& what)
        : std::runtime_error(what), token_(std::move(token)) {}

    /// The argument that was rejected, verbatim.
    const std::string& token() const noexcept { return token_; }

private:
    std::string token_;
};

/// Parses arguments (without the program name). `workers_env` stands in for
/// the QEMBED_WORKERS variable.
/// @throws UsageError.
RunConfig parse_args(std::span<const std::string> args, std::optional<std::string> workers_env);

/// Same, reading QEMBED_WORKERS from the environment.
RunConfig parse_args(std::span<const std::string> args);

/// Resolves a host spec: `zephyr:M,T`, `hh:DEG,N`, or a path to an edge list.
/// Only the syntax of the first two forms is checked here.
/// @throws UsageError.
std::optional<QpuConfig> parse_qpu_spec(const std::string& spec);

/// Executes a parsed command and returns the process exit code.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_args + run with usage errors reported on `err`.
int main_entry(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace qembed::cli
