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
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qembed/embedding.hpp"
#include "qembed/find_embedding.hpp"
#include "qembed/graph.hpp"
#include "qembed/topology.hpp"

namespace qembed {

/// Descriptors of one host topology.
struct QpuRecord {
    QpuConfig config;
    std::size_t node_count = 0;
    std::size_t edge_count = 0;
    double average_degree = 0.0;
    /// Unset on edgeless hosts, where the metrics are undefined.
    std::optional<double> regularity;
    std::optional<double> modularity;
    std::size_t community_count = 0;
    std::size_t component_count = 0;
};

QpuRecord describe_qpu(const QpuConfig& config, const Graph& gq);

struct CliqueProbe {
    std::size_t n = 0;
    bool success = false;
    /// find_embedding calls spent on this n.
    std::size_t attempts = 0;

    bool operator==(const CliqueProbe&) const = default;
};

struct MaxCliqueResult {
    QpuRecord qpu;
    /// Largest n with a verified K_n embedding; a lower bound on true embeddability.
    std::size_t max = 0;
    ChainStats stats;
    Embedding witness;
    std::vector<CliqueProbe> attempts_log;
    /// Set when the row could not be computed; the other fields are then partial.
    std::optional<std::string> error;
};

/**
 * Largest clique K_n the heuristic embeds into `gq`.
 *
 * Probes n = 2, 4, 8, ... until the first failure, then bisects between the
 * largest success and the smallest failure. Each probe makes up to
 * `attempts_per_n` find_embedding calls with distinct derived seeds and only
 * counts verifier-clean embeddings as success. n = 1 is taken as given.
 *
 * @throws InputError on an empty host or attempts_per_n == 0.
 */
MaxCliqueResult max_embeddable_clique(const QpuConfig& config, const Graph& gq,
                                      const EmbedParams& params, std::size_t attempts_per_n);

/// Same search for an unnamed host.
MaxCliqueResult max_embeddable_clique(const Graph& gq, const EmbedParams& params,
                                      std::size_t attempts_per_n);

struct SweepOptions {
    std::size_t workers = 1;
    /// JSON-lines of completed rows; rows found here are not recomputed.
    std::optional<std::filesystem::path> checkpoint;
    /// Called after each finished row, from the finishing worker thread but
    /// never concurrently.
    std::function<void(const MaxCliqueResult&)> on_row;
};

/// Runs max_embeddable_clique over every config. Output order matches
/// `configs`; per-row errors are recorded in the row instead of thrown.
std::vector<MaxCliqueResult> run_sweep(std::span<const QpuConfig> configs, const EmbedParams& params,
                                       std::size_t attempts_per_n, const SweepOptions& options = {});

struct NormalizedPoint {
    QpuFamily family = QpuFamily::custom;
    std::string label;
    double x = 0.0;  // average degree / node count
    double y = 0.0;  // max clique / node count
    double median_chain = 0.0;
};

/// One point per successful row, order preserved. Rows carrying an error are skipped.
std::vector<NormalizedPoint> normalize(std::span<const MaxCliqueResult> results);

struct TrendSummary {
    QpuFamily family = QpuFamily::custom;
    std::size_t points = 0;
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    double quadratic_coefficient = 0.0;
    /// Sign of the quadratic coefficient: -1 concave, 0 flat, +1 convex.
    int concavity_indicator = 0;
    double mean_median_chain = 0.0;
};

/// Least-squares linear and quadratic fits of y on x over `family`'s points.
/// @throws InputError when the family has fewer than 3 points.
TrendSummary trend_summary(std::span<const NormalizedPoint> points, QpuFamily family);

// Serialization. One JSON object per line with a fixed key order; doubles are
// written in shortest round-trip form.

std::string to_json_line(const MaxCliqueResult& result);
/// @throws FormatError.
MaxCliqueResult result_from_json(std::string_view line);

void write_results_jsonl(std::ostream& out, std::span<const MaxCliqueResult> results);
/// @throws FormatError naming the offending line; an input without rows is an error.
std::vector<MaxCliqueResult> read_results_jsonl(std::istream& in);

/// family,label,nodes,edges,avg_degree,regularity,modularity,max,mean_chain,
/// median_chain,mode_chain,x_norm,y_norm
void write_results_csv(std::ostream& out, std::span<const MaxCliqueResult> results);

/// Shortest decimal that parses back to exactly `value`.
std::string format_double(double value);

}  // namespace qembed
