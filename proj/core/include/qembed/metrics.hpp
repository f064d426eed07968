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
#include <span>
#include <vector>

#include "qembed/graph.hpp"

namespace qembed {

struct DegreeStats {
    std::size_t min_degree = 0;
    std::size_t max_degree = 0;
    double mean_degree = 0.0;
    /// Population standard deviation; exactly 0 for regular graphs.
    double degree_stddev = 0.0;
};

/// @throws UndefinedMetricError on a graph with no nodes.
DegreeStats degree_stats(const Graph& g);

/// 1 - stddev/mean of the degree distribution, clamped to [0, 1].
/// @throws UndefinedMetricError when the graph is empty or has no edges.
double regularity(const Graph& g);

struct ModularityResult {
    /// Dense community id per node; communities are numbered in order of their
    /// smallest member.
    std::vector<std::size_t> partition;
    double q = 0.0;
    std::size_t community_count = 0;
    std::size_t merges = 0;
};

/**
 * Greedy agglomerative modularity maximization.
 *
 * Starts from singletons and repeatedly merges the adjacent community pair with
 * the largest modularity gain, ties going to the smallest (id, id) pair, until
 * no merge has a strictly positive gain. Gains are evaluated in exact integer
 * arithmetic (scaled by 2E^2), so the result does not depend on floating point
 * rounding.
 *
 * @throws UndefinedMetricError on an edgeless graph.
 */
ModularityResult modularity_partition(const Graph& g);

/// Newman modularity of an arbitrary partition (community ids need not be dense).
/// @throws UndefinedMetricError on an edgeless graph, InputError on a size mismatch.
double modularity(const Graph& g, std::span<const std::size_t> partition);

struct TopologyMetrics {
    std::size_t node_count = 0;
    std::size_t edge_count = 0;
    double average_degree = 0.0;
    double regularity = 0.0;
    double modularity = 0.0;
    std::size_t community_count = 0;

    bool operator==(const TopologyMetrics&) const = default;
};

TopologyMetrics topology_metrics(const Graph& g);

}  // namespace qembed
