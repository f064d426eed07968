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


#include "qembed/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <queue>
#include <string>
#include <unordered_map>

#include "qembed/errors.hpp"

namespace qembed {

DegreeStats degree_stats(const Graph& g) {
    const std::size_t n = g.node_count();
    if (n == 0) throw UndefinedMetricError("degree statistics of an empty graph");

    DegreeStats stats;
    stats.min_degree = g.degree(0);
    std::uint64_t sum = 0;
    for (NodeId v = 0; v < n; ++v) {
        const std::size_t d = g.degree(v);
        stats.min_degree = std::min(stats.min_degree, d);
        stats.max_degree = std::max(stats.max_degree, d);
        sum += d;
    }
    const auto count = static_cast<double>(n);
    stats.mean_degree = static_cast<double>(sum) / count;
    // Deviations scaled by n are exact integers, so regular graphs get exactly 0.
    double scaled_sq = 0.0;
    for (NodeId v = 0; v < n; ++v) {
        const auto dev = static_cast<double>(static_cast<std::int64_t>(n * g.degree(v)) -
                                             static_cast<std::int64_t>(sum));
        scaled_sq += dev * dev;
    }
    stats.degree_stddev = std::sqrt(scaled_sq / (count * count * count));
    return stats;
}

double regularity(const Graph& g) {
    if (g.node_count() == 0 || g.edge_count() == 0) {
        throw UndefinedMetricError("regularity needs at least one edge");
    }
    const DegreeStats stats = degree_stats(g);
    return std::clamp(1.0 - stats.degree_stddev / stats.mean_degree, 0.0, 1.0);
}

namespace {

struct MergeCandidate {
    std::int64_t gain;  // modularity gain scaled by 2E^2
    std::uint32_t a;    // a < b
    std::uint32_t b;
    std::uint32_t version_a;
    std::uint32_t version_b;
};

// Max-heap order: larger gain first, then the lexicographically smallest pair.
struct CandidateOrder {
    bool operator()(const MergeCandidate& x, const MergeCandidate& y) const {
        if (x.gain != y.gain) return x.gain < y.gain;
        if (x.a != y.a) return x.a > y.a;
        return x.b > y.b;
    }
};

std::uint32_t find_root(std::vector<std::uint32_t>& parent, std::uint32_t v) {
    while (parent[v] != v) {
        parent[v] = parent[parent[v]];
        v = parent[v];
    }
    return v;
}

}  // namespace

ModularityResult modularity_partition(const Graph& g) {
    const std::size_t n = g.node_count();
    const auto edges = static_cast<std::int64_t>(g.edge_count());
    if (edges == 0) throw UndefinedMetricError("modularity of an edgeless graph");

    std::vector<std::int64_t> total_degree(n);
    std::vector<std::unordered_map<std::uint32_t, std::int64_t>> links(n);
    std::vector<std::uint32_t> version(n, 0);
    std::vector<char> alive(n, 1);
    std::vector<std::uint32_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0u);

    // Q * 4E^2 = sum_c (4E e_c - d_c^2); starts at the all-singletons value.
    std::int64_t q_scaled = 0;
    for (NodeId v = 0; v < n; ++v) {
        total_degree[v] = static_cast<std::int64_t>(g.degree(v));
        q_scaled -= total_degree[v] * total_degree[v];
        for (NodeId w : g.neighbors(v)) links[v].emplace(w, 1);
    }

    std::priority_queue<MergeCandidate, std::vector<MergeCandidate>, CandidateOrder> heap;
    auto gain_of = [&](std::uint32_t a, std::uint32_t b, std::int64_t between) {
        return 2 * edges * between - total_degree[a] * total_degree[b];
    };
    for (const auto& [u, v] : g.edges()) {
        heap.push({gain_of(u, v, 1), u, v, 0, 0});
    }

    ModularityResult result;
    while (!heap.empty()) {
        const MergeCandidate top = heap.top();
        heap.pop();
        if (!alive[top.a] || !alive[top.b] || version[top.a] != top.version_a ||
            version[top.b] != top.version_b) {
            continue;
        }
        if (top.gain <= 0) break;

        // Merge b into a; the surviving community keeps the smaller id.
        const std::uint32_t keep = top.a;
        const std::uint32_t gone = top.b;
        links[keep].erase(gone);
        links[gone].erase(keep);
        for (const auto& [other, count] : links[gone]) {
            links[other].erase(gone);
            links[other][keep] += count;
            links[keep][other] += count;
        }
        links[gone].clear();
        total_degree[keep] += total_degree[gone];
        alive[gone] = 0;
        parent[gone] = keep;
        ++version[keep];
        q_scaled += 2 * top.gain;
        ++result.merges;

        for (const auto& [other, count] : links[keep]) {
            const std::uint32_t a = std::min(keep, other);
            const std::uint32_t b = std::max(keep, other);
            heap.push({gain_of(a, b, count), a, b, version[a], version[b]});
        }
    }

    result.partition.assign(n, 0);
    std::vector<std::size_t> dense(n, n);
    for (std::uint32_t v = 0; v < n; ++v) {
        const std::uint32_t root = find_root(parent, v);
        if (dense[root] == n) dense[root] = result.community_count++;
        result.partition[v] = dense[root];
    }
    const double scale = 4.0 * static_cast<double>(edges) * static_cast<double>(edges);
    result.q = static_cast<double>(q_scaled) / scale;
    return result;
}

double modularity(const Graph& g, std::span<const std::size_t> partition) {
    if (partition.size() != g.node_count()) {
        throw InputError("partition has " + std::to_string(partition.size()) + " entries for " +
                         std::to_string(g.node_count()) + " nodes");
    }
    if (g.edge_count() == 0) throw UndefinedMetricError("modularity of an edgeless graph");

    std::unordered_map<std::size_t, double> internal;
    std::unordered_map<std::size_t, double> degree;
    for (NodeId v = 0; v < g.node_count(); ++v) {
        degree[partition[v]] += static_cast<double>(g.degree(v));
        for (NodeId w : g.neighbors(v)) {
            if (v < w && partition[v] == partition[w]) internal[partition[v]] += 1.0;
        }
    }
    const auto e = static_cast<double>(g.edge_count());
    double q = 0.0;
    for (const auto& [community, d] : degree) {
        const double frac = d / (2.0 * e);
        q += internal[community] / e - frac * frac;
    }
    return q;
}

TopologyMetrics topology_metrics(const Graph& g) {
    TopologyMetrics m;
    m.node_count = g.node_count();
    m.edge_count = g.edge_count();
    m.average_degree = degree_stats(g).mean_degree;
    m.regularity = regularity(g);
    const ModularityResult mod = modularity_partition(g);
    m.modularity = mod.q;
    m.community_count = mod.community_count;
    return m;
}

}  // namespace qembed
