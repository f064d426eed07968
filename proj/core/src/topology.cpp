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


#include "qembed/topology.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <string>

#include "qembed/errors.hpp"

namespace qembed {

void validate(const ZephyrParams& p) {
    if (p.m < 1 || p.t < 1) {
        throw InputError("zephyr parameters must satisfy m >= 1 and t >= 1 (got m=" +
                         std::to_string(p.m) + ", t=" + std::to_string(p.t) + ")");
    }
}

std::size_t zephyr_node_count(const ZephyrParams& p) {
    return 4 * p.t * p.m * (2 * p.m + 1);
}

ZephyrEdgeCounts zephyr_edge_counts(const ZephyrParams& p) {
    const std::size_t m = p.m;
    const std::size_t t = p.t;
    return {
        .internal = 16 * t * t * m * m,
        .odd = 2 * t * (2 * m + 1) * (2 * m - 1),
        .external = 4 * t * (2 * m + 1) * (m - 1),
    };
}

NodeId zephyr_linear_index(const ZephyrCoord& c, const ZephyrParams& p) {
    if (c.u > 1 || c.w > 2 * p.m || c.k >= p.t || c.j > 1 || c.z >= p.m) {
        throw InputError("zephyr coordinate (" + std::to_string(c.u) + "," + std::to_string(c.w) +
                         "," + std::to_string(c.k) + "," + std::to_string(c.j) + "," +
                         std::to_string(c.z) + ") out of bounds");
    }
    const std::size_t id = (((c.u * (2 * p.m + 1) + c.w) * p.t + c.k) * 2 + c.j) * p.m + c.z;
    return static_cast<NodeId>(id);
}

ZephyrCoord zephyr_coordinate(NodeId id, const ZephyrParams& p) {
    if (id >= zephyr_node_count(p)) {
        throw InputError("zephyr node id " + std::to_string(id) + " out of range");
    }
    ZephyrCoord c;
    std::size_t rest = id;
    c.z = rest % p.m;
    rest /= p.m;
    c.j = rest % 2;
    rest /= 2;
    c.k = rest % p.t;
    rest /= p.t;
    c.w = rest % (2 * p.m + 1);
    c.u = rest / (2 * p.m + 1);
    return c;
}

namespace {

Edge normalized(NodeId a, NodeId b) { return a < b ? Edge{a, b} : Edge{b, a}; }

}  // namespace

std::vector<Edge> zephyr_edges(const ZephyrParams& p, ZephyrEdgeFamily family) {
    validate(p);
    const std::size_t m = p.m;
    const std::size_t t = p.t;
    const std::size_t width = 2 * m + 1;
    auto id = [&](std::size_t u, std::size_t w, std::size_t k, std::size_t j, std::size_t z) {
        return zephyr_linear_index({u, w, k, j, z}, p);
    };

    std::vector<Edge> edges;
    switch (family) {
        case ZephyrEdgeFamily::external:
            for (std::size_t u = 0; u < 2; ++u)
                for (std::size_t w = 0; w < width; ++w)
                    for (std::size_t k = 0; k < t; ++k)
                        for (std::size_t j = 0; j < 2; ++j)
                            for (std::size_t z = 0; z + 1 < m; ++z)
                                edges.push_back(normalized(id(u, w, k, j, z), id(u, w, k, j, z + 1)));
            break;
        case ZephyrEdgeFamily::odd:
            for (std::size_t u = 0; u < 2; ++u)
                for (std::size_t w = 0; w < width; ++w)
                    for (std::size_t k = 0; k < t; ++k)
                        for (std::size_t z = 0; z < m; ++z) {
                            edges.push_back(normalized(id(u, w, k, 0, z), id(u, w, k, 1, z)));
                            if (z + 1 < m) {
                                edges.push_back(normalized(id(u, w, k, 1, z), id(u, w, k, 0, z + 1)));
                            }
                        }
            break;
        case ZephyrEdgeFamily::internal:
            // (0,w0,k0,j0,z0) ~ (1,w1,k1,j1,z1) iff w1 - (2 z0 + j0) and
            // w0 - (2 z1 + j1) are both in {0, 1}.
            for (std::size_t z0 = 0; z0 < m; ++z0)
                for (std::size_t j0 = 0; j0 < 2; ++j0)
                    for (std::size_t z1 = 0; z1 < m; ++z1)
                        for (std::size_t j1 = 0; j1 < 2; ++j1)
                            for (std::size_t a = 0; a < 2; ++a)
                                for (std::size_t b = 0; b < 2; ++b) {
                                    const std::size_t w1 = 2 * z0 + j0 + a;
                                    const std::size_t w0 = 2 * z1 + j1 + b;
                                    for (std::size_t k0 = 0; k0 < t; ++k0)
                                        for (std::size_t k1 = 0; k1 < t; ++k1)
                                            edges.push_back(normalized(id(0, w0, k0, j0, z0),
                                                                       id(1, w1, k1, j1, z1)));
                                }
            break;
    }
    return edges;
}

Graph zephyr_graph(const ZephyrParams& p) {
    validate(p);
    std::vector<Edge> edges;
    edges.reserve(zephyr_edge_counts(p).total());
    for (auto family : {ZephyrEdgeFamily::internal, ZephyrEdgeFamily::odd, ZephyrEdgeFamily::external}) {
        auto part = zephyr_edges(p, family);
        edges.insert(edges.end(), part.begin(), part.end());
    }
    return Graph::from_edges(zephyr_node_count(p), edges);
}

std::optional<std::string> erdos_gallai_violation(std::span<const std::size_t> degrees) {
    const std::size_t n = degrees.size();
    std::vector<std::size_t> d(degrees.begin(), degrees.end());
    std::sort(d.begin(), d.end(), std::greater<>());

    const std::size_t total = std::accumulate(d.begin(), d.end(), std::size_t{0});
    if (total % 2 != 0) {
        return "degree sum " + std::to_string(total) + " is odd";
    }

    // suffix[i] = d[i] + ... + d[n-1]
    std::vector<std::size_t> suffix(n + 1, 0);
    for (std::size_t i = n; i-- > 0;) suffix[i] = suffix[i + 1] + d[i];

    std::size_t prefix = 0;
    for (std::size_t k = 1; k <= n; ++k) {
        prefix += d[k - 1];
        // First index whose degree is below k (d is non-increasing).
        const auto below = static_cast<std::size_t>(
            std::partition_point(d.begin(), d.end(), [k](std::size_t x) { return x >= k; }) -
            d.begin());
        std::size_t tail;
        if (below <= k) {
            tail = suffix[k];
        } else {
            tail = k * (below - k) + suffix[below];
        }
        const std::size_t rhs = k * (k - 1) + tail;
        if (prefix > rhs) {
            return "Erdos-Gallai condition fails at k=" + std::to_string(k) + ": sum of the " +
                   std::to_string(k) + " largest degrees is " + std::to_string(prefix) +
                   " > " + std::to_string(rhs);
        }
    }
    return std::nullopt;
}

Graph realize_degree_sequence(std::span<const std::size_t> degrees) {
    if (auto violation = erdos_gallai_violation(degrees)) {
        throw GraphicalityError("degree sequence is not graphical: " + *violation);
    }
    const std::size_t n = degrees.size();
    const std::size_t top = n == 0 ? 0 : *std::max_element(degrees.begin(), degrees.end());

    // buckets[r] holds the nodes whose residual degree is r, by ascending id.
    std::vector<std::set<NodeId>> buckets(top + 1);
    for (NodeId v = 0; v < n; ++v) {
        if (degrees[v] > 0) buckets[degrees[v]].insert(v);
    }

    std::vector<Edge> edges;
    std::vector<std::pair<NodeId, std::size_t>> targets;
    std::size_t level = top;
    while (true) {
        while (level > 0 && buckets[level].empty()) --level;
        if (level == 0) break;

        const NodeId source = *buckets[level].begin();
        buckets[level].erase(buckets[level].begin());
        const std::size_t need = level;

        targets.clear();
        for (std::size_t r = level; r > 0 && targets.size() < need; --r) {
            for (NodeId v : buckets[r]) {
                targets.emplace_back(v, r);
                if (targets.size() == need) break;
            }
        }
        if (targets.size() < need) {
            throw GraphicalityError("degree sequence is not graphical: node " +
                                    std::to_string(source) + " cannot be saturated");
        }
        for (const auto& [v, r] : targets) {
            buckets[r].erase(v);
            if (r > 1) buckets[r - 1].insert(v);
            edges.push_back(normalized(source, v));
        }
    }
    return Graph::from_edges(n, edges);
}

Graph havel_hakimi_graph(const HavelHakimiParams& p) {
    if (p.deg == 0) throw InputError("havel-hakimi degree must be at least 1");
    if (p.deg > kMaxHavelHakimiDegree) {
        throw InputError("havel-hakimi degree " + std::to_string(p.deg) + " exceeds the cap of " +
                         std::to_string(kMaxHavelHakimiDegree));
    }
    const std::vector<std::size_t> degrees(p.num_qubits, p.deg);
    return realize_degree_sequence(degrees);
}

const char* family_name(QpuFamily family) {
    switch (family) {
        case QpuFamily::zephyr: return "zephyr";
        case QpuFamily::havel_hakimi: return "havel_hakimi";
        case QpuFamily::custom: return "custom";
    }
    return "unknown";
}

QpuFamily QpuConfig::family() const {
    return static_cast<QpuFamily>(params.index());
}

std::string QpuConfig::label() const {
    if (const auto* z = std::get_if<ZephyrParams>(&params)) {
        return "zephyr-m" + std::to_string(z->m) + "-t" + std::to_string(z->t);
    }
    if (const auto* h = std::get_if<HavelHakimiParams>(&params)) {
        return "hh-deg" + std::to_string(h->deg) + "-n" + std::to_string(h->num_qubits);
    }
    return "custom-" + std::get<CustomHost>(params).name;
}

QpuConfig zephyr_config(std::size_t m, std::size_t t) {
    return {ZephyrParams{m, t}};
}

QpuConfig havel_hakimi_config(std::size_t deg, std::size_t num_qubits) {
    return {HavelHakimiParams{deg, num_qubits}};
}

QpuConfig custom_config(std::string name, Graph graph) {
    return {CustomHost{std::move(name), std::make_shared<const Graph>(std::move(graph))}};
}

Graph build_graph(const QpuConfig& config) {
    if (const auto* z = std::get_if<ZephyrParams>(&config.params)) return zephyr_graph(*z);
    if (const auto* h = std::get_if<HavelHakimiParams>(&config.params)) return havel_hakimi_graph(*h);
    const auto& custom = std::get<CustomHost>(config.params);
    if (!custom.graph) throw InputError("custom host '" + custom.name + "' has no graph");
    return *custom.graph;
}

std::vector<QpuConfig> sweep_configs() {
    std::vector<QpuConfig> configs;
    configs.reserve(300);
    for (std::size_t m = 2; m <= 7; ++m)
        for (std::size_t t = 1; t <= 25; ++t) configs.push_back(zephyr_config(m, t));
    for (std::size_t k = 0; k < 5; ++k)
        for (std::size_t i = 0; i < 30; ++i) configs.push_back(havel_hakimi_config(5 + 25 * k, 50 + 350 * i));
    return configs;
}

std::vector<QpuConfig> desk_configs() {
    std::vector<QpuConfig> configs;
    for (std::size_t m : {2, 3})
        for (std::size_t t : {1, 2, 4}) configs.push_back(zephyr_config(m, t));
    for (std::size_t deg : {5, 30})
        for (std::size_t n : {50, 400}) configs.push_back(havel_hakimi_config(deg, n));
    return configs;
}

}  // namespace qembed
