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
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "qembed/graph.hpp"

namespace qembed {

// ---------------------------------------------------------------------------
// Zephyr
// ---------------------------------------------------------------------------

struct ZephyrParams {
    std::size_t m = 1;  // grid size
    std::size_t t = 1;  // tile size

    bool operator==(const ZephyrParams&) const = default;
};

/// Five-coordinate Zephyr address. Node ids are the lexicographic rank of
/// (u, w, k, j, z).
struct ZephyrCoord {
    std::size_t u = 0;  // orientation, {0, 1}
    std::size_t w = 0;  // transverse index, [0, 2m]
    std::size_t k = 0;  // tile offset, [0, t)
    std::size_t j = 0;  // half index, {0, 1}
    std::size_t z = 0;  // longitudinal tile index, [0, m)

    bool operator==(const ZephyrCoord&) const = default;
};

enum class ZephyrEdgeFamily { internal, odd, external };

struct ZephyrEdgeCounts {
    std::size_t internal = 0;
    std::size_t odd = 0;
    std::size_t external = 0;

    std::size_t total() const { return internal + odd + external; }
};

void validate(const ZephyrParams& p);

/// 4 t m (2m + 1)
std::size_t zephyr_node_count(const ZephyrParams& p);
/// Closed-form per-family edge counts: 16 t^2 m^2, 2t(2m+1)(2m-1), 4t(2m+1)(m-1).
ZephyrEdgeCounts zephyr_edge_counts(const ZephyrParams& p);

/// @throws InputError for a coordinate outside the bounds of `p`.
NodeId zephyr_linear_index(const ZephyrCoord& c, const ZephyrParams& p);
ZephyrCoord zephyr_coordinate(NodeId id, const ZephyrParams& p);

/// Edges of a single family, each normalized to (low, high).
std::vector<Edge> zephyr_edges(const ZephyrParams& p, ZephyrEdgeFamily family);

/// @throws InputError if m < 1 or t < 1.
Graph zephyr_graph(const ZephyrParams& p);

// ---------------------------------------------------------------------------
// Havel-Hakimi
// ---------------------------------------------------------------------------

/// Upper bound on the uniform degree, modelling a plausible fabrication limit.
inline constexpr std::size_t kMaxHavelHakimiDegree = 105;

struct HavelHakimiParams {
    std::size_t deg = 1;
    std::size_t num_qubits = 2;

    bool operator==(const HavelHakimiParams&) const = default;
};

/// Returns a description of the first failed Erdos-Gallai condition, or
/// nothing when the sequence is graphical.
std::optional<std::string> erdos_gallai_violation(std::span<const std::size_t> degrees);

/**
 * Deterministic Havel-Hakimi realization of an arbitrary degree sequence.
 *
 * Repeatedly takes the node with the largest residual degree (smallest id on
 * ties) and connects it to the nodes with the next-largest residual degrees
 * (same tie-break). Node i of the result has degree degrees[i].
 *
 * @throws GraphicalityError when the sequence is not graphical.
 */
Graph realize_degree_sequence(std::span<const std::size_t> degrees);

/// deg-regular graph on num_qubits nodes.
/// @throws InputError for deg == 0 or deg above kMaxHavelHakimiDegree,
///         GraphicalityError when deg * num_qubits is odd or deg >= num_qubits.
Graph havel_hakimi_graph(const HavelHakimiParams& p);

// ---------------------------------------------------------------------------
// Experiment configurations
// ---------------------------------------------------------------------------

enum class QpuFamily { zephyr, havel_hakimi, custom };

/// Stable lowercase name used in labels and CSV output.
const char* family_name(QpuFamily family);

/// A user-provided host graph, e.g. loaded from an edge-list file.
struct CustomHost {
    std::string name;
    std::shared_ptr<const Graph> graph;
};

struct QpuConfig {
    std::variant<ZephyrParams, HavelHakimiParams, CustomHost> params;

    QpuFamily family() const;
    /// Unique per family and parameters, e.g. "zephyr-m2-t1", "hh-deg5-n50".
    std::string label() const;
};

QpuConfig zephyr_config(std::size_t m, std::size_t t);
QpuConfig havel_hakimi_config(std::size_t deg, std::size_t num_qubits);
QpuConfig custom_config(std::string name, Graph graph);

Graph build_graph(const QpuConfig& config);

/// The full grid: all (m, t) in [2,7] x [1,25], then deg in {5 + 25k : k < 5}
/// crossed with num_qubits in {50 + 350i : i < 30}.
std::vector<QpuConfig> sweep_configs();

/// Reduced grid that finishes in minutes on a desktop:
/// m in {2,3}, t in {1,2,4}, deg in {5,30}, num_qubits in {50,400}.
std::vector<QpuConfig> desk_configs();

}  // namespace qembed
