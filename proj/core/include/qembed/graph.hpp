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
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

namespace qembed {

using NodeId = std::uint32_t;

/// Undirected edge, normalized so that `first < second` when produced by Graph.
using Edge = std::pair<NodeId, NodeId>;

/**
 * Undirected simple graph on dense node ids [0, node_count).
 *
 * Adjacency lists are kept strictly increasing, so the representation of a
 * graph is canonical: two graphs with the same edge set compare equal and
 * serialize to the same bytes.
 */
class Graph {
public:
    Graph() = default;
    explicit Graph(std::size_t node_count);

    /// Builds a graph from an arbitrary edge list. Duplicate edges collapse;
    /// self-loops and out-of-range ids throw.
    static Graph from_edges(std::size_t node_count, std::span<const Edge> edges);

    /// Inserts u-v. Idempotent.
    /// @throws InputError if an id is out of range, SelfLoopError if u == v.
    void add_edge(NodeId u, NodeId v);

    bool has_edge(NodeId u, NodeId v) const;

    std::size_t node_count() const noexcept { return adjacency_.size(); }
    std::size_t edge_count() const noexcept { return edge_count_; }
    bool empty() const noexcept { return adjacency_.empty(); }

    std::span<const NodeId> neighbors(NodeId v) const { return adjacency_.at(v); }
    std::size_t degree(NodeId v) const { return adjacency_.at(v).size(); }
    std::size_t max_degree() const noexcept;

    /// All edges with u < v in ascending lexicographic order.
    std::vector<Edge> edges() const;

    bool operator==(const Graph&) const = default;

private:
    void check_endpoints(NodeId u, NodeId v) const;

    std::vector<std::vector<NodeId>> adjacency_;
    std::size_t edge_count_ = 0;
};

/// Maximal connected vertex sets. Each set is ascending; sets are ordered by
/// their smallest member.
std::vector<std::vector<NodeId>> connected_components(const Graph& g);

Graph complete_graph(std::size_t n);
Graph path_graph(std::size_t n);
/// Star with one center (id 0) and `leaves` leaves.
Graph star_graph(std::size_t leaves);
Graph grid_graph(std::size_t rows, std::size_t cols);

/**
 * Edge-list text format:
 *
 *     graph <node_count> <edge_count>
 *     u v
 *     ...
 *
 * One edge per line with u < v, ascending lexicographic order, LF endings.
 */
void write_edge_list(std::ostream& out, const Graph& g);

/// Parses the edge-list format. Edge order is not enforced on input, but
/// u < v, range, duplicate and count mismatches are reported as FormatError.
Graph read_edge_list(std::istream& in);

}  // namespace qembed
