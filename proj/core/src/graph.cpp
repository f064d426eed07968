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


#include "qembed/graph.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <limits>
#include <ostream>
#include <string>
#include <string_view>

#include "qembed/errors.hpp"

namespace qembed {

Graph::Graph(std::size_t node_count) : adjacency_(node_count) {}

Graph Graph::from_edges(std::size_t node_count, std::span<const Edge> edges) {
    Graph g(node_count);
    for (const auto& [u, v] : edges) {
        g.check_endpoints(u, v);
        g.adjacency_[u].push_back(v);
        g.adjacency_[v].push_back(u);
    }
    std::size_t total = 0;
    for (auto& adj : g.adjacency_) {
        std::sort(adj.begin(), adj.end());
        adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
        total += adj.size();
    }
    g.edge_count_ = total / 2;
    return g;
}

void Graph::check_endpoints(NodeId u, NodeId v) const {
    if (u >= node_count() || v >= node_count()) {
        throw InputError("edge (" + std::to_string(u) + ", " + std::to_string(v) +
                         ") out of range for " + std::to_string(node_count()) + " nodes");
    }
    if (u == v) {
        throw SelfLoopError("self-loop on node " + std::to_string(u));
    }
}

void Graph::add_edge(NodeId u, NodeId v) {
    check_endpoints(u, v);
    auto& au = adjacency_[u];
    auto it = std::lower_bound(au.begin(), au.end(), v);
    if (it != au.end() && *it == v) return;
    au.insert(it, v);
    auto& av = adjacency_[v];
    av.insert(std::lower_bound(av.begin(), av.end(), u), u);
    ++edge_count_;
}

bool Graph::has_edge(NodeId u, NodeId v) const {
    if (u >= node_count() || v >= node_count()) return false;
    const auto& au = adjacency_[u];
    return std::binary_search(au.begin(), au.end(), v);
}

std::size_t Graph::max_degree() const noexcept {
    std::size_t best = 0;
    for (const auto& adj : adjacency_) best = std::max(best, adj.size());
    return best;
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (NodeId u = 0; u < node_count(); ++u) {
        for (NodeId v : adjacency_[u]) {
            if (u < v) out.emplace_back(u, v);
        }
    }
    return out;
}

std::vector<std::vector<NodeId>> connected_components(const Graph& g) {
    std::vector<std::vector<NodeId>> components;
    std::vector<char> seen(g.node_count(), 0);
    std::vector<NodeId> stack;
    for (NodeId root = 0; root < g.node_count(); ++root) {
        if (seen[root]) continue;
        std::vector<NodeId> component;
        seen[root] = 1;
        stack.push_back(root);
        while (!stack.empty()) {
            NodeId v = stack.back();
            stack.pop_back();
            component.push_back(v);
            for (NodeId w : g.neighbors(v)) {
                if (!seen[w]) {
                    seen[w] = 1;
                    stack.push_back(w);
                }
            }
        }
        std::sort(component.begin(), component.end());
        components.push_back(std::move(component));
    }
    return components;
}

Graph complete_graph(std::size_t n) {
    std::vector<Edge> edges;
    edges.reserve(n * (n > 0 ? n - 1 : 0) / 2);
    for (NodeId u = 0; u < n; ++u)
        for (NodeId v = u + 1; v < n; ++v) edges.emplace_back(u, v);
    return Graph::from_edges(n, edges);
}

Graph path_graph(std::size_t n) {
    Graph g(n);
    for (NodeId v = 1; v < n; ++v) g.add_edge(v - 1, v);
    return g;
}

Graph star_graph(std::size_t leaves) {
    Graph g(leaves + 1);
    for (NodeId v = 1; v <= leaves; ++v) g.add_edge(0, v);
    return g;
}

Graph grid_graph(std::size_t rows, std::size_t cols) {
    Graph g(rows * cols);
    auto id = [cols](std::size_t r, std::size_t c) { return static_cast<NodeId>(r * cols + c); };
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            if (c + 1 < cols) g.add_edge(id(r, c), id(r, c + 1));
            if (r + 1 < rows) g.add_edge(id(r, c), id(r + 1, c));
        }
    }
    return g;
}

void write_edge_list(std::ostream& out, const Graph& g) {
    std::string buf = "graph " + std::to_string(g.node_count()) + ' ' +
                      std::to_string(g.edge_count()) + '\n';
    out << buf;
    for (const auto& [u, v] : g.edges()) {
        buf.clear();
        buf += std::to_string(u);
        buf += ' ';
        buf += std::to_string(v);
        buf += '\n';
        out << buf;
    }
}

namespace {

// Splits a line into exactly `N` unsigned decimal fields separated by single spaces.
template <std::size_t N>
bool parse_fields(std::string_view line, std::uint64_t (&fields)[N]) {
    const char* p = line.data();
    const char* end = line.data() + line.size();
    for (std::size_t i = 0; i < N; ++i) {
        if (i > 0) {
            if (p == end || *p != ' ') return false;
            ++p;
        }
        auto [next, ec] = std::from_chars(p, end, fields[i]);
        if (ec != std::errc() || next == p) return false;
        p = next;
    }
    return p == end;
}

}  // namespace

Graph read_edge_list(std::istream& in) {
    std::string line;
    std::size_t line_no = 1;
    if (!std::getline(in, line)) throw FormatError(1, "missing 'graph' header");
    constexpr std::string_view kHeader = "graph ";
    if (!std::string_view(line).starts_with(kHeader)) {
        throw FormatError(1, "expected 'graph <node_count> <edge_count>'");
    }
    std::uint64_t header[2];
    if (!parse_fields(std::string_view(line).substr(kHeader.size()), header)) {
        throw FormatError(1, "expected 'graph <node_count> <edge_count>'");
    }
    const std::size_t n = header[0];
    const std::size_t m = header[1];
    if (n > std::numeric_limits<NodeId>::max()) throw FormatError(1, "node count too large");

    std::vector<Edge> edges;
    edges.reserve(m);
    while (std::getline(in, line)) {
        ++line_no;
        std::uint64_t uv[2];
        if (!parse_fields(std::string_view(line), uv)) {
            throw FormatError(line_no, "expected 'u v', got '" + line + "'");
        }
        if (uv[0] >= uv[1]) throw FormatError(line_no, "edge endpoints must satisfy u < v");
        if (uv[1] >= n) throw FormatError(line_no, "node id out of range");
        edges.emplace_back(static_cast<NodeId>(uv[0]), static_cast<NodeId>(uv[1]));
    }
    if (edges.size() != m) {
        throw FormatError(line_no, "header declares " + std::to_string(m) + " edges, found " +
                                       std::to_string(edges.size()));
    }
    Graph g = Graph::from_edges(n, edges);
    if (g.edge_count() != m) throw FormatError(0, "duplicate edges in edge list");
    return g;
}

}  // namespace qembed
