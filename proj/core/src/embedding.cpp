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


#include "qembed/embedding.hpp"

#include <algorithm>
#include <map>

#include <json.hpp>

#include "qembed/errors.hpp"
#include "serialization.hpp"

namespace qembed {

std::size_t Embedding::total_chain_length() const {
    std::size_t total = 0;
    for (const auto& chain : chains) total += chain.size();
    return total;
}

const char* violation_name(ViolationKind kind) {
    switch (kind) {
        case ViolationKind::missing_vertex: return "missing_vertex";
        case ViolationKind::unexpected_vertex: return "unexpected_vertex";
        case ViolationKind::empty_chain: return "empty_chain";
        case ViolationKind::host_out_of_range: return "host_out_of_range";
        case ViolationKind::disconnected_chain: return "disconnected_chain";
        case ViolationKind::chain_overlap: return "chain_overlap";
        case ViolationKind::unrealized_edge: return "unrealized_edge";
    }
    return "unknown";
}

std::string Violation::describe() const {
    const std::string x = std::to_string(logical);
    switch (kind) {
        case ViolationKind::missing_vertex: return "logical vertex " + x + " has no chain";
        case ViolationKind::unexpected_vertex: return "chain given for non-vertex " + x;
        case ViolationKind::empty_chain: return "chain of " + x + " is empty";
        case ViolationKind::host_out_of_range:
            return "chain of " + x + " uses out-of-range host " + std::to_string(host);
        case ViolationKind::disconnected_chain: return "chain of " + x + " is disconnected";
        case ViolationKind::chain_overlap:
            return "host " + std::to_string(host) + " shared by chains " + std::to_string(other) +
                   " and " + x;
        case ViolationKind::unrealized_edge:
            return "logical edge (" + x + ", " + std::to_string(other) + ") has no coupler";
    }
    return "unknown violation";
}

std::size_t ValidityReport::count(ViolationKind kind) const {
    return static_cast<std::size_t>(std::count_if(
        violations.begin(), violations.end(), [kind](const Violation& v) { return v.kind == kind; }));
}

namespace {

bool chain_connected(const Graph& gq, const std::vector<NodeId>& chain,
                     std::vector<std::uint32_t>& stamp, std::uint32_t mark) {
    // `stamp[v] == mark` marks chain membership; visited nodes get mark + 1.
    for (NodeId v : chain) stamp[v] = mark;
    std::vector<NodeId> stack{chain.front()};
    stamp[chain.front()] = mark + 1;
    std::size_t reached = 1;
    while (!stack.empty()) {
        const NodeId v = stack.back();
        stack.pop_back();
        for (NodeId w : gq.neighbors(v)) {
            if (stamp[w] == mark) {
                stamp[w] = mark + 1;
                ++reached;
                stack.push_back(w);
            }
        }
    }
    return reached == chain.size();
}

}  // namespace

ValidityReport verify_embedding(const Graph& gp, const Graph& gq, const Embedding& emb) {
    ValidityReport report;
    auto add = [&](ViolationKind kind, std::size_t logical, std::size_t other = 0, std::size_t host = 0) {
        report.violations.push_back({kind, static_cast<NodeId>(logical), static_cast<NodeId>(other),
                                     static_cast<NodeId>(host)});
    };

    const std::size_t n = gp.node_count();
    for (std::size_t x = emb.chains.size(); x < n; ++x) add(ViolationKind::missing_vertex, x);
    for (std::size_t x = n; x < emb.chains.size(); ++x) add(ViolationKind::unexpected_vertex, x);

    // Sanitized chains: in-range, deduplicated, ascending.
    std::vector<std::vector<NodeId>> chains(std::min(n, emb.chains.size()));
    for (std::size_t x = 0; x < chains.size(); ++x) {
        const auto& raw = emb.chains[x];
        if (raw.empty()) {
            add(ViolationKind::empty_chain, x);
            continue;
        }
        for (NodeId v : raw) {
            if (v >= gq.node_count()) {
                add(ViolationKind::host_out_of_range, x, 0, v);
            } else {
                chains[x].push_back(v);
            }
        }
        std::sort(chains[x].begin(), chains[x].end());
        chains[x].erase(std::unique(chains[x].begin(), chains[x].end()), chains[x].end());
    }

    std::vector<std::uint32_t> stamp(gq.node_count(), 0);
    std::uint32_t mark = 1;
    for (std::size_t x = 0; x < chains.size(); ++x) {
        if (chains[x].empty()) continue;
        if (!chain_connected(gq, chains[x], stamp, mark)) add(ViolationKind::disconnected_chain, x);
        mark += 2;
    }

    constexpr auto kFree = static_cast<std::size_t>(-1);
    std::vector<std::size_t> owner(gq.node_count(), kFree);
    for (std::size_t x = 0; x < chains.size(); ++x) {
        for (NodeId v : chains[x]) {
            if (owner[v] == kFree) {
                owner[v] = x;
            } else {
                add(ViolationKind::chain_overlap, x, owner[v], v);
            }
        }
    }

    std::fill(stamp.begin(), stamp.end(), 0);
    mark = 0;
    for (const auto& [a, b] : gp.edges()) {
        if (a >= chains.size() || b >= chains.size()) continue;
        if (chains[a].empty() || chains[b].empty()) {
            add(ViolationKind::unrealized_edge, a, b);
            continue;
        }
        ++mark;
        for (NodeId v : chains[b]) stamp[v] = mark;
        bool realized = false;
        for (NodeId u : chains[a]) {
            for (NodeId w : gq.neighbors(u)) {
                if (stamp[w] == mark) {
                    realized = true;
                    break;
                }
            }
            if (realized) break;
        }
        if (!realized) add(ViolationKind::unrealized_edge, a, b);
    }
    return report;
}

ChainStats chain_stats(std::span<const std::size_t> lengths) {
    if (lengths.empty()) throw InputError("chain statistics of an empty embedding");
    std::vector<std::size_t> sorted(lengths.begin(), lengths.end());
    std::sort(sorted.begin(), sorted.end());

    ChainStats stats;
    for (std::size_t len : sorted) stats.total += len;
    stats.max = sorted.back();
    stats.mean = static_cast<double>(stats.total) / static_cast<double>(sorted.size());
    const std::size_t mid = sorted.size() / 2;
    stats.median = sorted.size() % 2 == 1
                       ? static_cast<double>(sorted[mid])
                       : (static_cast<double>(sorted[mid - 1]) + static_cast<double>(sorted[mid])) / 2.0;

    // Runs in ascending order; a strictly larger run is needed to replace the mode.
    std::size_t best_run = 0;
    for (std::size_t i = 0; i < sorted.size();) {
        std::size_t j = i;
        while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
        if (j - i > best_run) {
            best_run = j - i;
            stats.mode = sorted[i];
        }
        i = j;
    }
    return stats;
}

ChainStats chain_stats(const Embedding& emb) {
    std::vector<std::size_t> lengths;
    lengths.reserve(emb.chains.size());
    for (const auto& chain : emb.chains) lengths.push_back(chain.size());
    return chain_stats(lengths);
}

std::string to_json(const Embedding& emb) { return embedding_to_json(emb).dump(); }

Embedding embedding_from_json(std::string_view text) {
    nlohmann::ordered_json j;
    try {
        j = nlohmann::ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(0, std::string("invalid embedding json: ") + e.what());
    }
    return embedding_from_json(j);
}

}  // namespace qembed
