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
#include <string>
#include <string_view>
#include <vector>

#include "qembed/graph.hpp"

namespace qembed {

/// Host nodes representing one logical vertex, ascending.
using Chain = std::vector<NodeId>;

/**
 * Minor embedding of a problem graph into a host graph: chains[x] is the chain
 * of logical vertex x. A valid embedding has one non-empty connected chain per
 * logical vertex, pairwise disjoint chains, and a host edge between the chains
 * of every logical edge.
 */
struct Embedding {
    std::vector<Chain> chains;
    std::string qpu_label;
    std::size_t problem_size = 0;

    std::size_t total_chain_length() const;
    bool operator==(const Embedding&) const = default;
};

enum class ViolationKind {
    missing_vertex,     // logical vertex without a chain
    unexpected_vertex,  // chain for an id that is not a logical vertex
    empty_chain,
    host_out_of_range,
    disconnected_chain,
    chain_overlap,      // host shared by `logical` and `other`
    unrealized_edge,    // no coupler between chains of `logical` and `other`
};

const char* violation_name(ViolationKind kind);

struct Violation {
    ViolationKind kind;
    NodeId logical = 0;
    NodeId other = 0;
    NodeId host = 0;

    std::string describe() const;
    bool operator==(const Violation&) const = default;
};

struct ValidityReport {
    std::vector<Violation> violations;

    bool valid() const { return violations.empty(); }
    std::size_t count(ViolationKind kind) const;
};

/// Checks every embedding invariant. Never throws on malformed embeddings;
/// each problem becomes a violation.
ValidityReport verify_embedding(const Graph& gp, const Graph& gq, const Embedding& emb);

struct ChainStats {
    double mean = 0.0;
    double median = 0.0;
    /// Most frequent length; the smallest one on frequency ties.
    std::size_t mode = 0;
    std::size_t max = 0;
    std::size_t total = 0;

    bool operator==(const ChainStats&) const = default;
};

/// @throws InputError on an empty list.
ChainStats chain_stats(std::span<const std::size_t> lengths);
ChainStats chain_stats(const Embedding& emb);

/// {"problem_size":..,"qpu_label":..,"chains":[[..],..]} with keys in that order.
std::string to_json(const Embedding& emb);
/// @throws FormatError when the text is not an embedding object.
Embedding embedding_from_json(std::string_view text);

}  // namespace qembed
