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
#include <optional>
#include <string>

#include "qembed/embedding.hpp"
#include "qembed/graph.hpp"

namespace qembed {

struct EmbedParams {
    /// Independent restarts, each with its own derived seed.
    std::size_t max_tries = 16;
    /// Tear-out-and-reroute passes over all logical vertices per try.
    std::size_t max_rounds = 32;
    std::uint64_t seed = 0;
    /// Cost of a host node is penalty_base^(number of other chains using it).
    double penalty_base = 10.0;
    /// Added to a host's cost multiplier, per extra chain, after every round
    /// in which the host is shared. 0 keeps the plain occupancy penalty.
    double history_step = 100.0;
    std::optional<std::uint64_t> timeout_ms;
    /// Drop removable host nodes from chains after a successful try.
    bool trim_chains = true;
};

/// @throws InputError on zero tries/rounds, penalty_base <= 1 or a zero timeout.
void validate(const EmbedParams& params);

enum class EmbedStatus { success, exhausted, timeout, impossible };

const char* status_name(EmbedStatus status);

struct EmbedOutcome {
    EmbedStatus status = EmbedStatus::exhausted;
    /// Meaningful only on success.
    Embedding embedding;
    std::size_t tries_used = 0;
    std::string reason;

    bool ok() const { return status == EmbedStatus::success; }
};

/**
 * Randomized chain-routing minor embedding.
 *
 * Each try shuffles the logical vertices and places them one at a time: the
 * chain of a vertex is the union of cheapest host paths from a common root to
 * each already placed neighbor chain, where occupying a host node costs
 * penalty_base^(chains already using it). Chains may overlap at first;
 * refinement rounds tear out and reroute every chain until no host node is
 * shared or the round budget runs out. Failed tries restart with a new seed.
 *
 * Deterministic for identical inputs unless a timeout fires.
 *
 * @throws InputError if either graph is empty or the params are invalid.
 */
EmbedOutcome find_embedding(const Graph& gp, const Graph& gq, const EmbedParams& params,
                            std::string qpu_label = {});

/// Removes host nodes whose removal keeps the chain connected, non-empty and
/// every logical edge realized. `emb` must be a valid embedding.
void trim_chains(const Graph& gp, const Graph& gq, Embedding& emb);

}  // namespace qembed
