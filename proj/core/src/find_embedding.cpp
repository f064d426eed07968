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


#include "qembed/find_embedding.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <random>
#include <string>

#include "qembed/errors.hpp"
#include "rng.hpp"

namespace qembed {

void validate(const EmbedParams& params) {
    if (params.max_tries == 0) throw InputError("max_tries must be positive");
    if (params.max_rounds == 0) throw InputError("max_rounds must be positive");
    if (!(params.penalty_base > 1.0) || !std::isfinite(params.penalty_base)) {
        throw InputError("penalty_base must be a finite value > 1");
    }
    if (params.timeout_ms && *params.timeout_ms == 0) throw InputError("timeout_ms must be positive");
    if (!(params.history_step >= 0.0) || !std::isfinite(params.history_step)) {
        throw InputError("history_step must be a finite value >= 0");
    }
}

const char* status_name(EmbedStatus status) {
    switch (status) {
        case EmbedStatus::success: return "success";
        case EmbedStatus::exhausted: return "exhausted";
        case EmbedStatus::timeout: return "timeout";
        case EmbedStatus::impossible: return "impossible";
    }
    return "unknown";
}

namespace {

using Clock = std::chrono::steady_clock;

constexpr NodeId kSource = std::numeric_limits<NodeId>::max();
constexpr NodeId kNoParent = kSource - 1;
constexpr double kInfinity = std::numeric_limits<double>::infinity();
// Cost charged for a neighbor chain the root cannot reach at all. Large enough
// to dominate any reachable path sum, small enough to add up without overflow.
constexpr double kUnreachable = 1e200;
constexpr double kMaxNodeWeight = 1e15;

struct Deadline {
    std::optional<Clock::time_point> at;

    bool passed() const { return at && Clock::now() >= *at; }
};

enum class TryResult { success, failed, timeout };

class ChainRouter {
public:
    ChainRouter(const Graph& gp, const Graph& gq, const EmbedParams& params, Deadline deadline)
        : gp_(gp), gq_(gq), params_(params), deadline_(deadline) {
        double w = 1.0;
        for (std::size_t k = 0; k <= gp.node_count(); ++k) {
            occupancy_weight_.push_back(w);
            w = std::min(w * params.penalty_base, kMaxNodeWeight);
        }
        offsets_.reserve(gq.node_count() + 1);
        offsets_.push_back(0);
        for (NodeId v = 0; v < gq.node_count(); ++v) {
            const auto nbrs = gq.neighbors(v);
            targets_.insert(targets_.end(), nbrs.begin(), nbrs.end());
            offsets_.push_back(targets_.size());
        }
        parents_.assign(gp.max_degree(), std::vector<NodeId>(gq.node_count()));
        dist_.resize(gq.node_count());
        total_.resize(gq.node_count());
        host_stamp_.assign(gq.node_count(), 0);
        local_index_.assign(gq.node_count(), 0);
        target_stamp_.assign(gp.node_count(), 0);
        touch_count_.assign(gp.node_count(), 0);
    }

    TryResult run_try(std::uint64_t seed) {
        std::mt19937_64 rng(seed);
        const std::size_t n = gp_.node_count();
        chains_.assign(n, {});
        unrealized_.assign(n, 0);
        users_.assign(gq_.node_count(), {});
        history_.assign(gq_.node_count(), 0.0);
        weight_.assign(gq_.node_count(), 1.0);
        overlapped_hosts_ = 0;
        unrealized_total_ = 0;

        std::vector<NodeId> order(n);
        std::iota(order.begin(), order.end(), NodeId{0});
        detail::shuffle(std::span<NodeId>(order), rng);

        for (NodeId x : order) {
            if (deadline_.passed()) return TryResult::timeout;
            place(x, rng);
        }
        if (clean()) return TryResult::success;

        for (std::size_t round = 0; round < params_.max_rounds; ++round) {
            detail::shuffle(std::span<NodeId>(order), rng);
            for (NodeId x : order) {
                if (deadline_.passed()) return TryResult::timeout;
                tear_out(x);
                place(x, rng);
            }
            if (clean()) return TryResult::success;
            // Hosts that stay contested get permanently more expensive, which
            // breaks the fixed points a constant overlap penalty settles into.
            for (std::size_t v = 0; v < users_.size(); ++v) {
                if (users_[v].size() > 1) {
                    history_[v] += params_.history_step * static_cast<double>(users_[v].size() - 1);
                    refresh_weight(static_cast<NodeId>(v));
                }
            }
        }
        return TryResult::failed;
    }

    std::vector<Chain> take_chains() { return std::move(chains_); }

private:
    bool clean() const { return overlapped_hosts_ == 0 && unrealized_total_ == 0; }

    double weight(NodeId v) const { return weight_[v]; }

    std::span<const NodeId> host_neighbors(NodeId v) const {
        return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
    }

    void refresh_weight(NodeId v) {
        weight_[v] = std::min(occupancy_weight_[users_[v].size()] * (1.0 + history_[v]), kMaxNodeWeight);
    }

    void tear_out(NodeId x) {
        for (NodeId v : chains_[x]) {
            auto& users = users_[v];
            users.erase(std::find(users.begin(), users.end(), x));
            if (users.size() == 1) --overlapped_hosts_;
            refresh_weight(v);
        }
        chains_[x].clear();
        unrealized_total_ -= unrealized_[x];
        unrealized_[x] = 0;
    }

    void commit(NodeId x, Chain chain, std::size_t unrealized) {
        for (NodeId v : chain) {
            users_[v].push_back(x);
            if (users_[v].size() == 2) ++overlapped_hosts_;
            refresh_weight(v);
        }
        chains_[x] = std::move(chain);
        unrealized_[x] = unrealized;
        unrealized_total_ += unrealized;
    }

    // Cheapest paths from the chain of `y` to every host node. A path's cost is
    // the summed weight of its nodes, excluding the chain node it starts from.
    void route_from(NodeId y, std::vector<NodeId>& parent) {
        using Item = std::pair<double, NodeId>;
        std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
        std::fill(dist_.begin(), dist_.end(), kInfinity);
        std::fill(parent.begin(), parent.end(), kNoParent);
        for (NodeId s : chains_[y]) {
            for (NodeId u : host_neighbors(s)) {
                if (parent[u] != kSource) {
                    dist_[u] = weight(u);
                    parent[u] = kSource;
                    heap.emplace(dist_[u], u);
                }
            }
        }
        while (!heap.empty()) {
            const auto [d, v] = heap.top();
            heap.pop();
            if (d > dist_[v]) continue;
            for (NodeId u : host_neighbors(v)) {
                const double nd = d + weight(u);
                if (nd < dist_[u]) {
                    dist_[u] = nd;
                    parent[u] = v;
                    heap.emplace(nd, u);
                } else if (nd == dist_[u] && parent[u] != kSource && v < parent[u]) {
                    parent[u] = v;
                }
            }
        }
    }

    void place(NodeId x, std::mt19937_64& rng) {
        placed_neighbors_.clear();
        for (NodeId y : gp_.neighbors(x)) {
            if (!chains_[y].empty()) placed_neighbors_.push_back(y);
        }
        if (placed_neighbors_.empty()) {
            commit(x, {pick_free_root(rng)}, 0);
            return;
        }

        std::fill(total_.begin(), total_.end(), 0.0);
        for (std::size_t i = 0; i < placed_neighbors_.size(); ++i) {
            route_from(placed_neighbors_[i], parents_[i]);
            for (std::size_t v = 0; v < total_.size(); ++v) {
                total_[v] += std::isinf(dist_[v]) ? kUnreachable : dist_[v];
            }
        }

        // The root's own weight is counted once per neighbor path; keep one copy.
        const auto extra = static_cast<double>(placed_neighbors_.size() - 1);
        NodeId root = 0;
        double best = kInfinity;
        for (NodeId v = 0; v < total_.size(); ++v) {
            const double cost = total_[v] - extra * weight(v);
            if (cost < best) {
                best = cost;
                root = v;
            }
        }

        ++stamp_;
        Chain chain;
        auto take = [&](NodeId v) {
            if (host_stamp_[v] != stamp_) {
                host_stamp_[v] = stamp_;
                chain.push_back(v);
            }
        };
        take(root);
        std::size_t unrealized = 0;
        for (std::size_t i = 0; i < placed_neighbors_.size(); ++i) {
            const auto& parent = parents_[i];
            if (parent[root] == kNoParent) {
                ++unrealized;
                continue;
            }
            for (NodeId v = root; parent[v] != kSource; v = parent[v]) take(parent[v]);
        }
        if (unrealized == 0) prune(chain);
        std::sort(chain.begin(), chain.end());
        commit(x, std::move(chain), unrealized);
    }

    // Drops chain nodes that are not needed to stay connected and to touch
    // every placed neighbor chain, most expensive first. Paths to different
    // neighbors often end up touching the same chains, leaving dead branches.
    void prune(Chain& chain) {
        if (chain.size() < 2) return;
        ++stamp_;
        for (NodeId y : placed_neighbors_) {
            target_stamp_[y] = stamp_;
            touch_count_[y] = 0;
        }
        const std::size_t len = chain.size();
        for (std::size_t i = 0; i < len; ++i) {
            host_stamp_[chain[i]] = stamp_;
            local_index_[chain[i]] = static_cast<NodeId>(i);
        }

        // touches[i]: placed neighbor chains adjacent to chain[i], deduplicated.
        touches_.assign(len, {});
        for (std::size_t i = 0; i < len; ++i) {
            auto& list = touches_[i];
            for (NodeId w : host_neighbors(chain[i])) {
                for (NodeId y : users_[w]) {
                    if (target_stamp_[y] == stamp_ && std::find(list.begin(), list.end(), y) == list.end()) {
                        list.push_back(y);
                    }
                }
            }
            for (NodeId y : list) ++touch_count_[y];
        }

        std::vector<std::size_t> candidates(len);
        std::iota(candidates.begin(), candidates.end(), std::size_t{0});
        std::sort(candidates.begin(), candidates.end(), [&](std::size_t a, std::size_t b) {
            const double wa = weight(chain[a]);
            const double wb = weight(chain[b]);
            return wa != wb ? wa > wb : chain[a] > chain[b];
        });

        removed_.assign(len, 0);
        std::size_t remaining = len;
        bool changed = true;
        while (changed && remaining > 1) {
            changed = false;
            for (std::size_t i : candidates) {
                if (removed_[i] || remaining == 1) continue;
                bool needed = false;
                for (NodeId y : touches_[i]) {
                    if (touch_count_[y] == 1) {
                        needed = true;
                        break;
                    }
                }
                if (needed || !connected_without(chain, i, remaining)) continue;
                removed_[i] = 1;
                --remaining;
                for (NodeId y : touches_[i]) --touch_count_[y];
                changed = true;
            }
        }

        std::size_t out = 0;
        for (std::size_t i = 0; i < len; ++i) {
            if (!removed_[i]) chain[out++] = chain[i];
        }
        chain.resize(out);
    }

    // Whether the chain minus removed nodes and minus chain[skip] is connected.
    bool connected_without(const Chain& chain, std::size_t skip, std::size_t remaining) {
        std::size_t start = 0;
        while (start == skip || removed_[start]) ++start;
        visited_.assign(chain.size(), 0);
        visited_[start] = 1;
        visited_[skip] = 1;
        stack_.assign(1, static_cast<NodeId>(start));
        std::size_t reached = 1;
        while (!stack_.empty()) {
            const NodeId i = stack_.back();
            stack_.pop_back();
            for (NodeId w : host_neighbors(chain[i])) {
                if (host_stamp_[w] != stamp_) continue;
                const NodeId j = local_index_[w];
                if (removed_[j] || visited_[j]) continue;
                visited_[j] = 1;
                ++reached;
                stack_.push_back(j);
            }
        }
        return reached == remaining - 1;
    }

    NodeId pick_free_root(std::mt19937_64& rng) const {
        std::size_t lowest = users_[0].size();
        for (const auto& users : users_) lowest = std::min(lowest, users.size());
        std::size_t candidates = 0;
        for (const auto& users : users_) candidates += users.size() == lowest;
        std::size_t pick = detail::uniform_below(rng, candidates);
        for (NodeId v = 0; v < users_.size(); ++v) {
            if (users_[v].size() == lowest && pick-- == 0) return v;
        }
        return 0;
    }

    const Graph& gp_;
    const Graph& gq_;
    const EmbedParams& params_;
    Deadline deadline_;

    // Host adjacency in compressed form; the hot loops walk it constantly.
    std::vector<std::size_t> offsets_;
    std::vector<NodeId> targets_;
    std::vector<double> occupancy_weight_;
    std::vector<Chain> chains_;
    std::vector<std::size_t> unrealized_;
    // users_[v]: logical vertices whose chain currently contains host v.
    std::vector<std::vector<NodeId>> users_;
    std::vector<double> history_;
    std::vector<double> weight_;
    std::size_t overlapped_hosts_ = 0;
    std::size_t unrealized_total_ = 0;

    // Scratch space reused across placements.
    std::vector<NodeId> placed_neighbors_;
    std::vector<std::vector<NodeId>> parents_;
    std::vector<double> dist_;
    std::vector<double> total_;
    std::vector<std::uint32_t> host_stamp_;
    std::vector<NodeId> local_index_;
    std::vector<std::uint32_t> target_stamp_;
    std::vector<std::size_t> touch_count_;
    std::vector<std::vector<NodeId>> touches_;
    std::vector<char> removed_;
    std::vector<char> visited_;
    std::vector<NodeId> stack_;
    std::uint32_t stamp_ = 0;
};

}  // namespace

EmbedOutcome find_embedding(const Graph& gp, const Graph& gq, const EmbedParams& params,
                            std::string qpu_label) {
    validate(params);
    if (gp.empty()) throw InputError("problem graph has no nodes");
    if (gq.empty()) throw InputError("host graph has no nodes");

    EmbedOutcome outcome;
    outcome.embedding.qpu_label = std::move(qpu_label);
    outcome.embedding.problem_size = gp.node_count();

    auto impossible = [&](std::string reason) {
        outcome.status = EmbedStatus::impossible;
        outcome.reason = std::move(reason);
        return outcome;
    };
    if (gp.node_count() > gq.node_count()) {
        return impossible("problem has more vertices than the host");
    }
    if (gp.edge_count() > 0 && gq.edge_count() == 0) {
        return impossible("problem has edges but the host has none");
    }
    if (gp.edge_count() > gq.edge_count()) {
        return impossible("problem has more edges than the host");
    }

    Deadline deadline;
    if (params.timeout_ms) {
        deadline.at = Clock::now() + std::chrono::milliseconds(*params.timeout_ms);
    }
    ChainRouter router(gp, gq, params, deadline);
    for (std::size_t attempt = 0; attempt < params.max_tries; ++attempt) {
        outcome.tries_used = attempt + 1;
        const TryResult result = router.run_try(detail::derive_seed(params.seed, attempt));
        if (result == TryResult::success) {
            outcome.status = EmbedStatus::success;
            outcome.embedding.chains = router.take_chains();
            if (params.trim_chains) trim_chains(gp, gq, outcome.embedding);
            return outcome;
        }
        if (result == TryResult::timeout) {
            outcome.status = EmbedStatus::timeout;
            outcome.reason = "timed out after " + std::to_string(*params.timeout_ms) + " ms";
            return outcome;
        }
    }
    outcome.status = EmbedStatus::exhausted;
    outcome.reason = "no overlap-free embedding after " + std::to_string(params.max_tries) + " tries";
    return outcome;
}

void trim_chains(const Graph& gp, const Graph& gq, Embedding& emb) {
    constexpr auto kFree = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> owner(gq.node_count(), kFree);
    for (std::size_t x = 0; x < emb.chains.size(); ++x)
        for (NodeId v : emb.chains[x]) owner[v] = x;

    std::vector<std::uint32_t> seen_owner(gp.node_count(), 0);
    std::vector<std::uint32_t> visit(gq.node_count(), 0);
    std::uint32_t stamp = 0;
    std::vector<NodeId> stack;

    // True when `chain` without `skip` is still connected and touches every
    // logical neighbor of x.
    auto removable = [&](NodeId x, const Chain& chain, NodeId skip) {
        ++stamp;
        const NodeId start = chain.front() == skip ? chain[1] : chain.front();
        stack.assign(1, start);
        visit[start] = stamp;
        std::size_t reached = 1;
        while (!stack.empty()) {
            const NodeId v = stack.back();
            stack.pop_back();
            for (NodeId w : gq.neighbors(v)) {
                if (w != skip && owner[w] == x && visit[w] != stamp) {
                    visit[w] = stamp;
                    ++reached;
                    stack.push_back(w);
                }
            }
        }
        if (reached != chain.size() - 1) return false;

        for (NodeId v : chain) {
            if (v == skip) continue;
            for (NodeId w : gq.neighbors(v)) {
                if (owner[w] != kFree && owner[w] != x) seen_owner[owner[w]] = stamp;
            }
        }
        for (NodeId y : gp.neighbors(x)) {
            if (seen_owner[y] != stamp) return false;
        }
        return true;
    };

    for (NodeId x = 0; x < emb.chains.size(); ++x) {
        Chain& chain = emb.chains[x];
        bool changed = true;
        while (changed && chain.size() > 1) {
            changed = false;
            for (std::size_t i = chain.size(); i-- > 0;) {
                if (removable(x, chain, chain[i])) {
                    owner[chain[i]] = kFree;
                    chain.erase(chain.begin() + static_cast<std::ptrdiff_t>(i));
                    changed = true;
                    break;
                }
            }
        }
    }
}

}  // namespace qembed
