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


#include "qembed/evaluation.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <thread>

#include "qembed/errors.hpp"
#include "qembed/metrics.hpp"
#include "rng.hpp"
#include "serialization.hpp"

namespace qembed {

QpuRecord describe_qpu(const QpuConfig& config, const Graph& gq) {
    QpuRecord record;
    record.config = config;
    record.node_count = gq.node_count();
    record.edge_count = gq.edge_count();
    if (!gq.empty()) record.average_degree = degree_stats(gq).mean_degree;
    if (gq.edge_count() > 0) {
        record.regularity = regularity(gq);
        const ModularityResult mod = modularity_partition(gq);
        record.modularity = mod.q;
        record.community_count = mod.community_count;
    } else {
        record.community_count = gq.node_count();
    }
    record.component_count = connected_components(gq).size();
    return record;
}

namespace {

class CliqueSearch {
public:
    CliqueSearch(const Graph& gq, const EmbedParams& params, std::size_t attempts_per_n,
                 std::string label)
        : gq_(gq), params_(params), attempts_per_n_(attempts_per_n), label_(std::move(label)) {}

    void run(MaxCliqueResult& result) {
        // K_1: a single-node chain on host node 0.
        std::size_t lo = 1;
        result.witness = {{{0}}, label_, 1};

        const std::size_t limit = gq_.node_count();
        std::size_t hi = limit + 1;
        for (std::size_t n = 2; n <= limit; n *= 2) {
            if (probe(n, result)) {
                lo = n;
            } else {
                hi = n;
                break;
            }
        }
        while (hi - lo > 1) {
            const std::size_t mid = lo + (hi - lo) / 2;
            if (probe(mid, result)) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        result.max = lo;
        result.stats = chain_stats(result.witness);
    }

private:
    bool probe(std::size_t n, MaxCliqueResult& result) {
        const Graph clique = complete_graph(n);
        CliqueProbe entry{n, false, 0};
        for (std::size_t attempt = 0; attempt < attempts_per_n_; ++attempt) {
            EmbedParams params = params_;
            params.seed = detail::derive_seed(params_.seed, n, attempt);
            EmbedOutcome outcome = find_embedding(clique, gq_, params, label_);
            ++entry.attempts;
            if (outcome.ok() && verify_embedding(clique, gq_, outcome.embedding).valid()) {
                entry.success = true;
                result.witness = std::move(outcome.embedding);
                break;
            }
        }
        result.attempts_log.push_back(entry);
        return entry.success;
    }

    const Graph& gq_;
    const EmbedParams& params_;
    std::size_t attempts_per_n_;
    std::string label_;
};

}  // namespace

MaxCliqueResult max_embeddable_clique(const QpuConfig& config, const Graph& gq,
                                      const EmbedParams& params, std::size_t attempts_per_n) {
    if (gq.empty()) throw InputError("host graph has no nodes");
    if (attempts_per_n == 0) throw InputError("attempts_per_n must be positive");
    validate(params);

    MaxCliqueResult result;
    result.qpu = describe_qpu(config, gq);
    CliqueSearch(gq, params, attempts_per_n, config.label()).run(result);
    return result;
}

MaxCliqueResult max_embeddable_clique(const Graph& gq, const EmbedParams& params,
                                      std::size_t attempts_per_n) {
    return max_embeddable_clique(custom_config("host", gq), gq, params, attempts_per_n);
}

namespace {

std::map<std::string, MaxCliqueResult> load_checkpoint(const std::filesystem::path& path) {
    std::map<std::string, MaxCliqueResult> rows;
    std::ifstream in(path);
    if (!in) return rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        try {
            MaxCliqueResult row = result_from_json(std::string_view(line));
            std::string label = row.qpu.config.label();
            rows.insert_or_assign(std::move(label), std::move(row));
        } catch (const FormatError& e) {
            throw FormatError(line_no, "checkpoint " + path.string() + ": " + e.what());
        }
    }
    return rows;
}

// Rewrites the whole checkpoint through a temporary file so a crash leaves
// either the old or the new contents.
void write_checkpoint(const std::filesystem::path& path, const std::vector<std::string>& lines) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        for (const auto& line : lines) out << line << '\n';
        out.flush();
        if (!out) throw std::runtime_error("cannot write checkpoint " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace

namespace {

// Independent check of a finished row's witness against its host.
void reverify_witness(MaxCliqueResult& row, const Graph& gq) {
    if (row.error) return;
    const ValidityReport report = verify_embedding(complete_graph(row.max), gq, row.witness);
    if (!report.valid()) row.error = "witness failed verification: " + report.violations.front().describe();
}

}  // namespace

std::vector<MaxCliqueResult> run_sweep(std::span<const QpuConfig> configs, const EmbedParams& params,
                                       std::size_t attempts_per_n, const SweepOptions& options) {
    if (configs.empty()) throw InputError("sweep needs at least one config");
    if (options.workers == 0) throw InputError("sweep needs at least one worker");
    validate(params);

    std::vector<MaxCliqueResult> results(configs.size());
    std::vector<char> done(configs.size(), 0);
    std::vector<std::string> checkpoint_lines;

    if (options.checkpoint) {
        auto saved = load_checkpoint(*options.checkpoint);
        for (std::size_t i = 0; i < configs.size(); ++i) {
            auto it = saved.find(configs[i].label());
            if (it == saved.end()) continue;
            results[i] = std::move(it->second);
            // Custom hosts are not recoverable from JSON; keep the live config.
            results[i].qpu.config = configs[i];
            reverify_witness(results[i], build_graph(configs[i]));
            done[i] = 1;
            checkpoint_lines.push_back(to_json_line(results[i]));
        }
    }

    std::vector<std::size_t> pending;
    for (std::size_t i = 0; i < configs.size(); ++i)
        if (!done[i]) pending.push_back(i);

    std::atomic<std::size_t> next{0};
    std::mutex mutex;
    std::exception_ptr write_failure;
    auto worker = [&] {
        for (std::size_t slot = next++; slot < pending.size(); slot = next++) {
            const std::size_t i = pending[slot];
            MaxCliqueResult row;
            try {
                const Graph gq = build_graph(configs[i]);
                row = max_embeddable_clique(configs[i], gq, params, attempts_per_n);
                reverify_witness(row, gq);
            } catch (const std::exception& e) {
                row = MaxCliqueResult{};
                row.qpu.config = configs[i];
                row.error = e.what();
            }
            std::lock_guard lock(mutex);
            results[i] = std::move(row);
            if (options.checkpoint && !write_failure) {
                checkpoint_lines.push_back(to_json_line(results[i]));
                try {
                    write_checkpoint(*options.checkpoint, checkpoint_lines);
                } catch (...) {
                    write_failure = std::current_exception();
                }
            }
            if (options.on_row) options.on_row(results[i]);
        }
    };

    const std::size_t thread_count = std::min(options.workers, std::max<std::size_t>(pending.size(), 1));
    if (thread_count <= 1) {
        worker();
    } else {
        std::vector<std::jthread> threads;
        threads.reserve(thread_count);
        for (std::size_t t = 0; t < thread_count; ++t) threads.emplace_back(worker);
    }
    if (write_failure) std::rethrow_exception(write_failure);
    return results;
}

std::vector<NormalizedPoint> normalize(std::span<const MaxCliqueResult> results) {
    std::vector<NormalizedPoint> points;
    points.reserve(results.size());
    for (const auto& r : results) {
        if (r.error || r.qpu.node_count == 0) continue;
        const auto n = static_cast<double>(r.qpu.node_count);
        points.push_back({r.qpu.config.family(), r.qpu.config.label(), r.qpu.average_degree / n,
                          static_cast<double>(r.max) / n, r.stats.median});
    }
    return points;
}

namespace {

// Solves the 3x3 system a * c = b by Gaussian elimination with partial
// pivoting. Returns false when the system is singular.
bool solve3(std::array<std::array<double, 3>, 3> a, std::array<double, 3> b, std::array<double, 3>& c) {
    for (std::size_t col = 0; col < 3; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < 3; ++r)
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
        if (std::abs(a[pivot][col]) < 1e-300) return false;
        std::swap(a[col], a[pivot]);
        std::swap(b[col], b[pivot]);
        for (std::size_t r = col + 1; r < 3; ++r) {
            const double f = a[r][col] / a[col][col];
            for (std::size_t k = col; k < 3; ++k) a[r][k] -= f * a[col][k];
            b[r] -= f * b[col];
        }
    }
    for (std::size_t r = 3; r-- > 0;) {
        double s = b[r];
        for (std::size_t k = r + 1; k < 3; ++k) s -= a[r][k] * c[k];
        c[r] = s / a[r][r];
    }
    return true;
}

}  // namespace

TrendSummary trend_summary(std::span<const NormalizedPoint> points, QpuFamily family) {
    std::vector<double> xs;
    std::vector<double> ys;
    double median_sum = 0.0;
    for (const auto& p : points) {
        if (p.family != family) continue;
        xs.push_back(p.x);
        ys.push_back(p.y);
        median_sum += p.median_chain;
    }
    const std::size_t n = xs.size();
    if (n < 3) {
        throw InputError(std::string("trend summary needs at least 3 ") + family_name(family) +
                         " points, got " + std::to_string(n));
    }

    TrendSummary s;
    s.family = family;
    s.points = n;
    s.mean_median_chain = median_sum / static_cast<double>(n);

    const auto count = static_cast<double>(n);
    double x_mean = 0.0;
    double y_mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        x_mean += xs[i];
        y_mean += ys[i];
    }
    x_mean /= count;
    y_mean /= count;

    // Centered moments keep both fits well conditioned for tiny x ranges.
    double sxx = 0.0, sxy = 0.0, syy = 0.0, s3 = 0.0, s4 = 0.0, sx2y = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = xs[i] - x_mean;
        const double dy = ys[i] - y_mean;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
        s3 += dx * dx * dx;
        s4 += dx * dx * dx * dx;
        sx2y += dx * dx * dy;
    }

    if (sxx > 0.0) {
        s.slope = sxy / sxx;
        s.intercept = y_mean - s.slope * x_mean;
        double ss_res = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double r = ys[i] - (s.intercept + s.slope * xs[i]);
            ss_res += r * r;
        }
        s.r_squared = syy > 0.0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
    } else {
        s.slope = 0.0;
        s.intercept = y_mean;
        s.r_squared = syy > 0.0 ? 0.0 : 1.0;
    }

    // Quadratic fit y - y_mean = c0 + c1 dx + c2 dx^2 via its normal equations.
    std::array<std::array<double, 3>, 3> a{{{count, 0.0, sxx}, {0.0, sxx, s3}, {sxx, s3, s4}}};
    std::array<double, 3> b{0.0, sxy, sx2y};
    std::array<double, 3> c{};
    if (solve3(a, b, c)) {
        s.quadratic_coefficient = c[2];
        const double scale = std::sqrt(syy / count) / std::max(sxx / count, 1e-300);
        const double tolerance = 1e-9 * std::max(scale, 1e-300);
        if (s.quadratic_coefficient > tolerance) {
            s.concavity_indicator = 1;
        } else if (s.quadratic_coefficient < -tolerance) {
            s.concavity_indicator = -1;
        }
        if (syy == 0.0) s.concavity_indicator = 0;
    }
    return s;
}

}  // namespace qembed
