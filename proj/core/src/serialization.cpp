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


#include "serialization.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <string>

#include "qembed/errors.hpp"

namespace qembed {

Json embedding_to_json(const Embedding& emb) {
    Json j;
    j["problem_size"] = emb.problem_size;
    j["qpu_label"] = emb.qpu_label;
    Json chains = Json::array();
    for (const auto& chain : emb.chains) chains.push_back(chain);
    j["chains"] = std::move(chains);
    return j;
}

Embedding embedding_from_json(const Json& j) {
    try {
        Embedding emb;
        emb.problem_size = j.at("problem_size").get<std::size_t>();
        emb.qpu_label = j.at("qpu_label").get<std::string>();
        emb.chains = j.at("chains").get<std::vector<Chain>>();
        return emb;
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(0, std::string("invalid embedding: ") + e.what());
    }
}

namespace {

Json optional_number(const std::optional<double>& value) {
    return value ? Json(*value) : Json(nullptr);
}

std::optional<double> read_optional(const Json& j) {
    if (j.is_null()) return std::nullopt;
    return j.get<double>();
}

Json params_to_json(const QpuConfig& config) {
    Json p;
    if (const auto* z = std::get_if<ZephyrParams>(&config.params)) {
        p["m"] = z->m;
        p["t"] = z->t;
    } else if (const auto* h = std::get_if<HavelHakimiParams>(&config.params)) {
        p["deg"] = h->deg;
        p["num_qubits"] = h->num_qubits;
    } else {
        p["name"] = std::get<CustomHost>(config.params).name;
    }
    return p;
}

QpuConfig config_from_json(const std::string& family, const Json& p) {
    if (family == "zephyr") return zephyr_config(p.at("m").get<std::size_t>(), p.at("t").get<std::size_t>());
    if (family == "havel_hakimi") {
        return havel_hakimi_config(p.at("deg").get<std::size_t>(), p.at("num_qubits").get<std::size_t>());
    }
    if (family == "custom") return {CustomHost{p.at("name").get<std::string>(), nullptr}};
    throw FormatError(0, "unknown family '" + family + "'");
}

}  // namespace

Json result_to_json(const MaxCliqueResult& r) {
    Json j;
    j["label"] = r.qpu.config.label();
    j["family"] = family_name(r.qpu.config.family());
    j["params"] = params_to_json(r.qpu.config);
    j["nodes"] = r.qpu.node_count;
    j["edges"] = r.qpu.edge_count;
    j["avg_degree"] = r.qpu.average_degree;
    j["regularity"] = optional_number(r.qpu.regularity);
    j["modularity"] = optional_number(r.qpu.modularity);
    j["community_count"] = r.qpu.community_count;
    j["component_count"] = r.qpu.component_count;
    j["max"] = r.max;
    Json stats;
    stats["mean"] = r.stats.mean;
    stats["median"] = r.stats.median;
    stats["mode"] = r.stats.mode;
    stats["max"] = r.stats.max;
    stats["total"] = r.stats.total;
    j["chain_stats"] = std::move(stats);
    Json log = Json::array();
    for (const auto& probe : r.attempts_log) {
        Json entry;
        entry["n"] = probe.n;
        entry["success"] = probe.success;
        entry["attempts"] = probe.attempts;
        log.push_back(std::move(entry));
    }
    j["attempts_log"] = std::move(log);
    j["witness"] = embedding_to_json(r.witness);
    j["error"] = r.error ? Json(*r.error) : Json(nullptr);
    return j;
}

MaxCliqueResult result_from_json(const Json& j) {
    try {
        MaxCliqueResult r;
        r.qpu.config = config_from_json(j.at("family").get<std::string>(), j.at("params"));
        if (r.qpu.config.label() != j.at("label").get<std::string>()) {
            throw FormatError(0, "label does not match family parameters");
        }
        r.qpu.node_count = j.at("nodes").get<std::size_t>();
        r.qpu.edge_count = j.at("edges").get<std::size_t>();
        r.qpu.average_degree = j.at("avg_degree").get<double>();
        r.qpu.regularity = read_optional(j.at("regularity"));
        r.qpu.modularity = read_optional(j.at("modularity"));
        r.qpu.community_count = j.at("community_count").get<std::size_t>();
        r.qpu.component_count = j.at("component_count").get<std::size_t>();
        r.max = j.at("max").get<std::size_t>();
        const Json& stats = j.at("chain_stats");
        r.stats.mean = stats.at("mean").get<double>();
        r.stats.median = stats.at("median").get<double>();
        r.stats.mode = stats.at("mode").get<std::size_t>();
        r.stats.max = stats.at("max").get<std::size_t>();
        r.stats.total = stats.at("total").get<std::size_t>();
        for (const Json& entry : j.at("attempts_log")) {
            r.attempts_log.push_back({entry.at("n").get<std::size_t>(), entry.at("success").get<bool>(),
                                      entry.at("attempts").get<std::size_t>()});
        }
        r.witness = embedding_from_json(j.at("witness"));
        if (!j.at("error").is_null()) r.error = j.at("error").get<std::string>();
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(0, std::string("invalid result row: ") + e.what());
    }
}

std::string to_json_line(const MaxCliqueResult& result) { return result_to_json(result).dump(); }

MaxCliqueResult result_from_json(std::string_view line) {
    Json j;
    try {
        j = Json::parse(line);
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(0, std::string("invalid json: ") + e.what());
    }
    return result_from_json(j);
}

void write_results_jsonl(std::ostream& out, std::span<const MaxCliqueResult> results) {
    for (const auto& r : results) out << to_json_line(r) << '\n';
}

std::vector<MaxCliqueResult> read_results_jsonl(std::istream& in) {
    std::vector<MaxCliqueResult> results;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        try {
            results.push_back(result_from_json(std::string_view(line)));
        } catch (const FormatError& e) {
            throw FormatError(line_no, e.what());
        }
    }
    if (results.empty()) throw FormatError(0, "results file contains no rows");
    return results;
}

std::string format_double(double value) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, end);
}

void write_results_csv(std::ostream& out, std::span<const MaxCliqueResult> results) {
    out << "family,label,nodes,edges,avg_degree,regularity,modularity,max,mean_chain,median_chain,"
           "mode_chain,x_norm,y_norm\n";
    auto opt = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string(); };
    for (const auto& r : results) {
        const auto n = static_cast<double>(r.qpu.node_count);
        const bool ok = !r.error && r.qpu.node_count > 0;
        out << family_name(r.qpu.config.family()) << ',' << r.qpu.config.label() << ','
            << r.qpu.node_count << ',' << r.qpu.edge_count << ',' << format_double(r.qpu.average_degree)
            << ',' << opt(r.qpu.regularity) << ',' << opt(r.qpu.modularity) << ',' << r.max << ',';
        if (ok) {
            out << format_double(r.stats.mean) << ',' << format_double(r.stats.median) << ','
                << r.stats.mode << ',' << format_double(r.qpu.average_degree / n) << ','
                << format_double(static_cast<double>(r.max) / n);
        } else {
            out << ",,,,";
        }
        out << '\n';
    }
}

}  // namespace qembed
