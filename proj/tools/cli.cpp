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


#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "qembed/errors.hpp"
#include "qembed/evaluation.hpp"
#include "qembed/graph.hpp"
#include "qembed/metrics.hpp"

namespace qembed::cli {
namespace {

using Json = nlohmann::ordered_json;

// Raised for unreadable or unwritable files; reported like malformed data.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

template <typename T>
T parse_number(const std::string& token, const std::string& flag) {
    T value{};
    const char* first = token.data();
    const char* last = first + token.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (token.empty() || ec != std::errc() || ptr != last) {
        throw UsageError(token, "invalid value for " + flag + ": '" + token + "'");
    }
    return value;
}

std::size_t parse_positive(const std::string& token, const std::string& flag) {
    const auto value = parse_number<std::size_t>(token, flag);
    if (value == 0) throw UsageError(token, flag + " must be positive");
    return value;
}

// Splits "A,B" into two positive integers.
std::pair<std::size_t, std::size_t> parse_pair(const std::string& token, std::string_view body,
                                               const std::string& what) {
    const auto comma = body.find(',');
    if (comma == std::string_view::npos) {
        throw UsageError(token, "expected " + what + ", got '" + token + "'");
    }
    auto number = [&](std::string_view text) {
        std::size_t value = 0;
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (text.empty() || ec != std::errc() || ptr != text.data() + text.size() || value == 0) {
            throw UsageError(token, "expected " + what + ", got '" + token + "'");
        }
        return value;
    };
    return {number(body.substr(0, comma)), number(body.substr(comma + 1))};
}

struct EmbedFlags {
    std::string seed, tries, rounds, penalty_base, history_step, timeout_ms;
    bool no_trim = false;
};

void add_embed_flags(CLI::App* app, EmbedFlags& flags) {
    app->add_option("--seed", flags.seed, "Base seed (default 0)");
    app->add_option("--tries", flags.tries, "Restarts per embedding call (default 16)");
    app->add_option("--rounds", flags.rounds, "Refinement rounds per try (default 32)");
    app->add_option("--penalty-base", flags.penalty_base, "Overlap cost growth (default 10)");
    app->add_option("--history-step", flags.history_step,
                    "Congestion history increment, 0 disables (default 100)");
    app->add_option("--timeout-ms", flags.timeout_ms, "Wall-clock limit per embedding call");
    app->add_flag("--no-trim", flags.no_trim, "Skip the chain trimming pass");
}

EmbedParams resolve_embed_flags(const CLI::App* app, const EmbedFlags& flags) {
    EmbedParams params;
    if (app->count("--seed")) params.seed = parse_number<std::uint64_t>(flags.seed, "--seed");
    if (app->count("--tries")) params.max_tries = parse_positive(flags.tries, "--tries");
    if (app->count("--rounds")) params.max_rounds = parse_positive(flags.rounds, "--rounds");
    if (app->count("--penalty-base")) {
        params.penalty_base = parse_number<double>(flags.penalty_base, "--penalty-base");
        if (!(params.penalty_base > 1.0) || !std::isfinite(params.penalty_base)) {
            throw UsageError(flags.penalty_base, "--penalty-base must be a finite value > 1");
        }
    }
    if (app->count("--history-step")) {
        params.history_step = parse_number<double>(flags.history_step, "--history-step");
        if (!(params.history_step >= 0.0) || !std::isfinite(params.history_step)) {
            throw UsageError(flags.history_step, "--history-step must be a finite value >= 0");
        }
    }
    if (app->count("--timeout-ms")) params.timeout_ms = parse_positive(flags.timeout_ms, "--timeout-ms");
    params.trim_chains = !flags.no_trim;
    return params;
}

std::size_t default_workers(const std::optional<std::string>& workers_env) {
    if (workers_env && !workers_env->empty()) {
        return parse_positive(*workers_env, std::string(kWorkersEnv));
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

const char* kUsage =
    "qembed: topology generation, minor embedding and clique expressiveness sweeps";

}  // namespace

std::optional<QpuConfig> parse_qpu_spec(const std::string& spec) {
    const std::string_view view(spec);
    if (view.starts_with("zephyr:")) {
        const auto [m, t] = parse_pair(spec, view.substr(7), "zephyr:M,T");
        return zephyr_config(m, t);
    }
    if (view.starts_with("hh:")) {
        const auto [deg, n] = parse_pair(spec, view.substr(3), "hh:DEG,N");
        try {
            return havel_hakimi_config(deg, n);
        } catch (const InputError& e) {
            throw UsageError(spec, e.what());
        }
    }
    if (spec.empty()) throw UsageError(spec, "empty host spec");
    return std::nullopt;
}

RunConfig parse_args(std::span<const std::string> args) {
    std::optional<std::string> env;
    if (const char* value = std::getenv(kWorkersEnv)) env = value;
    return parse_args(args, env);
}

RunConfig parse_args(std::span<const std::string> args, std::optional<std::string> workers_env) {
    CLI::App app{kUsage, "qembed"};
    app.require_subcommand(1);
    app.allow_extras(false);

    std::string output;
    auto add_output = [&](CLI::App* sub) {
        sub->add_option("-o,--output", output, "Output file (default: standard output)");
    };

    auto* generate = app.add_subcommand("generate", "Write a host topology as an edge list");
    std::string family, m, t, deg, n;
    bool stats = false;
    generate->add_option("--family", family, "zephyr or hh");
    generate->add_option("--m", m, "Zephyr grid size");
    generate->add_option("--t", t, "Zephyr tile size");
    generate->add_option("--deg", deg, "Havel-Hakimi degree");
    generate->add_option("--n", n, "Havel-Hakimi node count");
    generate->add_flag("--stats", stats, "Also print a JSON line of topology metrics");
    add_output(generate);

    auto* metrics = app.add_subcommand("metrics", "Print topology metrics of an edge list");
    std::string graph_path;
    metrics->add_option("--graph", graph_path, "Edge-list file");
    add_output(metrics);

    EmbedFlags embed_flags;
    std::vector<std::string> qpus;

    auto* embed = app.add_subcommand("embed", "Embed one problem graph into one host");
    std::string problem;
    embed->add_option("--problem", problem, "Edge-list file or clique:N");
    embed->add_option("--qpu", qpus, "Host: edge-list file, zephyr:M,T or hh:DEG,N");
    add_embed_flags(embed, embed_flags);
    add_output(embed);

    auto* maxclique = app.add_subcommand("maxclique", "Largest clique the heuristic embeds");
    std::string attempts;
    maxclique->add_option("--qpu", qpus, "Host: edge-list file, zephyr:M,T or hh:DEG,N");
    maxclique->add_option("--attempts", attempts, "Embedding calls per clique size (default 3)");
    add_embed_flags(maxclique, embed_flags);
    add_output(maxclique);

    auto* sweep = app.add_subcommand("sweep", "Largest embeddable clique over a config grid");
    bool desk = false, full = false;
    std::string workers, checkpoint, format, csv_path;
    sweep->add_flag("--desk", desk, "Small grid (default)");
    sweep->add_flag("--full", full, "All 300 grid configs");
    sweep->add_option("--qpu", qpus, "Custom host, repeatable");
    sweep->add_option("--attempts", attempts, "Embedding calls per clique size (default 3)");
    sweep->add_option("--workers", workers, "Parallel rows (default: QEMBED_WORKERS or core count)");
    sweep->add_option("--checkpoint", checkpoint, "JSON-lines file of completed rows");
    sweep->add_option("--format", format, "jsonl (default) or csv");
    sweep->add_option("--csv", csv_path, "Also write the CSV export here");
    add_embed_flags(sweep, embed_flags);
    add_output(sweep);

    auto* report = app.add_subcommand("report", "Plot data and trend summary from sweep results");
    std::string results, kind;
    report->add_option("--results", results, "Sweep results (JSON lines)");
    report->add_option("--kind", kind, "fig2a, fig2b or summary (default)");
    add_output(report);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        RunConfig config;
        const auto selected = app.get_subcommands();
        config.help_text = selected.empty() ? app.help() : selected.front()->help();
        return config;
    } catch (const CLI::ExtrasError&) {
        // The unmatched arguments are what remains of the reversed list.
        const std::string token = reversed.empty() ? std::string() : reversed.back();
        throw UsageError(token, "unexpected argument '" + token + "'");
    } catch (const CLI::ParseError& e) {
        std::string token;
        for (const auto& arg : args) {
            if (std::string(e.what()).find(arg) != std::string::npos) {
                token = arg;
                break;
            }
        }
        if (token.empty() && !args.empty()) token = args.front();
        throw UsageError(token, e.what());
    }

    RunConfig config;
    if (!output.empty()) config.output = output;
    auto require = [](const std::string& value, const char* flag) {
        if (value.empty()) throw UsageError(flag, std::string("missing required option ") + flag);
    };
    auto single_qpu = [&]() {
        if (qpus.empty()) throw UsageError("--qpu", "missing required option --qpu");
        if (qpus.size() > 1) throw UsageError(qpus[1], "only one --qpu is allowed here");
        parse_qpu_spec(qpus.front());
        config.qpus = qpus;
    };

    if (generate->parsed()) {
        config.command = Command::generate;
        config.stats = stats;
        require(family, "--family");
        if (family == "zephyr") {
            require(m, "--m");
            require(t, "--t");
            config.generator = zephyr_config(parse_positive(m, "--m"), parse_positive(t, "--t"));
        } else if (family == "hh") {
            require(deg, "--deg");
            require(n, "--n");
            const auto d = parse_positive(deg, "--deg");
            const auto count = parse_positive(n, "--n");
            try {
                config.generator = havel_hakimi_config(d, count);
            } catch (const InputError& e) {
                throw UsageError(generate->count("--deg") ? deg : n, e.what());
            }
        } else {
            throw UsageError(family, "--family must be zephyr or hh, got '" + family + "'");
        }
    } else if (metrics->parsed()) {
        config.command = Command::metrics;
        require(graph_path, "--graph");
        config.graph_path = graph_path;
    } else if (embed->parsed()) {
        config.command = Command::embed;
        require(problem, "--problem");
        if (std::string_view(problem).starts_with("clique:")) {
            const std::string size = problem.substr(7);
            std::size_t value = 0;
            const auto [ptr, ec] = std::from_chars(size.data(), size.data() + size.size(), value);
            if (size.empty() || ec != std::errc() || ptr != size.data() + size.size() || value == 0) {
                throw UsageError(problem, "clique size must be an integer >= 1, got '" + problem + "'");
            }
            config.clique = value;
        } else {
            config.problem_path = problem;
        }
        single_qpu();
        config.embed = resolve_embed_flags(embed, embed_flags);
    } else if (maxclique->parsed()) {
        config.command = Command::maxclique;
        single_qpu();
        config.embed = resolve_embed_flags(maxclique, embed_flags);
        if (maxclique->count("--attempts")) config.attempts_per_n = parse_positive(attempts, "--attempts");
    } else if (sweep->parsed()) {
        config.command = Command::sweep;
        const int scopes = int(desk) + int(full) + int(!qpus.empty());
        if (scopes > 1) {
            throw UsageError(full ? "--full" : "--qpu", "choose one of --desk, --full or --qpu");
        }
        if (full) config.scope = SweepScope::full;
        if (!qpus.empty()) {
            config.scope = SweepScope::custom;
            for (const auto& spec : qpus) parse_qpu_spec(spec);
            config.qpus = qpus;
        }
        config.embed = resolve_embed_flags(sweep, embed_flags);
        if (sweep->count("--attempts")) config.attempts_per_n = parse_positive(attempts, "--attempts");
        config.workers = sweep->count("--workers") ? parse_positive(workers, "--workers")
                                                   : default_workers(workers_env);
        if (!checkpoint.empty()) config.checkpoint = checkpoint;
        if (!csv_path.empty()) config.csv_path = csv_path;
        if (sweep->count("--format")) {
            if (format == "jsonl") {
                config.format = OutputFormat::jsonl;
            } else if (format == "csv") {
                config.format = OutputFormat::csv;
            } else {
                throw UsageError(format, "--format must be jsonl or csv, got '" + format + "'");
            }
        }
    } else if (report->parsed()) {
        config.command = Command::report;
        require(results, "--results");
        config.results_path = results;
        if (report->count("--kind")) {
            const auto parsed = parse_report_kind(kind);
            if (!parsed) throw UsageError(kind, "--kind must be fig2a, fig2b or summary, got '" + kind + "'");
            config.kind = *parsed;
        }
    }
    return config;
}

namespace {

Graph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    try {
        return read_edge_list(in);
    } catch (const FormatError& e) {
        throw FormatError(0, path + ": " + e.what());
    }
}

QpuConfig resolve_qpu(const std::string& spec) {
    if (auto config = parse_qpu_spec(spec)) return *config;
    Graph g = load_graph(spec);
    return custom_config(std::filesystem::path(spec).stem().string(), std::move(g));
}

Json metrics_json(const Graph& g) {
    Json j;
    j["nodes"] = g.node_count();
    j["edges"] = g.edge_count();
    if (g.empty()) {
        for (const char* key : {"avg_degree", "min_degree", "max_degree", "degree_stddev", "regularity",
                                "modularity", "community_count"}) {
            j[key] = nullptr;
        }
        j["component_count"] = 0;
        return j;
    }
    const DegreeStats ds = degree_stats(g);
    j["avg_degree"] = ds.mean_degree;
    j["min_degree"] = ds.min_degree;
    j["max_degree"] = ds.max_degree;
    j["degree_stddev"] = ds.degree_stddev;
    if (g.edge_count() > 0) {
        const ModularityResult mod = modularity_partition(g);
        j["regularity"] = regularity(g);
        j["modularity"] = mod.q;
        j["community_count"] = mod.community_count;
    } else {
        j["regularity"] = nullptr;
        j["modularity"] = nullptr;
        j["community_count"] = nullptr;
    }
    j["component_count"] = connected_components(g).size();
    return j;
}

// Standard output or a file opened for writing.
class Sink {
public:
    Sink(const std::optional<std::string>& path, std::ostream& fallback) : stream_(&fallback) {
        if (path) {
            file_.open(*path, std::ios::binary);
            if (!file_) throw IoError("cannot write '" + *path + "'");
            stream_ = &file_;
        }
    }

    std::ostream& get() { return *stream_; }

    void close() {
        stream_->flush();
        if (!*stream_) throw IoError("write failed");
    }

private:
    std::ofstream file_;
    std::ostream* stream_;
};

int run_generate(const RunConfig& config, std::ostream& out) {
    const Graph g = build_graph(*config.generator);
    Sink sink(config.output, out);
    write_edge_list(sink.get(), g);
    sink.close();
    if (config.stats) out << metrics_json(g).dump() << '\n';
    return kExitOk;
}

int run_metrics(const RunConfig& config, std::ostream& out) {
    const Graph g = load_graph(config.graph_path);
    Sink sink(config.output, out);
    sink.get() << metrics_json(g).dump() << '\n';
    sink.close();
    return kExitOk;
}

int run_embed(const RunConfig& config, std::ostream& out, std::ostream& err) {
    const Graph gp = config.clique ? complete_graph(*config.clique) : load_graph(config.problem_path);
    const QpuConfig host = resolve_qpu(config.qpus.front());
    const Graph gq = build_graph(host);
    const EmbedOutcome outcome = find_embedding(gp, gq, config.embed, host.label());
    if (!outcome.ok()) {
        err << "embedding failed (" << status_name(outcome.status) << "): " << outcome.reason << '\n';
        return kExitData;
    }
    Sink sink(config.output, out);
    sink.get() << to_json(outcome.embedding) << '\n';
    sink.close();
    return kExitOk;
}

int run_maxclique(const RunConfig& config, std::ostream& out) {
    const QpuConfig host = resolve_qpu(config.qpus.front());
    const Graph gq = build_graph(host);
    const MaxCliqueResult result = max_embeddable_clique(host, gq, config.embed, config.attempts_per_n);
    Sink sink(config.output, out);
    sink.get() << to_json_line(result) << '\n';
    sink.close();
    return kExitOk;
}

int run_sweep_command(const RunConfig& config, std::ostream& out, std::ostream& err) {
    std::vector<QpuConfig> configs;
    switch (config.scope) {
        case SweepScope::desk: configs = desk_configs(); break;
        case SweepScope::full: configs = sweep_configs(); break;
        case SweepScope::custom:
            for (const auto& spec : config.qpus) configs.push_back(resolve_qpu(spec));
            break;
    }

    SweepOptions options;
    options.workers = config.workers;
    if (config.checkpoint) options.checkpoint = *config.checkpoint;
    std::size_t done = 0;
    options.on_row = [&](const MaxCliqueResult& row) {
        err << '[' << ++done << '/' << configs.size() << "] " << row.qpu.config.label();
        if (row.error) {
            err << " error: " << *row.error << '\n';
        } else {
            err << " max=" << row.max << '\n';
        }
    };
    const auto results = run_sweep(configs, config.embed, config.attempts_per_n, options);

    Sink sink(config.output, out);
    if (config.format == OutputFormat::csv) {
        write_results_csv(sink.get(), results);
    } else {
        write_results_jsonl(sink.get(), results);
    }
    sink.close();
    if (config.csv_path) {
        Sink csv(config.csv_path, out);
        write_results_csv(csv.get(), results);
        csv.close();
    }

    const auto failed = std::count_if(results.begin(), results.end(),
                                      [](const MaxCliqueResult& r) { return r.error.has_value(); });
    if (failed > 0) {
        err << failed << " of " << results.size() << " rows failed\n";
        return kExitRowFailures;
    }
    return kExitOk;
}

int run_report(const RunConfig& config, std::ostream& out) {
    std::ifstream in(config.results_path);
    if (!in) throw IoError("cannot open '" + config.results_path + "'");
    const auto results = read_results_jsonl(in);
    // Render fully before touching the output so a failure leaves no partial file.
    std::ostringstream rendered;
    write_report(rendered, results, config.kind);
    Sink sink(config.output, out);
    sink.get() << rendered.str();
    sink.close();
    return kExitOk;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        switch (config.command) {
            case Command::help: out << config.help_text; return kExitOk;
            case Command::generate: return run_generate(config, out);
            case Command::metrics: return run_metrics(config, out);
            case Command::embed: return run_embed(config, out, err);
            case Command::maxclique: return run_maxclique(config, out);
            case Command::sweep: return run_sweep_command(config, out, err);
            case Command::report: return run_report(config, out);
        }
    } catch (const std::runtime_error& e) {  // malformed files, I/O
        err << "error: " << e.what() << '\n';
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
    } catch (const UndefinedMetricError& e) {
        err << "error: " << e.what() << '\n';
    }
    return kExitData;
}

int main_entry(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
    RunConfig config;
    try {
        config = parse_args(args);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\nrun 'qembed --help' for the command list\n";
        return kExitUsage;
    }
    return run(config, out, err);
}

}  // namespace qembed::cli
