// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 readpath contributors

#include "readpath/config.hpp"
#include "readpath/engine.hpp"
#include "readpath/error.hpp"
#include "readpath/evalbench.hpp"
#include "readpath/server.hpp"
#include "readpath/synth.hpp"

#include <csignal>
#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

namespace {

using namespace readpath;
using json = nlohmann::json;

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
    out << text;
}

void print_load_report(const LoadReport& r) {
    std::printf("papers: %zu\ncitations: %zu\n", r.papers, r.citations);
    std::printf("dropped dangling citations: %zu\n", r.dangling);
    std::printf("dropped self-citations: %zu\n", r.self_citations);
    std::printf("merged duplicate citations: %zu\n", r.merged_duplicate_targets);
    std::printf("undated papers: %zu\n", r.undated.size());
    if (!r.dangling_samples.empty()) {
        std::printf("dangling samples:");
        for (const auto& id : r.dangling_samples) std::printf(" %s", id.c_str());
        std::printf("\n");
    }
}

struct CorpusPaths {
    std::string config;
    std::string papers;
    std::string venues;

    void add(CLI::App* cmd) {
        cmd->add_option("--config", config, "Engine config (JSON)");
        cmd->add_option("--papers", papers, "Papers JSONL");
        cmd->add_option("--venues", venues, "Venue scores JSON");
    }

    EngineConfig resolve() const {
        EngineConfig c;
        if (!config.empty()) c = load_engine_config(config);
        if (!papers.empty()) c.papers = papers;
        if (!venues.empty()) c.venues = venues;
        if (c.papers.empty() || c.venues.empty()) {
            throw Error(ErrorCode::InvalidArgument, "need --config or both --papers and --venues");
        }
        return c;
    }
};

int run_ingest(const CorpusPaths& paths, const std::string& cache, bool strict) {
    const auto config = paths.resolve();
    auto corpus = load_corpus(config.papers, config.venues);
    print_load_report(corpus.report);
    std::printf("venues: %zu\n", corpus.venues.size());
    if (!cache.empty() || config.pagerank_cache) {
        const std::filesystem::path target = cache.empty() ? *config.pagerank_cache : std::filesystem::path(cache);
        const auto raw = pagerank(corpus.graph, config.pipeline.params);
        write_pagerank_cache(target, corpus.graph, config.pipeline.params, raw);
        std::printf("pagerank cache: %s\n", target.string().c_str());
    }
    if (strict && !corpus.report.clean()) {
        std::fprintf(stderr, "readpath: corpus needed repairs (--strict)\n");
        return 3;
    }
    return 0;
}

std::vector<std::string> split_list(const std::vector<std::string>& items) {
    std::vector<std::string> out;
    for (const auto& item : items) {
        std::size_t start = 0;
        while (start <= item.size()) {
            const auto comma = item.find(',', start);
            const auto piece = item.substr(start, comma == std::string::npos ? std::string::npos
                                                                              : comma - start);
            if (!piece.empty()) out.push_back(piece);
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
    }
    return out;
}

std::vector<int> to_ints(const std::vector<std::string>& items, const char* what) {
    std::vector<int> out;
    for (const auto& s : split_list(items)) {
        try {
            std::size_t used = 0;
            const int v = std::stoi(s, &used);
            if (used != s.size()) throw std::invalid_argument(s);
            out.push_back(v);
        } catch (const std::exception&) {
            throw Error(ErrorCode::InvalidArgument, std::string("bad ") + what + " value \"" + s + "\"");
        }
    }
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Reading-path generation over a citation graph"};
    app.require_subcommand(1);

    CorpusPaths ingest_paths;
    std::string ingest_cache;
    bool ingest_strict = false;
    auto* ingest = app.add_subcommand("ingest", "Validate a corpus and precompute PageRank");
    ingest_paths.add(ingest);
    ingest->add_option("--cache", ingest_cache, "Write the PageRank cache here");
    ingest->add_flag("--strict", ingest_strict, "Fail when the corpus needed repairs");

    std::string query_config;
    std::vector<std::string> query_phrases;
    int query_k = 0;
    int query_k_seeds = 0;
    int query_cutoff = 0;
    std::string query_out;
    bool query_no_timing = false;
    auto* query = app.add_subcommand("query", "Answer one query and print JSON");
    query->add_option("--config", query_config, "Engine config (JSON)")->required();
    query->add_option("--phrases,-p", query_phrases, "Key phrase (repeatable)")->required();
    query->add_option("--k", query_k, "Papers in the top-k list");
    query->add_option("--k-seeds", query_k_seeds, "Seeds to request");
    query->add_option("--cutoff-year", query_cutoff, "Ignore papers after this year");
    query->add_option("--out,-o", query_out, "Write JSON here instead of stdout");
    query->add_flag("--no-timing", query_no_timing, "Omit wall-clock seconds from the output");

    CorpusPaths eval_paths;
    std::string eval_bench;
    std::vector<std::string> eval_modes{"NEWST"};
    std::vector<std::string> eval_ks{"20,30,40,50"};
    std::vector<std::string> eval_levels{"1,2,3"};
    std::vector<std::string> eval_seeds{"30"};
    std::string eval_out = "eval-out";
    int eval_jobs = 1;
    auto* eval = app.add_subcommand("eval", "Score modes against a survey benchmark");
    eval_paths.add(eval);
    eval->add_option("--benchmark", eval_bench, "Benchmark JSONL")->required();
    eval->add_option("--modes", eval_modes, "Modes, comma separated, or ALL");
    eval->add_option("--K", eval_ks, "Cut-offs, comma separated");
    eval->add_option("--levels", eval_levels, "Ground-truth levels, comma separated");
    eval->add_option("--seeds", eval_seeds, "Seed counts, comma separated");
    eval->add_option("--out-dir", eval_out, "Directory for report.json / report.csv / runtime.json");
    eval->add_option("--jobs,-j", eval_jobs, "Worker threads");

    std::string serve_config;
    std::string serve_host;
    int serve_port = -1;
    auto* serve = app.add_subcommand("serve", "Run the HTTP API");
    serve->add_option("--config", serve_config, "Engine config (JSON)")->required();
    serve->add_option("--host", serve_host, "Override the bind address");
    serve->add_option("--port", serve_port, "Override the port");

    std::string synth_out;
    std::string synth_kind = "benchmark";
    std::uint64_t synth_seed = 0;
    auto* synth = app.add_subcommand("synth", "Generate a synthetic fixture");
    synth->add_option("--out-dir", synth_out, "Output directory")->required();
    synth->add_option("--kind", synth_kind, "benchmark or fanout")
        ->check(CLI::IsMember({"benchmark", "fanout"}));
    synth->add_option("--seed", synth_seed, "RNG seed (0 keeps the default)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*ingest) return run_ingest(ingest_paths, ingest_cache, ingest_strict);

        if (*query) {
            const auto engine = Engine::from_config(load_engine_config(query_config));
            QuerySpec spec;
            spec.key_phrases = query_phrases;
            spec.k_seeds = query_k_seeds > 0 ? query_k_seeds : engine->config().k_seeds;
            spec.k_output = query_k > 0 ? query_k : engine->config().k_output;
            if (query_cutoff > 0) spec.cutoff_year = query_cutoff;
            const auto text = to_json(engine->query(spec), !query_no_timing).dump(2) + "\n";
            if (query_out.empty()) {
                std::cout << text;
            } else {
                write_file(query_out, text);
            }
            return 0;
        }

        if (*eval) {
            const auto config = eval_paths.resolve();
            const auto corpus = load_corpus(config.papers, config.venues);
            const auto bench = load_benchmark(eval_bench);
            EvalConfig ec;
            ec.pipeline = config.pipeline;
            ec.modes.clear();
            for (const auto& m : split_list(eval_modes)) {
                if (m == "ALL" || m == "all") {
                    ec.modes = all_modes();
                    break;
                }
                ec.modes.push_back(parse_mode(m));
            }
            ec.ks = to_ints(eval_ks, "--K");
            ec.levels = to_ints(eval_levels, "--levels");
            ec.seed_counts = to_ints(eval_seeds, "--seeds");
            ec.jobs = eval_jobs;
            const auto report = run_eval(bench, corpus, ec);

            const std::filesystem::path dir(eval_out);
            std::error_code fs_error;
            std::filesystem::create_directories(dir, fs_error);
            if (fs_error) throw Error(ErrorCode::Io, "cannot create " + dir.string());
            write_file(dir / "report.json", report_json(report));
            write_file(dir / "report.csv", report_csv(report));
            write_file(dir / "runtime.json", runtime_json(report));

            std::printf("%-18s %6s %4s %5s %9s %9s %9s\n", "mode", "seeds", "K", "level",
                        "precision", "recall", "f1");
            for (const auto& a : report.aggregates) {
                std::printf("%-18s %6d %4d %5d %9.4f %9.4f %9.4f\n", to_string(a.mode), a.k_seeds,
                            a.k, a.level, a.precision, a.recall, a.f1);
            }
            for (const auto& s : report.skipped) {
                std::fprintf(stderr, "skipped %s (seeds %d): %s\n", s.survey_id.c_str(), s.k_seeds,
                             s.reason.c_str());
            }
            return 0;
        }

        if (*serve) {
            auto config = load_engine_config(serve_config);
            if (!serve_host.empty()) config.host = serve_host;
            if (serve_port >= 0) config.port = serve_port;
            config.validate();
            const auto engine = Engine::from_config(config);
            ApiServer server(engine);
            std::fprintf(stderr, "readpath: serving %zu papers on http://%s:%d\n",
                         engine->corpus().graph.size(), config.host.c_str(), config.port);
            if (!server.listen(config.host, config.port)) {
                throw Error(ErrorCode::Io, "cannot listen on " + config.host + ":" +
                                               std::to_string(config.port));
            }
            return 0;
        }

        if (*synth) {
            SynthCorpus corpus;
            if (synth_kind == "fanout") {
                FanoutShape shape;
                if (synth_seed != 0) shape.rng_seed = synth_seed;
                corpus = make_fanout_corpus(shape);
            } else {
                BenchmarkShape shape;
                if (synth_seed != 0) shape.rng_seed = synth_seed;
                corpus = make_benchmark_corpus(shape);
            }
            write_fixture(corpus, synth_out);
            std::printf("wrote %zu papers, %zu benchmark entries to %s\n", corpus.papers.size(),
                        corpus.benchmark.size(), synth_out.c_str());
            return 0;
        }
    } catch (const Error& e) {
        std::fprintf(stderr, "readpath: %s: %s\n", to_string(e.code()), e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "readpath: error: %s\n", e.what());
        return 2;
    }
    return 0;
}
