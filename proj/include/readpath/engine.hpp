// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 readpath contributors

#pragma once

#include "readpath/config.hpp"
#include "readpath/corpus.hpp"
#include "readpath/pipeline.hpp"
#include "readpath/scoring.hpp"
#include "readpath/seeding.hpp"

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>

#include <nlohmann/json_fwd.hpp>

namespace readpath {

/// Answer to one reading-path query.
struct QueryResult {
    struct NodeInfo {
        PaperId id;
        std::string title;
        std::vector<std::string> authors;
        int year = kUndatedYear;
        std::optional<std::string> venue;
        double score = 0.0;  ///< combined importance
        double pgscore = 0.0;
        double venue_score = 0.0;
        bool seed = false;
        bool terminal = false;
    };

    std::string query;
    std::vector<PaperId> seeds;
    std::size_t dropped_seeds = 0;
    TerminalSet terminals;
    std::vector<NodeInfo> nodes;  ///< same order as path.nodes
    ReadingPath path;
    std::vector<PaperId> reading_order;
    std::vector<PaperId> top_k;
    std::vector<PaperId> isolated_terminals;
    std::size_t components = 0;
    double tree_cost = 0.0;
    // Timing in the #nodes / #edges / seconds shape.
    std::size_t graph_nodes = 0;
    std::size_t graph_edges = 0;
    double seconds = 0.0;
};

nlohmann::json to_json(const QueryResult& result, bool include_timing = true);
nlohmann::json to_json(const PaperRecord& record);

/// Raw PageRank cache written by ingest, tied to a corpus fingerprint.
void write_pagerank_cache(const std::filesystem::path& path, const CitationGraph& graph,
                          const ScoreParams& params, const ScoreMap& raw);
/// Returns nullopt when the cache belongs to another corpus or parameters.
std::optional<ScoreMap> read_pagerank_cache(const std::filesystem::path& path,
                                            const CitationGraph& graph,
                                            const ScoreParams& params);

std::unique_ptr<SeedProvider> make_seed_provider(const SeedProviderConfig& config);

/// Loaded corpus plus seed provider. Read-only after construction; safe to
/// share between threads.
class Engine {
public:
    Engine(EngineConfig config, Corpus corpus, std::shared_ptr<const SeedProvider> provider,
           std::optional<ScoreMap> cached_pagerank = std::nullopt);

    static std::shared_ptr<Engine> from_config(const EngineConfig& config);

    /// Runs the full pipeline in its default (NEWST) configuration.
    QueryResult query(QuerySpec spec, Deadline deadline = no_deadline()) const;

    const EngineConfig& config() const noexcept { return config_; }
    const Corpus& corpus() const noexcept { return corpus_; }

private:
    struct View {
        std::shared_ptr<const CitationGraph> graph;
        std::shared_ptr<const NodeScores> scores;
    };
    View view_for(std::optional<int> cutoff_year) const;

    EngineConfig config_;
    Corpus corpus_;
    std::shared_ptr<const SeedProvider> provider_;
    std::shared_ptr<const CitationGraph> full_graph_;
    std::shared_ptr<const NodeScores> full_scores_;

    mutable std::mutex views_mutex_;
    mutable std::map<int, View> views_;
};

} // namespace readpath
