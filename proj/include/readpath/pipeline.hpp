// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 readpath contributors

#pragma once

#include "readpath/corpus.hpp"
#include "readpath/pathgen.hpp"
#include "readpath/scoring.hpp"
#include "readpath/seeding.hpp"
#include "readpath/steiner.hpp"

#include <optional>
#include <string_view>
#include <vector>

namespace readpath {

/// How the final paper list is produced.
enum class Mode {
    Newst,             ///< tree over the configured terminal mode (reallocated by default)
    NewstW,            ///< tree over the initial seeds
    NewstU,            ///< tree over reallocated + seeds
    NewstI,            ///< tree over reallocated ∩ seeds
    NewstC,            ///< reallocated papers ranked directly, no tree
    NewstN,            ///< tree with uniform node weights
    NewstE,            ///< tree with uniform edge costs
    PagerankBaseline,  ///< whole neighborhood ranked by raw PageRank
    SeedsOnly,         ///< provider seeds as returned
};

Mode parse_mode(std::string_view text);
const char* to_string(Mode mode);
std::vector<Mode> all_modes();

struct PipelineOptions {
    ScoreParams params;
    int cooccurrence_threshold = 2;
    int neighborhood_order = 2;
    Direction direction = Direction::Out;
    /// Terminal selection used by Mode::Newst and the N/E ablations.
    TerminalMode terminal_mode = TerminalMode::Reallocated;

    void validate() const;
};

/// Everything one query produced. `tree`/`path` are empty for modes that skip
/// the Steiner step.
struct PipelineResult {
    Mode mode = Mode::Newst;
    SeedSet seeds;
    CitationGraph subgraph;
    NodeScores scores;  ///< restricted to the subgraph
    TerminalSet terminals;
    std::optional<SteinerTree> tree;
    std::optional<ReadingPath> path;
    std::vector<PaperId> order;
    /// Ranked output list, at most k papers.
    std::vector<PaperId> ranked;
    std::size_t graph_nodes = 0;
    std::size_t graph_edges = 0;
    double seconds = 0.0;
};

/// Subgraph nodes ranked by raw PageRank (ties by id), truncated to k.
std::vector<PaperId> pagerank_baseline(const CitationGraph& subgraph, const NodeScores& scores,
                                       int k);

/// Steps 2-5 for already resolved seeds. `graph` must already be filtered to
/// what the query may see; `scores` must cover it.
PipelineResult run_pipeline(const CitationGraph& graph, const NodeScores& scores,
                            const SeedSet& seeds, const PipelineOptions& options, Mode mode,
                            int k);

} // namespace readpath
