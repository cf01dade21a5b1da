// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 readpath contributors

#pragma once

#include "readpath/corpus.hpp"

#include <string>
#include <unordered_map>

namespace readpath {

class WeightedGraph;

/// Cost-model constants. alpha/beta shape edge costs, gamma/a/b shape node
/// weights; the rest configure PageRank and the score floors.
struct ScoreParams {
    double alpha = 3.0;
    double beta = 2.0;
    double gamma = 5.0;
    double a = 0.7;
    double b = 0.3;

    double damping = 0.85;
    double pr_tolerance = 1e-8;
    int pr_max_iters = 100;

    /// Lower clamp for normalized PageRank; keeps every combined score > 0.
    double epsilon_floor = 1e-4;
    /// Venue score for papers without a venue or with one missing from the table.
    double missing_venue_score = 0.1;

    /// Throws Error(InvalidArgument) naming the first bad field.
    void validate() const;
};

using ScoreMap = std::unordered_map<PaperId, double>;

/// PageRank over citation edges; rank flows from citing to cited paper.
/// Dangling papers spread their mass uniformly. Result sums to 1.
ScoreMap pagerank(const CitationGraph& graph, const ScoreParams& params);

/// Divides by the maximum and clamps from below at `epsilon_floor`.
ScoreMap normalize_pgscore(const ScoreMap& raw, double epsilon_floor);

/// gamma / (a * pgscore + b * venue)
double node_weight(const ScoreParams& params, double pgscore_norm, double venue);

/// alpha / con^beta
double edge_cost(const ScoreParams& params, int con);

/// Per-paper importance inputs for the cost model.
struct NodeScores {
    ScoreMap raw_pagerank;
    ScoreMap pgscore;
    ScoreMap venue;
    ScoreMap combined;

    bool contains(const PaperId& id) const { return combined.contains(id); }
    double combined_of(const PaperId& id) const;
};

/// Scores every paper of `graph`, PageRank computed on `graph` itself.
NodeScores compute_node_scores(const CitationGraph& graph, const VenueTable& venues,
                               const ScoreParams& params);

/// Scores from a precomputed raw PageRank map (e.g. a cache).
NodeScores node_scores_from_pagerank(const CitationGraph& graph, const VenueTable& venues,
                                     const ScoreParams& params, ScoreMap raw);

/// Keeps only the papers of `subgraph`. Normalization is not redone, so the
/// restricted scores keep their global scale.
NodeScores restrict_scores(const NodeScores& scores, const CitationGraph& subgraph);

/// Overrides used by the NEWST-N / NEWST-E ablations.
struct WeightOverrides {
    bool uniform_node_weights = false;
    bool uniform_edge_costs = false;
    double uniform_value = 1.0;
};

/// Undirected weighted instance of the subgraph. Reciprocal citations are
/// merged into one edge whose con is the summed mentions.
WeightedGraph build_weighted_graph(const CitationGraph& subgraph, const NodeScores& scores,
                                   const ScoreParams& params,
                                   const WeightOverrides& overrides = {});

} // namespace readpath
