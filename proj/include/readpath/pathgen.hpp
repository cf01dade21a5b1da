// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 readpath contributors

#pragma once

#include "readpath/corpus.hpp"
#include "readpath/scoring.hpp"
#include "readpath/steiner.hpp"

#include <span>
#include <vector>

namespace readpath {

/// Directed reading path: arrows run prerequisite -> dependent.
struct ReadingPath {
    struct Node {
        PaperId id;
        int year = kUndatedYear;
        /// Combined importance (a * pgscore + b * venue); 0 when unscored.
        double weight = 0.0;
    };
    struct Edge {
        PaperId from;
        PaperId to;
        /// Mentions summed over both directions (0 when the papers never cite
        /// each other in the corpus).
        int mentions = 0;
        /// Display weight, the inverse of the edge cost.
        double relevance = 0.0;
    };

    std::vector<Node> nodes;  ///< sorted by id
    std::vector<Edge> edges;  ///< sorted by (from, to)
    std::vector<PaperId> roots;
};

/// Directs every tree edge: cited before citing; otherwise older before newer,
/// then smaller id first.
ReadingPath orient(const SteinerTree& tree, const CitationGraph& corpus,
                   const NodeScores* scores = nullptr);

/// Kahn topological order; ready nodes are taken by (year, id). Throws
/// Error(Internal) on a cycle.
std::vector<PaperId> reading_order(const ReadingPath& path);

/// Papers ordered by combined score descending, ties by id ascending.
std::vector<PaperId> rank_by_score(std::span<const PaperId> ids, const ScoreMap& scores);

/// Tree nodes by combined score, padded from `spares` (already ranked) up to k.
std::vector<PaperId> top_k_list(const SteinerTree& tree, const NodeScores& scores,
                                std::span<const PaperId> spares, int k);

} // namespace readpath
