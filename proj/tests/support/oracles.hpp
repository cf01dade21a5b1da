// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 readpath contributors

#pragma once

#include "readpath/steiner.hpp"

#include <cstdint>
#include <random>
#include <span>
#include <utility>
#include <vector>

namespace oracle {

using readpath::WeightedGraph;
using Index = WeightedGraph::Index;

/// All-pairs distances by Floyd-Warshall under the entry-cost convention:
/// d[s][t] = sum of edge costs on the path + weights of every node after s.
std::vector<std::vector<double>> floyd_warshall(const WeightedGraph& g);

/// PageRank by dense power iteration over an explicit Google matrix.
/// `links` are (citing, cited) pairs over nodes 0..n-1.
std::vector<double> dense_pagerank(std::size_t n, std::span<const std::pair<int, int>> links,
                                   double damping, int iterations = 5000);

/// Prim's algorithm on a dense matrix; returns the spanning tree weight, or
/// +inf when `nodes` is disconnected in `g`.
double prim_weight(const WeightedGraph& g, std::span<const Index> nodes);

struct ExactTree {
    double cost = 0.0;
    std::vector<Index> nodes;
    std::vector<std::pair<Index, Index>> edges;
    std::size_t leaves = 0;
};

/// Minimum node- and edge-weighted Steiner tree by enumerating every node set
/// that contains the terminals. Exponential; keep graphs at 16 nodes or fewer.
ExactTree exact_steiner(const WeightedGraph& g, std::span<const Index> terminals);

/// Random connected graph: a random spanning tree plus extra edges.
struct RandomGraphSpec {
    int min_nodes = 4;
    int max_nodes = 12;
    double extra_edge_prob = 0.3;
    double min_weight = 1.0;
    double max_weight = 10.0;
    double min_cost = 1.0;
    double max_cost = 10.0;
    /// Draw whole numbers so that path sums are exact in double precision.
    bool integral = false;
};

WeightedGraph random_graph(std::mt19937_64& rng, const RandomGraphSpec& spec);

/// Between 2 and `max_count` distinct nodes, sorted.
std::vector<Index> random_terminals(std::mt19937_64& rng, const WeightedGraph& g,
                                    std::size_t max_count);

} // namespace oracle
