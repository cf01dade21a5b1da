// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 readpath contributors

#pragma once

#include "readpath/corpus.hpp"

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace readpath {

/// Simple undirected graph with strictly positive node weights and edge costs.
/// Nodes are kept sorted by id, so index order is lexicographic id order.
class WeightedGraph {
public:
    using Index = std::uint32_t;
    static constexpr Index npos = std::numeric_limits<Index>::max();

    struct NodeSpec {
        PaperId id;
        double weight;
    };
    struct EdgeSpec {
        PaperId u;
        PaperId v;
        double cost;
    };
    /// Stored with u < v.
    struct Edge {
        Index u;
        Index v;
        double cost;

        bool operator==(const Edge&) const = default;
    };
    struct Adjacent {
        Index to;
        double cost;
    };

    WeightedGraph() = default;
    /// Throws on duplicate ids, self-loops, parallel edges, unknown endpoints or
    /// non-positive weights.
    WeightedGraph(std::vector<NodeSpec> nodes, std::vector<EdgeSpec> edges);

    std::size_t size() const noexcept { return ids_.size(); }
    std::size_t edge_count() const noexcept { return edges_.size(); }

    const PaperId& id(Index i) const { return ids_.at(i); }
    double weight(Index i) const { return weights_.at(i); }
    std::optional<Index> index_of(std::string_view id) const;
    Index require(std::string_view id) const;

    /// Sorted by (u, v).
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    /// Sorted by neighbor index.
    std::span<const Adjacent> neighbors(Index i) const { return adjacency_.at(i); }
    std::optional<double> edge_cost(Index u, Index v) const;

    /// Connected-component label per node, labels numbered by smallest member.
    std::vector<Index> component_labels() const;

private:
    std::vector<PaperId> ids_;
    std::vector<double> weights_;
    std::unordered_map<PaperId, Index> index_;
    std::vector<Edge> edges_;
    std::vector<std::vector<Adjacent>> adjacency_;
};

/// Single-source shortest paths. Entering node v over edge {u,v} costs
/// c(u,v) + w(v); the source's own weight is not counted.
struct PathRow {
    WeightedGraph::Index source = WeightedGraph::npos;
    std::vector<double> dist;
    /// npos for the source and for unreachable nodes.
    std::vector<WeightedGraph::Index> pred;

    bool reachable(WeightedGraph::Index v) const {
        return dist.at(v) != std::numeric_limits<double>::infinity();
    }
    /// Node sequence source..target; empty when unreachable.
    std::vector<WeightedGraph::Index> path_to(WeightedGraph::Index target) const;
};

/// Dijkstra under the entry-cost convention. Equal-distance ties pick the
/// lexicographically smallest predecessor.
PathRow shortest_paths(const WeightedGraph& graph, WeightedGraph::Index source);
PathRow shortest_paths(const WeightedGraph& graph, std::string_view source);

struct ClosureEdge {
    WeightedGraph::Index s;  ///< smaller terminal index
    WeightedGraph::Index t;
    /// Shortest-path distance from s to t (entry-cost convention, includes w(t)).
    double distance;
    /// Edges plus interior nodes of that path: distance - w(t). Symmetric in
    /// s and t; this is what the closure MST minimizes.
    double connection;
};

/// Complete distance graph over the terminals of one connected component.
struct MetricClosure {
    std::vector<WeightedGraph::Index> terminals;  ///< sorted
    std::vector<ClosureEdge> edges;
    /// One row per terminal, same order as `terminals`.
    std::vector<PathRow> rows;

    const PathRow& row_of(WeightedGraph::Index terminal) const;
};

struct ClosureSet {
    std::vector<MetricClosure> components;
    /// Terminals with no other terminal in their component.
    std::vector<WeightedGraph::Index> isolated;
};

ClosureSet metric_closure(const WeightedGraph& graph,
                          std::span<const WeightedGraph::Index> terminals);

struct SpanEdge {
    WeightedGraph::Index u;
    WeightedGraph::Index v;
    double cost;

    bool operator==(const SpanEdge&) const = default;
};

/// Kruskal over `edges` spanning exactly `nodes`. Ties are broken by
/// (cost, smaller endpoint, larger endpoint). Throws if `nodes` is not
/// connected by `edges`.
std::vector<SpanEdge> minimum_spanning_tree(std::span<const WeightedGraph::Index> nodes,
                                            std::vector<SpanEdge> edges);

/// Node/edge subset of a WeightedGraph.
struct Subtree {
    std::vector<WeightedGraph::Index> nodes;  ///< sorted, unique
    std::vector<SpanEdge> edges;               ///< u < v, sorted, unique

    bool operator==(const Subtree&) const = default;
};

/// Union of the shortest paths behind each closure MST edge.
Subtree expand_tree(const WeightedGraph& graph, std::span<const SpanEdge> closure_mst,
                    const MetricClosure& closure);

/// Repeatedly drops leaves that are not terminals.
Subtree prune_nonterminal_leaves(Subtree tree,
                                 std::span<const WeightedGraph::Index> terminals);

/// Solution over one or more terminal components.
struct SteinerTree {
    struct TreeEdge {
        PaperId u;  ///< lexicographically smaller endpoint
        PaperId v;
        double cost;

        bool operator==(const TreeEdge&) const = default;
    };

    std::vector<PaperId> nodes;  ///< sorted
    std::vector<TreeEdge> edges; ///< sorted by (u, v)
    std::vector<PaperId> terminals;
    std::vector<PaperId> isolated_terminals;
    std::size_t components = 0;
    double total_cost = 0.0;

    bool contains(std::string_view id) const;
    bool operator==(const SteinerTree&) const = default;
};

/// Sum of edge costs plus node weights, in the stored order.
double tree_cost(const WeightedGraph& graph, const SteinerTree& tree);

SteinerTree to_steiner_tree(const WeightedGraph& graph, const Subtree& tree,
                            std::span<const WeightedGraph::Index> terminals,
                            std::span<const WeightedGraph::Index> isolated,
                            std::size_t components);

/// Closure -> MST -> expand -> MST -> prune, per terminal component.
/// Throws on an empty or unknown terminal.
SteinerTree newst(const WeightedGraph& graph, std::span<const PaperId> terminals);

} // namespace readpath
