// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 readpath contributors

#include "readpath/steiner.hpp"

#include "readpath/error.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <tuple>

namespace readpath {

using Index = WeightedGraph::Index;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

class DisjointSets {
public:
    explicit DisjointSets(std::size_t n) : parent_(n), rank_(n, 0) {
        std::iota(parent_.begin(), parent_.end(), Index{0});
    }
    Index find(Index x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }
    bool unite(Index a, Index b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (rank_[a] < rank_[b]) std::swap(a, b);
        parent_[b] = a;
        if (rank_[a] == rank_[b]) ++rank_[a];
        return true;
    }

private:
    std::vector<Index> parent_;
    std::vector<int> rank_;
};

bool valid_positive(double x) { return std::isfinite(x) && x > 0.0; }

} // namespace

WeightedGraph::WeightedGraph(std::vector<NodeSpec> nodes, std::vector<EdgeSpec> edges) {
    std::sort(nodes.begin(), nodes.end(),
              [](const NodeSpec& a, const NodeSpec& b) { return a.id < b.id; });
    ids_.reserve(nodes.size());
    weights_.reserve(nodes.size());
    for (auto& n : nodes) {
        if (!ids_.empty() && ids_.back() == n.id) {
            throw Error(ErrorCode::InvalidArgument, "duplicate node \"" + n.id + "\"");
        }
        if (!valid_positive(n.weight)) {
            throw Error(ErrorCode::InvalidArgument,
                        "node \"" + n.id + "\" needs a positive finite weight");
        }
        ids_.push_back(std::move(n.id));
        weights_.push_back(n.weight);
    }
    for (Index i = 0; i < ids_.size(); ++i) index_.emplace(ids_[i], i);

    edges_.reserve(edges.size());
    for (const auto& e : edges) {
        auto u = index_of(e.u);
        auto v = index_of(e.v);
        if (!u || !v) {
            throw Error(ErrorCode::InvalidArgument,
                        "edge {" + e.u + ", " + e.v + "} has an unknown endpoint");
        }
        if (*u == *v) {
            throw Error(ErrorCode::InvalidArgument, "self-loop on \"" + e.u + "\"");
        }
        if (!valid_positive(e.cost)) {
            throw Error(ErrorCode::InvalidArgument,
                        "edge {" + e.u + ", " + e.v + "} needs a positive finite cost");
        }
        edges_.push_back({std::min(*u, *v), std::max(*u, *v), e.cost});
    }
    std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
        return std::tie(a.u, a.v) < std::tie(b.u, b.v);
    });
    for (std::size_t i = 1; i < edges_.size(); ++i) {
        if (edges_[i].u == edges_[i - 1].u && edges_[i].v == edges_[i - 1].v) {
            throw Error(ErrorCode::InvalidArgument, "parallel edge {" + ids_[edges_[i].u] +
                                                        ", " + ids_[edges_[i].v] + "}");
        }
    }
    adjacency_.assign(ids_.size(), {});
    for (const auto& e : edges_) {
        adjacency_[e.u].push_back({e.v, e.cost});
        adjacency_[e.v].push_back({e.u, e.cost});
    }
    for (auto& adj : adjacency_) {
        std::sort(adj.begin(), adj.end(),
                  [](const Adjacent& a, const Adjacent& b) { return a.to < b.to; });
    }
}

std::optional<Index> WeightedGraph::index_of(std::string_view id) const {
    auto it = index_.find(PaperId(id));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

Index WeightedGraph::require(std::string_view id) const {
    auto idx = index_of(id);
    if (!idx) throw Error(ErrorCode::NotFound, "node \"" + std::string(id) + "\" not in graph");
    return *idx;
}

std::optional<double> WeightedGraph::edge_cost(Index u, Index v) const {
    const auto& adj = adjacency_.at(u);
    auto it = std::lower_bound(adj.begin(), adj.end(), v,
                               [](const Adjacent& a, Index t) { return a.to < t; });
    if (it == adj.end() || it->to != v) return std::nullopt;
    return it->cost;
}

std::vector<Index> WeightedGraph::component_labels() const {
    DisjointSets sets(size());
    for (const auto& e : edges_) sets.unite(e.u, e.v);
    std::vector<Index> label(size(), npos);
    std::vector<Index> root_label(size(), npos);
    for (Index i = 0; i < size(); ++i) {
        auto r = sets.find(i);
        if (root_label[r] == npos) root_label[r] = i;
        label[i] = root_label[r];
    }
    return label;
}

std::vector<Index> PathRow::path_to(Index target) const {
    if (!reachable(target)) return {};
    std::vector<Index> path{target};
    while (path.back() != source) {
        auto p = pred.at(path.back());
        if (p == WeightedGraph::npos) {
            throw Error(ErrorCode::Internal, "broken predecessor chain");
        }
        path.push_back(p);
    }
    std::reverse(path.begin(), path.end());
    return path;
}

PathRow shortest_paths(const WeightedGraph& graph, Index source) {
    if (source >= graph.size()) {
        throw Error(ErrorCode::NotFound, "shortest_paths source out of range");
    }
    PathRow row;
    row.source = source;
    row.dist.assign(graph.size(), kInf);
    row.pred.assign(graph.size(), WeightedGraph::npos);
    row.dist[source] = 0.0;

    using Entry = std::pair<double, Index>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
    std::vector<char> settled(graph.size(), 0);
    heap.emplace(0.0, source);
    while (!heap.empty()) {
        auto [d, u] = heap.top();
        heap.pop();
        if (settled[u]) continue;
        settled[u] = 1;
        for (const auto& [v, cost] : graph.neighbors(u)) {
            if (settled[v]) continue;
            const double nd = d + cost + graph.weight(v);
            if (nd < row.dist[v]) {
                row.dist[v] = nd;
                row.pred[v] = u;
                heap.emplace(nd, v);
            } else if (nd == row.dist[v] && u < row.pred[v]) {
                row.pred[v] = u;
            }
        }
    }
    return row;
}

PathRow shortest_paths(const WeightedGraph& graph, std::string_view source) {
    return shortest_paths(graph, graph.require(source));
}

const PathRow& MetricClosure::row_of(Index terminal) const {
    auto it = std::lower_bound(terminals.begin(), terminals.end(), terminal);
    if (it == terminals.end() || *it != terminal) {
        throw Error(ErrorCode::Internal, "terminal has no path row");
    }
    return rows[static_cast<std::size_t>(it - terminals.begin())];
}

ClosureSet metric_closure(const WeightedGraph& graph, std::span<const Index> terminals) {
    std::vector<Index> sorted(terminals.begin(), terminals.end());
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (auto t : sorted) {
        if (t >= graph.size()) throw Error(ErrorCode::NotFound, "terminal out of range");
    }

    const auto labels = graph.component_labels();
    std::map<Index, std::vector<Index>> by_component;
    for (auto t : sorted) by_component[labels[t]].push_back(t);

    ClosureSet out;
    for (auto& [label, members] : by_component) {
        if (members.size() < 2) {
            out.isolated.push_back(members.front());
            continue;
        }
        MetricClosure closure;
        closure.terminals = members;
        closure.rows.reserve(members.size());
        for (auto t : members) closure.rows.push_back(shortest_paths(graph, t));
        for (std::size_t i = 0; i < members.size(); ++i) {
            for (std::size_t j = i + 1; j < members.size(); ++j) {
                const auto s = members[i];
                const auto t = members[j];
                const double d = closure.rows[i].dist[t];
                closure.edges.push_back({s, t, d, d - graph.weight(t)});
            }
        }
        out.components.push_back(std::move(closure));
    }
    std::sort(out.isolated.begin(), out.isolated.end());
    return out;
}

std::vector<SpanEdge> minimum_spanning_tree(std::span<const Index> nodes,
                                            std::vector<SpanEdge> edges) {
    std::vector<Index> members(nodes.begin(), nodes.end());
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    if (members.size() <= 1) return {};

    auto local = [&](Index v) -> std::size_t {
        auto it = std::lower_bound(members.begin(), members.end(), v);
        if (it == members.end() || *it != v) {
            throw Error(ErrorCode::InvalidArgument, "MST edge endpoint outside node set");
        }
        return static_cast<std::size_t>(it - members.begin());
    };
    for (auto& e : edges) {
        if (e.u > e.v) std::swap(e.u, e.v);
    }
    std::sort(edges.begin(), edges.end(), [](const SpanEdge& a, const SpanEdge& b) {
        return std::tie(a.cost, a.u, a.v) < std::tie(b.cost, b.u, b.v);
    });

    DisjointSets sets(members.size());
    std::vector<SpanEdge> tree;
    tree.reserve(members.size() - 1);
    for (const auto& e : edges) {
        if (sets.unite(static_cast<Index>(local(e.u)), static_cast<Index>(local(e.v)))) {
            tree.push_back(e);
            if (tree.size() + 1 == members.size()) break;
        }
    }
    if (tree.size() + 1 != members.size()) {
        throw Error(ErrorCode::InvalidArgument, "minimum_spanning_tree: input is disconnected");
    }
    std::sort(tree.begin(), tree.end(), [](const SpanEdge& a, const SpanEdge& b) {
        return std::tie(a.u, a.v) < std::tie(b.u, b.v);
    });
    return tree;
}

Subtree expand_tree(const WeightedGraph& graph, std::span<const SpanEdge> closure_mst,
                    const MetricClosure& closure) {
    std::set<Index> nodes(closure.terminals.begin(), closure.terminals.end());
    std::set<std::pair<Index, Index>> edge_keys;
    for (const auto& e : closure_mst) {
        const auto s = std::min(e.u, e.v);
        const auto t = std::max(e.u, e.v);
        const auto path = closure.row_of(s).path_to(t);
        if (path.empty()) {
            throw Error(ErrorCode::Internal, "closure edge without a recorded path");
        }
        for (std::size_t i = 0; i < path.size(); ++i) {
            nodes.insert(path[i]);
            if (i > 0) {
                edge_keys.emplace(std::min(path[i - 1], path[i]), std::max(path[i - 1], path[i]));
            }
        }
    }
    Subtree out;
    out.nodes.assign(nodes.begin(), nodes.end());
    for (const auto& [u, v] : edge_keys) {
        out.edges.push_back({u, v, *graph.edge_cost(u, v)});
    }
    return out;
}

Subtree prune_nonterminal_leaves(Subtree tree, std::span<const Index> terminals) {
    std::set<Index> required(terminals.begin(), terminals.end());
    std::map<Index, std::vector<std::size_t>> incident;
    for (auto n : tree.nodes) incident[n];
    for (std::size_t i = 0; i < tree.edges.size(); ++i) {
        incident[tree.edges[i].u].push_back(i);
        incident[tree.edges[i].v].push_back(i);
    }
    std::vector<char> edge_alive(tree.edges.size(), 1);
    std::map<Index, std::size_t> degree;
    for (const auto& [n, list] : incident) degree[n] = list.size();

    std::set<Index> removed;
    std::vector<Index> stack;
    for (const auto& [n, d] : degree) {
        if (d == 1 && !required.contains(n)) stack.push_back(n);
    }
    while (!stack.empty()) {
        const auto leaf = stack.back();
        stack.pop_back();
        if (removed.contains(leaf) || degree[leaf] != 1) continue;
        removed.insert(leaf);
        degree[leaf] = 0;
        for (auto ei : incident[leaf]) {
            if (!edge_alive[ei]) continue;
            edge_alive[ei] = 0;
            const auto other = tree.edges[ei].u == leaf ? tree.edges[ei].v : tree.edges[ei].u;
            if (--degree[other] == 1 && !required.contains(other)) stack.push_back(other);
        }
    }

    Subtree out;
    for (auto n : tree.nodes) {
        if (!removed.contains(n)) out.nodes.push_back(n);
    }
    for (std::size_t i = 0; i < tree.edges.size(); ++i) {
        if (edge_alive[i]) out.edges.push_back(tree.edges[i]);
    }
    return out;
}

bool SteinerTree::contains(std::string_view id) const {
    return std::binary_search(nodes.begin(), nodes.end(), id,
                              [](const auto& a, const auto& b) {
                                  return std::string_view(a) < std::string_view(b);
                              });
}

double tree_cost(const WeightedGraph& graph, const SteinerTree& tree) {
    double total = 0.0;
    for (const auto& e : tree.edges) total += e.cost;
    for (const auto& n : tree.nodes) total += graph.weight(graph.require(n));
    return total;
}

SteinerTree to_steiner_tree(const WeightedGraph& graph, const Subtree& tree,
                            std::span<const Index> terminals, std::span<const Index> isolated,
                            std::size_t components) {
    SteinerTree out;
    // Index order is id order, so these stay sorted.
    for (auto n : tree.nodes) out.nodes.push_back(graph.id(n));
    for (const auto& e : tree.edges) {
        out.edges.push_back({graph.id(std::min(e.u, e.v)), graph.id(std::max(e.u, e.v)), e.cost});
    }
    std::sort(out.edges.begin(), out.edges.end(), [](const auto& a, const auto& b) {
        return std::tie(a.u, a.v) < std::tie(b.u, b.v);
    });
    for (auto t : terminals) out.terminals.push_back(graph.id(t));
    for (auto t : isolated) out.isolated_terminals.push_back(graph.id(t));
    out.components = components;
    out.total_cost = tree_cost(graph, out);
    return out;
}

SteinerTree newst(const WeightedGraph& graph, std::span<const PaperId> terminals) {
    if (terminals.empty()) throw Error(ErrorCode::InvalidArgument, "empty terminal set");
    std::vector<Index> term;
    term.reserve(terminals.size());
    for (const auto& t : terminals) term.push_back(graph.require(t));
    std::sort(term.begin(), term.end());
    term.erase(std::unique(term.begin(), term.end()), term.end());

    const auto closures = metric_closure(graph, term);

    Subtree forest;
    std::set<Index> nodes(closures.isolated.begin(), closures.isolated.end());
    std::vector<SpanEdge> edges;
    for (const auto& closure : closures.components) {
        std::vector<SpanEdge> closure_edges;
        closure_edges.reserve(closure.edges.size());
        for (const auto& e : closure.edges) closure_edges.push_back({e.s, e.t, e.connection});
        const auto closure_mst = minimum_spanning_tree(closure.terminals, closure_edges);

        const auto expanded = expand_tree(graph, closure_mst, closure);
        auto spanning = minimum_spanning_tree(expanded.nodes, expanded.edges);
        auto pruned = prune_nonterminal_leaves(Subtree{expanded.nodes, std::move(spanning)},
                                               closure.terminals);
        nodes.insert(pruned.nodes.begin(), pruned.nodes.end());
        edges.insert(edges.end(), pruned.edges.begin(), pruned.edges.end());
    }
    forest.nodes.assign(nodes.begin(), nodes.end());
    std::sort(edges.begin(), edges.end(), [](const SpanEdge& a, const SpanEdge& b) {
        return std::tie(a.u, a.v) < std::tie(b.u, b.v);
    });
    forest.edges = std::move(edges);
    return to_steiner_tree(graph, forest, term, closures.isolated,
                           closures.components.size() + closures.isolated.size());
}

} // namespace readpath
