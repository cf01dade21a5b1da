// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 readpath contributors

#include "readpath/scoring.hpp"

#include "readpath/error.hpp"
#include "readpath/steiner.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace readpath {

namespace {

void require_positive(double value, const char* name) {
    if (!(std::isfinite(value) && value > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, std::string(name) + " must be positive");
    }
}

} // namespace

void ScoreParams::validate() const {
    require_positive(alpha, "alpha");
    require_positive(beta, "beta");
    require_positive(gamma, "gamma");
    require_positive(a, "a");
    require_positive(b, "b");
    if (!(damping > 0.0 && damping < 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "damping must lie in (0,1)");
    }
    require_positive(pr_tolerance, "pr_tolerance");
    if (pr_max_iters < 1) {
        throw Error(ErrorCode::InvalidArgument, "pr_max_iters must be positive");
    }
    require_positive(epsilon_floor, "epsilon_floor");
    if (epsilon_floor > 1.0) {
        throw Error(ErrorCode::InvalidArgument, "epsilon_floor must not exceed 1");
    }
    if (!(missing_venue_score >= 0.0 && missing_venue_score <= 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "missing_venue_score must lie in [0,1]");
    }
}

ScoreMap pagerank(const CitationGraph& graph, const ScoreParams& params) {
    if (graph.empty()) throw Error(ErrorCode::InvalidArgument, "pagerank of an empty graph");
    const auto n = graph.size();
    const double d = params.damping;
    const double base = (1.0 - d) / static_cast<double>(n);

    std::vector<double> rank(n, 1.0 / static_cast<double>(n));
    std::vector<double> next(n);
    std::vector<double> inv_out(n, 0.0);
    for (CitationGraph::Index i = 0; i < n; ++i) {
        const auto deg = graph.references(i).size();
        if (deg > 0) inv_out[i] = 1.0 / static_cast<double>(deg);
    }

    for (int iter = 0; iter < params.pr_max_iters; ++iter) {
        double dangling = 0.0;
        for (CitationGraph::Index i = 0; i < n; ++i) {
            if (inv_out[i] == 0.0) dangling += rank[i];
        }
        const double spread = base + d * dangling / static_cast<double>(n);
        for (CitationGraph::Index j = 0; j < n; ++j) {
            double inflow = 0.0;
            for (auto i : graph.cited_by(j)) inflow += rank[i] * inv_out[i];
            next[j] = spread + d * inflow;
        }
        double change = 0.0;
        for (CitationGraph::Index i = 0; i < n; ++i) change += std::abs(next[i] - rank[i]);
        rank.swap(next);
        if (change < params.pr_tolerance) break;
    }

    ScoreMap out;
    out.reserve(n);
    for (CitationGraph::Index i = 0; i < n; ++i) out.emplace(graph.id(i), rank[i]);
    return out;
}

ScoreMap normalize_pgscore(const ScoreMap& raw, double epsilon_floor) {
    if (raw.empty()) throw Error(ErrorCode::InvalidArgument, "normalize of an empty score map");
    double max_score = 0.0;
    for (const auto& [id, s] : raw) {
        if (!(s >= 0.0) || !std::isfinite(s)) {
            throw Error(ErrorCode::InvalidArgument, "score of \"" + id + "\" is negative");
        }
        max_score = std::max(max_score, s);
    }
    if (max_score == 0.0) throw Error(ErrorCode::InvalidArgument, "all scores are zero");
    ScoreMap out;
    out.reserve(raw.size());
    for (const auto& [id, s] : raw) out.emplace(id, std::max(s / max_score, epsilon_floor));
    return out;
}

double node_weight(const ScoreParams& params, double pgscore_norm, double venue) {
    const double denom = params.a * pgscore_norm + params.b * venue;
    if (!(denom > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "node weight denominator is not positive");
    }
    return params.gamma / denom;
}

double edge_cost(const ScoreParams& params, int con) {
    if (con < 1) throw Error(ErrorCode::InvalidArgument, "edge_cost needs con >= 1");
    return params.alpha / std::pow(static_cast<double>(con), params.beta);
}

double NodeScores::combined_of(const PaperId& id) const {
    auto it = combined.find(id);
    if (it == combined.end()) throw Error(ErrorCode::NotFound, "no score for \"" + id + "\"");
    return it->second;
}

NodeScores node_scores_from_pagerank(const CitationGraph& graph, const VenueTable& venues,
                                     const ScoreParams& params, ScoreMap raw) {
    NodeScores s;
    s.raw_pagerank = std::move(raw);
    if (graph.empty()) return s;
    for (const auto& p : graph.papers()) {
        if (!s.raw_pagerank.contains(p.id)) {
            throw Error(ErrorCode::InvalidArgument, "no PageRank for \"" + p.id + "\"");
        }
    }
    s.pgscore = normalize_pgscore(s.raw_pagerank, params.epsilon_floor);
    s.venue.reserve(graph.size());
    s.combined.reserve(graph.size());
    for (const auto& p : graph.papers()) {
        double v = params.missing_venue_score;
        if (p.venue) {
            if (auto found = venues.score(*p.venue)) v = *found;
        }
        s.venue.emplace(p.id, v);
        s.combined.emplace(p.id, params.a * s.pgscore.at(p.id) + params.b * v);
    }
    return s;
}

NodeScores compute_node_scores(const CitationGraph& graph, const VenueTable& venues,
                               const ScoreParams& params) {
    if (graph.empty()) return {};
    return node_scores_from_pagerank(graph, venues, params, pagerank(graph, params));
}

NodeScores restrict_scores(const NodeScores& scores, const CitationGraph& subgraph) {
    NodeScores out;
    auto copy = [](const ScoreMap& from, ScoreMap& to, const PaperId& id) {
        auto it = from.find(id);
        if (it == from.end()) throw Error(ErrorCode::NotFound, "no score for \"" + id + "\"");
        to.emplace(id, it->second);
    };
    for (const auto& p : subgraph.papers()) {
        copy(scores.raw_pagerank, out.raw_pagerank, p.id);
        copy(scores.pgscore, out.pgscore, p.id);
        copy(scores.venue, out.venue, p.id);
        copy(scores.combined, out.combined, p.id);
    }
    return out;
}

WeightedGraph build_weighted_graph(const CitationGraph& subgraph, const NodeScores& scores,
                                   const ScoreParams& params, const WeightOverrides& overrides) {
    std::vector<WeightedGraph::NodeSpec> nodes;
    nodes.reserve(subgraph.size());
    for (const auto& p : subgraph.papers()) {
        auto pg = scores.pgscore.find(p.id);
        auto venue = scores.venue.find(p.id);
        if (pg == scores.pgscore.end() || venue == scores.venue.end()) {
            throw Error(ErrorCode::NotFound, "no score for \"" + p.id + "\"");
        }
        const double w = overrides.uniform_node_weights
                             ? overrides.uniform_value
                             : node_weight(params, pg->second, venue->second);
        nodes.push_back({p.id, w});
    }

    // Undirected con: mentions in both directions summed.
    std::map<std::pair<CitationGraph::Index, CitationGraph::Index>, int> con;
    for (CitationGraph::Index i = 0; i < subgraph.size(); ++i) {
        for (const auto& e : subgraph.references(i)) {
            con[{std::min(i, e.target), std::max(i, e.target)}] += e.mentions;
        }
    }
    std::vector<WeightedGraph::EdgeSpec> edges;
    edges.reserve(con.size());
    for (const auto& [key, mentions] : con) {
        const double c =
            overrides.uniform_edge_costs ? overrides.uniform_value : edge_cost(params, mentions);
        edges.push_back({subgraph.id(key.first), subgraph.id(key.second), c});
    }
    return WeightedGraph(std::move(nodes), std::move(edges));
}

} // namespace readpath
