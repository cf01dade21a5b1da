// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 readpath contributors

#include "readpath/pathgen.hpp"

#include "readpath/error.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <tuple>
#include <unordered_set>

namespace readpath {

ReadingPath orient(const SteinerTree& tree, const CitationGraph& corpus, const NodeScores* scores) {
    ReadingPath path;
    std::map<PaperId, int> year;
    for (const auto& id : tree.nodes) {
        const auto* rec = corpus.find(id);
        if (!rec) throw Error(ErrorCode::NotFound, "tree node \"" + id + "\" not in corpus");
        double weight = 0.0;
        if (scores) {
            if (auto it = scores->combined.find(id); it != scores->combined.end()) weight = it->second;
        }
        path.nodes.push_back({id, rec->year, weight});
        year[id] = rec->year;
    }

    std::set<PaperId> has_incoming;
    for (const auto& e : tree.edges) {
        const auto u = *corpus.index_of(e.u);
        const auto v = *corpus.index_of(e.v);
        const int u_cites_v = corpus.mentions(u, v);
        const int v_cites_u = corpus.mentions(v, u);

        PaperId from = e.u;
        PaperId to = e.v;
        if (v_cites_u > 0 && u_cites_v == 0) {
            from = e.u;
            to = e.v;
        } else if (u_cites_v > 0 && v_cites_u == 0) {
            from = e.v;
            to = e.u;
        } else if (year[e.v] < year[e.u]) {
            from = e.v;
            to = e.u;
        }
        // Equal years keep u -> v; u is the smaller id.
        path.edges.push_back({from, to, u_cites_v + v_cites_u, 1.0 / e.cost});
        has_incoming.insert(to);
    }
    std::sort(path.edges.begin(), path.edges.end(), [](const auto& a, const auto& b) {
        return std::tie(a.from, a.to) < std::tie(b.from, b.to);
    });
    for (const auto& n : path.nodes) {
        if (!has_incoming.contains(n.id)) path.roots.push_back(n.id);
    }
    return path;
}

std::vector<PaperId> reading_order(const ReadingPath& path) {
    std::map<PaperId, int> year;
    std::map<PaperId, int> indegree;
    std::map<PaperId, std::vector<PaperId>> successors;
    for (const auto& n : path.nodes) {
        year[n.id] = n.year;
        indegree[n.id] = 0;
    }
    for (const auto& e : path.edges) {
        if (!indegree.contains(e.from) || !indegree.contains(e.to)) {
            throw Error(ErrorCode::Internal, "path edge references an unknown node");
        }
        successors[e.from].push_back(e.to);
        ++indegree[e.to];
    }

    using Key = std::pair<int, PaperId>;
    std::priority_queue<Key, std::vector<Key>, std::greater<>> ready;
    for (const auto& [id, deg] : indegree) {
        if (deg == 0) ready.emplace(year[id], id);
    }
    std::vector<PaperId> order;
    order.reserve(path.nodes.size());
    while (!ready.empty()) {
        auto [y, id] = ready.top();
        ready.pop();
        order.push_back(id);
        for (const auto& next : successors[id]) {
            if (--indegree[next] == 0) ready.emplace(year[next], next);
        }
    }
    if (order.size() != path.nodes.size()) {
        throw Error(ErrorCode::Internal, "reading path contains a cycle");
    }
    return order;
}

std::vector<PaperId> rank_by_score(std::span<const PaperId> ids, const ScoreMap& scores) {
    std::vector<std::pair<double, PaperId>> keyed;
    keyed.reserve(ids.size());
    for (const auto& id : ids) {
        auto it = scores.find(id);
        if (it == scores.end()) throw Error(ErrorCode::NotFound, "no score for \"" + id + "\"");
        keyed.emplace_back(it->second, id);
    }
    std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
    });
    std::vector<PaperId> out;
    out.reserve(keyed.size());
    for (auto& [_, id] : keyed) out.push_back(std::move(id));
    return out;
}

std::vector<PaperId> top_k_list(const SteinerTree& tree, const NodeScores& scores,
                                std::span<const PaperId> spares, int k) {
    if (k < 1) throw Error(ErrorCode::InvalidArgument, "k must be >= 1");
    const auto limit = static_cast<std::size_t>(k);
    auto out = rank_by_score(tree.nodes, scores.combined);
    if (out.size() > limit) out.resize(limit);
    std::unordered_set<PaperId> taken(out.begin(), out.end());
    std::vector<PaperId> padding;
    for (const auto& id : spares) {
        if (out.size() + padding.size() >= limit) break;
        if (!taken.contains(id) && !tree.contains(id)) {
            padding.push_back(id);
            taken.insert(id);
        }
    }
    out.insert(out.end(), padding.begin(), padding.end());
    return out;
}

} // namespace readpath
