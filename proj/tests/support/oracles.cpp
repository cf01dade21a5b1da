// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 readpath contributors

#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace oracle {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<std::vector<double>> cost_matrix(const WeightedGraph& g) {
    const auto n = g.size();
    std::vector<std::vector<double>> c(n, std::vector<double>(n, kInf));
    for (const auto& e : g.edges()) {
        c[e.u][e.v] = e.cost;
        c[e.v][e.u] = e.cost;
    }
    return c;
}

} // namespace

std::vector<std::vector<double>> floyd_warshall(const WeightedGraph& g) {
    const auto n = g.size();
    const auto c = cost_matrix(g);
    std::vector<std::vector<double>> d(n, std::vector<double>(n, kInf));
    for (std::size_t i = 0; i < n; ++i) {
        d[i][i] = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (c[i][j] != kInf) d[i][j] = c[i][j] + g.weight(static_cast<Index>(j));
        }
    }
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
            }
        }
    }
    return d;
}

std::vector<double> dense_pagerank(std::size_t n, std::span<const std::pair<int, int>> links,
                                   double damping, int iterations) {
    // Column-stochastic transition matrix; dangling columns are uniform.
    std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
    std::vector<int> outdeg(n, 0);
    std::vector<std::vector<bool>> seen(n, std::vector<bool>(n, false));
    for (const auto& [from, to] : links) {
        const auto f = static_cast<std::size_t>(from);
        const auto t = static_cast<std::size_t>(to);
        if (f == t || seen[f][t]) continue;
        seen[f][t] = true;
        ++outdeg[f];
    }
    for (std::size_t f = 0; f < n; ++f) {
        for (std::size_t t = 0; t < n; ++t) {
            if (outdeg[f] == 0) {
                m[t][f] = 1.0 / static_cast<double>(n);
            } else if (seen[f][t]) {
                m[t][f] = 1.0 / outdeg[f];
            }
        }
    }
    std::vector<double> r(n, 1.0 / static_cast<double>(n));
    for (int it = 0; it < iterations; ++it) {
        std::vector<double> next(n, (1.0 - damping) / static_cast<double>(n));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) next[i] += damping * m[i][j] * r[j];
        }
        double delta = 0.0;
        for (std::size_t i = 0; i < n; ++i) delta += std::abs(next[i] - r[i]);
        r = std::move(next);
        if (delta < 1e-15) break;
    }
    return r;
}

double prim_weight(const WeightedGraph& g, std::span<const Index> nodes) {
    if (nodes.empty()) return 0.0;
    const auto c = cost_matrix(g);
    const auto k = nodes.size();
    std::vector<bool> in(k, false);
    std::vector<double> best(k, kInf);
    best[0] = 0.0;
    double total = 0.0;
    for (std::size_t step = 0; step < k; ++step) {
        std::size_t pick = k;
        for (std::size_t i = 0; i < k; ++i) {
            if (!in[i] && (pick == k || best[i] < best[pick])) pick = i;
        }
        if (best[pick] == kInf) return kInf;
        in[pick] = true;
        total += best[pick];
        for (std::size_t i = 0; i < k; ++i) {
            if (!in[i]) best[i] = std::min(best[i], c[nodes[pick]][nodes[i]]);
        }
    }
    return total;
}

ExactTree exact_steiner(const WeightedGraph& g, std::span<const Index> terminals) {
    const auto n = g.size();
    if (n > 16) throw std::invalid_argument("exact_steiner: graph too large");
    if (terminals.empty()) throw std::invalid_argument("exact_steiner: no terminals");
    std::uint32_t required = 0;
    for (auto t : terminals) required |= 1u << t;
    std::vector<Index> optional;
    for (Index v = 0; v < n; ++v) {
        if (!(required & (1u << v))) optional.push_back(v);
    }

    const auto c = cost_matrix(g);
    ExactTree best;
    best.cost = kInf;
    for (std::uint32_t pick = 0; pick < (1u << optional.size()); ++pick) {
        std::vector<Index> nodes;
        double weight = 0.0;
        for (Index v = 0; v < n; ++v) {
            bool use = required & (1u << v);
            if (!use) {
                const auto pos = static_cast<std::size_t>(
                    std::find(optional.begin(), optional.end(), v) - optional.begin());
                use = pick & (1u << pos);
            }
            if (use) {
                nodes.push_back(v);
                weight += g.weight(v);
            }
        }
        if (weight >= best.cost) continue;
        // Prim again, keeping the edges this time.
        const auto k = nodes.size();
        std::vector<bool> in(k, false);
        std::vector<double> key(k, kInf);
        std::vector<std::size_t> parent(k, k);
        key[0] = 0.0;
        double total = weight;
        bool connected = true;
        std::vector<std::pair<Index, Index>> edges;
        for (std::size_t step = 0; step < k; ++step) {
            std::size_t u = k;
            for (std::size_t i = 0; i < k; ++i) {
                if (!in[i] && (u == k || key[i] < key[u])) u = i;
            }
            if (key[u] == kInf) {
                connected = false;
                break;
            }
            in[u] = true;
            total += key[u];
            if (parent[u] != k) edges.emplace_back(nodes[parent[u]], nodes[u]);
            for (std::size_t i = 0; i < k; ++i) {
                const double w = c[nodes[u]][nodes[i]];
                if (!in[i] && w < key[i]) {
                    key[i] = w;
                    parent[i] = u;
                }
            }
        }
        if (!connected || total >= best.cost) continue;
        best.cost = total;
        best.nodes = nodes;
        best.edges = edges;
    }
    if (best.cost == kInf) throw std::invalid_argument("exact_steiner: terminals disconnected");
    std::vector<int> degree(n, 0);
    for (const auto& [u, v] : best.edges) {
        ++degree[u];
        ++degree[v];
    }
    best.leaves = 0;
    for (auto v : best.nodes) best.leaves += degree[v] <= 1 ? 1 : 0;
    return best;
}

WeightedGraph random_graph(std::mt19937_64& rng, const RandomGraphSpec& spec) {
    auto uniform = [&](double lo, double hi) {
        return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
    };
    auto draw = [&](double lo, double hi) {
        if (!spec.integral) return uniform(lo, hi);
        const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<double>(rng() % span);
    };
    const int span = spec.max_nodes - spec.min_nodes + 1;
    const int n = spec.min_nodes + static_cast<int>(rng() % static_cast<std::uint64_t>(span));
    std::vector<WeightedGraph::NodeSpec> nodes;
    for (int i = 0; i < n; ++i) {
        char id[16];
        std::snprintf(id, sizeof id, "n%02d", i);
        nodes.push_back({id, draw(spec.min_weight, spec.max_weight)});
    }
    std::vector<std::vector<bool>> has(static_cast<std::size_t>(n),
                                       std::vector<bool>(static_cast<std::size_t>(n), false));
    std::vector<WeightedGraph::EdgeSpec> edges;
    auto add = [&](int u, int v) {
        if (u == v || has[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)]) return;
        has[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] = true;
        has[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)] = true;
        edges.push_back({nodes[static_cast<std::size_t>(u)].id,
                         nodes[static_cast<std::size_t>(v)].id,
                         draw(spec.min_cost, spec.max_cost)});
    };
    for (int v = 1; v < n; ++v) add(v, static_cast<int>(rng() % static_cast<std::uint64_t>(v)));
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            if (uniform(0.0, 1.0) < spec.extra_edge_prob) add(u, v);
        }
    }
    return WeightedGraph(std::move(nodes), std::move(edges));
}

std::vector<Index> random_terminals(std::mt19937_64& rng, const WeightedGraph& g,
                                    std::size_t max_count) {
    std::vector<Index> all(g.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<Index>(i);
    for (std::size_t i = all.size(); i > 1; --i) std::swap(all[i - 1], all[rng() % i]);
    const auto count = std::min<std::size_t>(g.size(), 2 + rng() % (max_count - 1));
    all.resize(count);
    std::sort(all.begin(), all.end());
    return all;
}

} // namespace oracle
