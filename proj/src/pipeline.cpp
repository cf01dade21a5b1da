// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 readpath contributors

#include "readpath/pipeline.hpp"

#include "readpath/error.hpp"

#include <algorithm>
#include <array>
#include <chrono>

namespace readpath {

namespace {

struct ModeName {
    Mode mode;
    const char* name;
};

constexpr std::array<ModeName, 9> kModeNames{{
    {Mode::Newst, "NEWST"},
    {Mode::NewstW, "NEWST_W"},
    {Mode::NewstU, "NEWST_U"},
    {Mode::NewstI, "NEWST_I"},
    {Mode::NewstC, "NEWST_C"},
    {Mode::NewstN, "NEWST_N"},
    {Mode::NewstE, "NEWST_E"},
    {Mode::PagerankBaseline, "PAGERANK_BASELINE"},
    {Mode::SeedsOnly, "SEEDS_ONLY"},
}};

TerminalMode terminal_mode_for(Mode mode, TerminalMode configured) {
    switch (mode) {
        case Mode::NewstW: return TerminalMode::Initial;
        case Mode::NewstU: return TerminalMode::Union;
        case Mode::NewstI: return TerminalMode::Intersection;
        case Mode::NewstC: return TerminalMode::Reallocated;
        default: return configured;
    }
}

} // namespace

Mode parse_mode(std::string_view text) {
    for (const auto& m : kModeNames) {
        if (text == m.name) return m.mode;
    }
    // Accept the dashed spelling too.
    std::string normalized(text);
    std::replace(normalized.begin(), normalized.end(), '-', '_');
    for (const auto& m : kModeNames) {
        if (normalized == m.name) return m.mode;
    }
    throw Error(ErrorCode::InvalidArgument, "unknown mode \"" + std::string(text) + "\"");
}

const char* to_string(Mode mode) {
    for (const auto& m : kModeNames) {
        if (m.mode == mode) return m.name;
    }
    return "NEWST";
}

std::vector<Mode> all_modes() {
    std::vector<Mode> out;
    for (const auto& m : kModeNames) out.push_back(m.mode);
    return out;
}

void PipelineOptions::validate() const {
    params.validate();
    if (cooccurrence_threshold < 2) {
        throw Error(ErrorCode::InvalidArgument, "cooccurrence_threshold must be >= 2");
    }
    if (neighborhood_order < 1 || neighborhood_order > 2) {
        throw Error(ErrorCode::InvalidArgument, "neighborhood_order must be 1 or 2");
    }
}

std::vector<PaperId> pagerank_baseline(const CitationGraph& subgraph, const NodeScores& scores,
                                       int k) {
    if (k < 1) throw Error(ErrorCode::InvalidArgument, "k must be >= 1");
    std::vector<PaperId> ids;
    ids.reserve(subgraph.size());
    for (const auto& p : subgraph.papers()) ids.push_back(p.id);
    auto ranked = rank_by_score(ids, scores.raw_pagerank);
    if (ranked.size() > static_cast<std::size_t>(k)) ranked.resize(static_cast<std::size_t>(k));
    return ranked;
}

PipelineResult run_pipeline(const CitationGraph& graph, const NodeScores& scores,
                            const SeedSet& seeds, const PipelineOptions& options, Mode mode,
                            int k) {
    if (k < 1) throw Error(ErrorCode::InvalidArgument, "k must be >= 1");
    if (seeds.ids.empty()) throw Error(ErrorCode::NoSeeds, "no seeds to expand");
    const auto started = std::chrono::steady_clock::now();
    const auto limit = static_cast<std::size_t>(k);

    PipelineResult r;
    r.mode = mode;
    r.seeds = seeds;

    if (mode == Mode::SeedsOnly) {
        r.ranked = seeds.ids;
        if (r.ranked.size() > limit) r.ranked.resize(limit);
        r.subgraph = graph.induced({});
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
        return r;
    }

    r.subgraph = neighborhood(graph, seeds.ids, options.neighborhood_order, options.direction);
    r.scores = restrict_scores(scores, r.subgraph);
    r.graph_nodes = r.subgraph.size();
    r.graph_edges = r.subgraph.edge_count();

    if (mode == Mode::PagerankBaseline) {
        r.ranked = pagerank_baseline(r.subgraph, r.scores, k);
    } else {
        r.terminals = reallocate_terminals(r.subgraph, seeds.ids, options.cooccurrence_threshold,
                                           terminal_mode_for(mode, options.terminal_mode));
        if (mode == Mode::NewstC) {
            r.ranked = rank_by_score(r.terminals.ids, r.scores.combined);
            if (r.ranked.size() > limit) r.ranked.resize(limit);
        } else {
            WeightOverrides overrides;
            overrides.uniform_node_weights = mode == Mode::NewstN;
            overrides.uniform_edge_costs = mode == Mode::NewstE;
            const auto weighted =
                build_weighted_graph(r.subgraph, r.scores, options.params, overrides);
            r.graph_edges = weighted.edge_count();
            r.tree = newst(weighted, r.terminals.ids);
            r.path = orient(*r.tree, r.subgraph, &r.scores);
            r.order = reading_order(*r.path);

            std::vector<PaperId> spare_ids;
            for (const auto& p : r.subgraph.papers()) {
                if (!r.tree->contains(p.id)) spare_ids.push_back(p.id);
            }
            const auto spares = rank_by_score(spare_ids, r.scores.combined);
            r.ranked = top_k_list(*r.tree, r.scores, spares, k);
        }
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return r;
}

} // namespace readpath
