// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 readpath contributors

#include "readpath/engine.hpp"

#include "readpath/error.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <set>

#include <nlohmann/json.hpp>

namespace readpath {

using json = nlohmann::json;

json to_json(const PaperRecord& record) {
    json citations = json::array();
    for (const auto& c : record.citations_out) {
        citations.push_back({{"id", c.target}, {"mentions", c.mentions}});
    }
    return {
        {"id", record.id},
        {"title", record.title},
        {"year", record.year},
        {"venue", record.venue ? json(*record.venue) : json(nullptr)},
        {"authors", record.authors},
        {"abstract", record.abstract ? json(*record.abstract) : json(nullptr)},
        {"citations", citations},
    };
}

json to_json(const QueryResult& r, bool include_timing) {
    json nodes = json::array();
    for (const auto& n : r.nodes) {
        nodes.push_back({{"id", n.id},
                         {"title", n.title},
                         {"authors", n.authors},
                         {"year", n.year},
                         {"venue", n.venue ? json(*n.venue) : json(nullptr)},
                         {"score", n.score},
                         {"pgscore", n.pgscore},
                         {"venue_score", n.venue_score},
                         {"seed", n.seed},
                         {"terminal", n.terminal}});
    }
    json edges = json::array();
    for (const auto& e : r.path.edges) {
        edges.push_back({{"from", e.from},
                         {"to", e.to},
                         {"mentions", e.mentions},
                         {"relevance", e.relevance}});
    }
    json out = {
        {"query", r.query},
        {"seeds", r.seeds},
        {"dropped_seeds", r.dropped_seeds},
        {"terminals",
         {{"mode", to_string(r.terminals.mode)},
          {"ids", r.terminals.ids},
          {"fallback", r.terminals.fallback}}},
        {"nodes", nodes},
        {"edges", edges},
        {"roots", r.path.roots},
        {"reading_order", r.reading_order},
        {"top_k", r.top_k},
        {"isolated_terminals", r.isolated_terminals},
        {"components", r.components},
        {"tree_cost", r.tree_cost},
    };
    json timing = {{"nodes", r.graph_nodes}, {"edges", r.graph_edges}};
    if (include_timing) timing["seconds"] = r.seconds;
    out["timing"] = timing;
    return out;
}

namespace {

std::string hex64(std::uint64_t v) {
    static constexpr char kHex[] = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i, v >>= 4) s[static_cast<std::size_t>(i)] = kHex[v & 0xF];
    return s;
}

json cache_params(const ScoreParams& p) {
    return {{"damping", p.damping},
            {"pr_tolerance", p.pr_tolerance},
            {"pr_max_iters", p.pr_max_iters}};
}

} // namespace

void write_pagerank_cache(const std::filesystem::path& path, const CitationGraph& graph,
                          const ScoreParams& params, const ScoreMap& raw) {
    json scores = json::object();
    for (const auto& p : graph.papers()) scores[p.id] = raw.at(p.id);
    json doc = {{"fingerprint", hex64(fingerprint(graph))},
                {"params", cache_params(params)},
                {"pagerank", scores}};
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
    out << doc.dump() << '\n';
}

std::optional<ScoreMap> read_pagerank_cache(const std::filesystem::path& path,
                                            const CitationGraph& graph,
                                            const ScoreParams& params) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    json doc;
    try {
        doc = json::parse(in);
        if (doc.at("fingerprint").get<std::string>() != hex64(fingerprint(graph))) {
            return std::nullopt;
        }
        if (doc.at("params") != cache_params(params)) return std::nullopt;
        ScoreMap raw;
        for (const auto& [id, value] : doc.at("pagerank").items()) raw[id] = value.get<double>();
        if (raw.size() != graph.size()) return std::nullopt;
        return raw;
    } catch (const json::exception&) {
        return std::nullopt;
    }
}

std::unique_ptr<SeedProvider> make_seed_provider(const SeedProviderConfig& config) {
    if (config.kind == SeedProviderConfig::Kind::Http) {
        return std::make_unique<HttpSeedProvider>(config.http);
    }
    return std::make_unique<OfflineSeedProvider>(
        OfflineSeedProvider::from_file(config.offline_path));
}

Engine::Engine(EngineConfig config, Corpus corpus, std::shared_ptr<const SeedProvider> provider,
               std::optional<ScoreMap> cached_pagerank)
    : config_(std::move(config)), corpus_(std::move(corpus)), provider_(std::move(provider)) {
    config_.pipeline.validate();
    if (!provider_) throw Error(ErrorCode::InvalidArgument, "engine needs a seed provider");
    // Non-owning alias: the graph lives as long as the engine.
    full_graph_ = std::shared_ptr<const CitationGraph>(std::shared_ptr<void>{}, &corpus_.graph);
    const auto& params = config_.pipeline.params;
    if (cached_pagerank) {
        full_scores_ = std::make_shared<NodeScores>(node_scores_from_pagerank(
            corpus_.graph, corpus_.venues, params, std::move(*cached_pagerank)));
    } else {
        full_scores_ = std::make_shared<NodeScores>(
            compute_node_scores(corpus_.graph, corpus_.venues, params));
    }
}

std::shared_ptr<Engine> Engine::from_config(const EngineConfig& config) {
    config.validate();
    auto corpus = load_corpus(config.papers, config.venues);
    std::optional<ScoreMap> cached;
    if (config.pagerank_cache) {
        cached = read_pagerank_cache(*config.pagerank_cache, corpus.graph, config.pipeline.params);
    }
    std::shared_ptr<const SeedProvider> provider = make_seed_provider(config.seed_provider);
    return std::make_shared<Engine>(config, std::move(corpus), std::move(provider),
                                    std::move(cached));
}

Engine::View Engine::view_for(std::optional<int> cutoff_year) const {
    if (!cutoff_year) return {full_graph_, full_scores_};
    std::lock_guard lock(views_mutex_);
    auto it = views_.find(*cutoff_year);
    if (it != views_.end()) return it->second;
    auto graph = std::make_shared<const CitationGraph>(filter_by_year(corpus_.graph, *cutoff_year));
    auto scores = std::make_shared<const NodeScores>(
        compute_node_scores(*graph, corpus_.venues, config_.pipeline.params));
    View view{graph, scores};
    views_.emplace(*cutoff_year, view);
    return view;
}

QueryResult Engine::query(QuerySpec spec, Deadline deadline) const {
    const auto started = std::chrono::steady_clock::now();
    spec.validate();
    const auto view = view_for(spec.cutoff_year);
    if (view.graph->empty()) {
        throw Error(ErrorCode::NoSeeds, "no papers visible for query \"" + spec.key() + "\"");
    }
    const auto seeds = provide_seeds(*provider_, spec, *view.graph, deadline);

    const CitationGraph* graph = view.graph.get();
    CitationGraph trimmed;
    if (!spec.excluded.empty()) {
        trimmed = without(*view.graph, spec.excluded);
        graph = &trimmed;
    }
    const auto r =
        run_pipeline(*graph, *view.scores, seeds, config_.pipeline, Mode::Newst, spec.k_output);

    QueryResult out;
    out.query = spec.key();
    out.seeds = seeds.ids;
    out.dropped_seeds = seeds.dropped();
    out.terminals = r.terminals;
    out.path = *r.path;
    out.reading_order = r.order;
    out.top_k = r.ranked;
    out.isolated_terminals = r.tree->isolated_terminals;
    out.components = r.tree->components;
    out.tree_cost = r.tree->total_cost;
    out.graph_nodes = r.graph_nodes;
    out.graph_edges = r.graph_edges;

    const std::set<PaperId> seed_set(seeds.ids.begin(), seeds.ids.end());
    const std::set<PaperId> terminal_set(r.terminals.ids.begin(), r.terminals.ids.end());
    for (const auto& n : out.path.nodes) {
        const auto& rec = *graph->find(n.id);
        QueryResult::NodeInfo info;
        info.id = n.id;
        info.title = rec.title;
        info.authors = rec.authors;
        info.year = rec.year;
        info.venue = rec.venue;
        info.score = r.scores.combined.at(n.id);
        info.pgscore = r.scores.pgscore.at(n.id);
        info.venue_score = r.scores.venue.at(n.id);
        info.seed = seed_set.contains(n.id);
        info.terminal = terminal_set.contains(n.id);
        out.nodes.push_back(std::move(info));
    }
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return out;
}

} // namespace readpath
