// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 readpath contributors

#include "readpath/seeding.hpp"

#include "readpath/error.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <unordered_set>

#include <httplib.h>
#include <nlohmann/json.hpp>

namespace readpath {

using json = nlohmann::json;

void QuerySpec::validate() const {
    if (key_phrases.empty()) {
        throw Error(ErrorCode::InvalidArgument, "query needs at least one key phrase");
    }
    for (const auto& p : key_phrases) {
        if (p.find_first_not_of(" \t\r\n") == std::string::npos) {
            throw Error(ErrorCode::InvalidArgument, "key phrases must be non-empty");
        }
    }
    if (k_seeds < 1) throw Error(ErrorCode::InvalidArgument, "k_seeds must be >= 1");
    if (k_output < 1) throw Error(ErrorCode::InvalidArgument, "k_output must be >= 1");
}

std::string QuerySpec::key() const {
    std::string out;
    for (std::size_t i = 0; i < key_phrases.size(); ++i) {
        if (i > 0) out += "; ";
        out += key_phrases[i];
    }
    return out;
}

OfflineSeedProvider OfflineSeedProvider::from_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, "cannot read " + path.string());
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::Parse, path.string() + ": invalid JSON (" + e.what() + ")");
    }
    if (!j.is_object()) throw Error(ErrorCode::Parse, path.string() + ": expected an object");
    std::map<std::string, std::vector<PaperId>> table;
    for (const auto& [query, ids] : j.items()) {
        if (!ids.is_array()) {
            throw Error(ErrorCode::Parse, path.string() + ": \"" + query + "\" must map to a list");
        }
        auto& list = table[query];
        for (const auto& id : ids) {
            if (!id.is_string()) {
                throw Error(ErrorCode::Parse, path.string() + ": ids must be strings");
            }
            list.push_back(id.get<std::string>());
        }
    }
    return OfflineSeedProvider(std::move(table));
}

std::vector<PaperId> OfflineSeedProvider::search(const QuerySpec& query, Deadline) const {
    auto it = table_.find(query.key());
    if (it == table_.end()) return {};
    return it->second;
}

namespace {

std::string url_encode(std::string_view text) {
    static constexpr char kHex[] = "0123456789ABCDEF";
    std::string out;
    for (unsigned char c : text) {
        if (std::isalnum(c) || c == '-' || c == '_' || c == '.' || c == '~') {
            out.push_back(static_cast<char>(c));
        } else {
            out.push_back('%');
            out.push_back(kHex[c >> 4]);
            out.push_back(kHex[c & 0xF]);
        }
    }
    return out;
}

void replace_all(std::string& s, std::string_view from, const std::string& to) {
    for (auto pos = s.find(from); pos != std::string::npos; pos = s.find(from, pos + to.size())) {
        s.replace(pos, from.size(), to);
    }
}

} // namespace

HttpSeedProvider::HttpSeedProvider(HttpSeedConfig config) : config_(std::move(config)) {
    if (config_.url_template.rfind("http://", 0) != 0) {
        throw Error(ErrorCode::InvalidArgument, "seed endpoint must be an http:// URL");
    }
    if (config_.timeout_ms <= 0) {
        throw Error(ErrorCode::InvalidArgument, "seed endpoint timeout must be positive");
    }
    try {
        (void)json::json_pointer(config_.results_pointer);
        (void)json::json_pointer(config_.id_pointer);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::InvalidArgument, std::string("bad JSON pointer: ") + e.what());
    }
}

std::string HttpSeedProvider::request_url(const QuerySpec& query) const {
    std::string url = config_.url_template;
    replace_all(url, "{query}", url_encode(query.key()));
    replace_all(url, "{k}", std::to_string(query.k_seeds));
    return url;
}

std::vector<PaperId> HttpSeedProvider::search(const QuerySpec& query, Deadline deadline) const {
    const std::string url = request_url(query);
    const auto after_scheme = url.substr(7);
    const auto slash = after_scheme.find('/');
    const std::string host = "http://" + after_scheme.substr(0, slash);
    const std::string target = slash == std::string::npos ? "/" : after_scheme.substr(slash);

    auto timeout = std::chrono::milliseconds(config_.timeout_ms);
    if (deadline != Deadline::max()) {
        const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
            deadline - std::chrono::steady_clock::now());
        if (left.count() <= 0) throw Error(ErrorCode::Io, "seed search deadline exceeded");
        timeout = std::min(timeout, left);
    }

    httplib::Client client(host);
    client.set_connection_timeout(timeout);
    client.set_read_timeout(timeout);
    client.set_write_timeout(timeout);
    httplib::Headers headers(config_.headers.begin(), config_.headers.end());
    auto res = client.Get(target, headers);
    if (!res) {
        throw Error(ErrorCode::Io, "seed search failed: " + httplib::to_string(res.error()));
    }
    if (res->status != 200) {
        throw Error(ErrorCode::Io, "seed search returned HTTP " + std::to_string(res->status));
    }
    json body;
    try {
        body = json::parse(res->body);
    } catch (const json::parse_error&) {
        throw Error(ErrorCode::Parse, "seed search response is not JSON");
    }
    const json::json_pointer results_ptr(config_.results_pointer);
    const json::json_pointer id_ptr(config_.id_pointer);
    if (!body.contains(results_ptr) || !body.at(results_ptr).is_array()) {
        throw Error(ErrorCode::Parse, "seed search response has no result array at \"" +
                                          config_.results_pointer + "\"");
    }
    std::vector<PaperId> ids;
    for (const auto& item : body.at(results_ptr)) {
        if (!item.contains(id_ptr)) continue;
        const auto& id = item.at(id_ptr);
        if (id.is_string()) ids.push_back(id.get<std::string>());
    }
    return ids;
}

SeedSet resolve_seeds(std::span<const PaperId> candidates, const QuerySpec& query,
                      const CitationGraph& graph) {
    const std::unordered_set<std::string_view> excluded(query.excluded.begin(),
                                                        query.excluded.end());
    std::unordered_set<std::string_view> seen;
    SeedSet out;
    for (const auto& id : candidates) {
        if (out.ids.size() >= static_cast<std::size_t>(query.k_seeds)) break;
        if (excluded.contains(id)) {
            ++out.dropped_excluded;
            continue;
        }
        const auto* rec = graph.find(id);
        if (!rec) {
            ++out.dropped_unresolvable;
            continue;
        }
        if (query.cutoff_year && rec->year > *query.cutoff_year) {
            ++out.dropped_cutoff;
            continue;
        }
        if (!seen.insert(id).second) {
            ++out.dropped_duplicates;
            continue;
        }
        out.ids.push_back(id);
    }
    return out;
}

SeedSet provide_seeds(const SeedProvider& provider, const QuerySpec& query,
                      const CitationGraph& graph, Deadline deadline) {
    query.validate();
    const auto candidates = provider.search(query, deadline);
    auto seeds = resolve_seeds(candidates, query, graph);
    if (seeds.ids.empty()) {
        throw Error(ErrorCode::NoSeeds, "no seeds for query \"" + query.key() + "\"");
    }
    return seeds;
}

std::map<PaperId, int> cooccurrence_counts(const CitationGraph& subgraph,
                                           std::span<const PaperId> seeds, bool include_seeds) {
    std::set<CitationGraph::Index> seed_index;
    for (const auto& s : seeds) {
        auto idx = subgraph.index_of(s);
        if (!idx) throw Error(ErrorCode::NotFound, "seed \"" + s + "\" not in subgraph");
        seed_index.insert(*idx);
    }
    std::map<PaperId, int> counts;
    // Out-edge targets are unique per paper, so each seed counts at most once.
    for (auto s : seed_index) {
        for (const auto& e : subgraph.references(s)) {
            if (include_seeds || !seed_index.contains(e.target)) ++counts[subgraph.id(e.target)];
        }
    }
    return counts;
}

TerminalMode parse_terminal_mode(std::string_view text) {
    if (text == "reallocated") return TerminalMode::Reallocated;
    if (text == "initial") return TerminalMode::Initial;
    if (text == "union") return TerminalMode::Union;
    if (text == "intersection") return TerminalMode::Intersection;
    throw Error(ErrorCode::InvalidArgument, "unknown terminal mode \"" + std::string(text) + "\"");
}

const char* to_string(TerminalMode mode) {
    switch (mode) {
        case TerminalMode::Reallocated: return "reallocated";
        case TerminalMode::Initial: return "initial";
        case TerminalMode::Union: return "union";
        case TerminalMode::Intersection: return "intersection";
    }
    return "reallocated";
}

TerminalSet reallocate_terminals(const CitationGraph& subgraph, std::span<const PaperId> seeds,
                                 int threshold, TerminalMode mode) {
    if (threshold < 2) {
        throw Error(ErrorCode::InvalidArgument, "co-occurrence threshold must be >= 2");
    }
    const auto counts = cooccurrence_counts(subgraph, seeds, /*include_seeds=*/true);

    std::set<PaperId> reallocated;
    for (const auto& [id, n] : counts) {
        if (n >= threshold) reallocated.insert(id);
    }
    const std::set<PaperId> initial(seeds.begin(), seeds.end());

    std::set<PaperId> chosen;
    switch (mode) {
        case TerminalMode::Reallocated:
            chosen = reallocated;
            break;
        case TerminalMode::Initial:
            chosen = initial;
            break;
        case TerminalMode::Union:
            chosen = reallocated;
            chosen.insert(initial.begin(), initial.end());
            break;
        case TerminalMode::Intersection:
            std::set_intersection(reallocated.begin(), reallocated.end(), initial.begin(),
                                  initial.end(), std::inserter(chosen, chosen.end()));
            break;
    }

    TerminalSet out;
    out.mode = mode;
    out.reallocated.assign(reallocated.begin(), reallocated.end());
    if (chosen.empty()) {
        chosen = initial;
        out.fallback = true;
    }
    out.ids.assign(chosen.begin(), chosen.end());
    return out;
}

} // namespace readpath
