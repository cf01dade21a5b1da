// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 readpath contributors

#include "readpath/config.hpp"

#include "readpath/error.hpp"

#include <fstream>
#include <set>

#include <nlohmann/json.hpp>

namespace readpath {

using json = nlohmann::json;

namespace {

void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
    if (!obj.is_object()) throw Error(ErrorCode::Parse, "config: " + where + " must be an object");
    for (const auto& [key, _] : obj.items()) {
        if (!allowed.contains(key)) {
            throw Error(ErrorCode::Parse, "config: unknown key \"" + key + "\" in " + where);
        }
    }
}

template <typename T>
void read(const json& obj, const char* key, T& out, const std::string& where) {
    if (!obj.contains(key)) return;
    try {
        out = obj.at(key).get<T>();
    } catch (const json::exception&) {
        throw Error(ErrorCode::Parse,
                    "config: \"" + std::string(key) + "\" in " + where + " has the wrong type");
    }
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
    std::filesystem::path path(p);
    if (path.is_relative() && !base.empty()) return base / path;
    return path;
}

} // namespace

void EngineConfig::validate() const {
    pipeline.validate();
    if (papers.empty()) throw Error(ErrorCode::InvalidArgument, "config: \"papers\" is required");
    if (venues.empty()) throw Error(ErrorCode::InvalidArgument, "config: \"venues\" is required");
    if (k_seeds < 1) throw Error(ErrorCode::InvalidArgument, "config: k_seeds must be >= 1");
    if (k_output < 1) throw Error(ErrorCode::InvalidArgument, "config: k_output must be >= 1");
    if (port < 0 || port > 65535) throw Error(ErrorCode::InvalidArgument, "config: bad port");
    if (request_timeout_ms < 1) {
        throw Error(ErrorCode::InvalidArgument, "config: request_timeout_ms must be positive");
    }
    if (seed_provider.kind == SeedProviderConfig::Kind::Offline &&
        seed_provider.offline_path.empty()) {
        throw Error(ErrorCode::InvalidArgument, "config: offline seed provider needs \"path\"");
    }
    if (seed_provider.kind == SeedProviderConfig::Kind::Http &&
        seed_provider.http.url_template.empty()) {
        throw Error(ErrorCode::InvalidArgument, "config: http seed provider needs \"url_template\"");
    }
}

EngineConfig parse_engine_config(const json& doc, const std::filesystem::path& base_dir) {
    check_keys(doc,
               {"papers", "venues", "pagerank_cache", "params", "seed_provider",
                "cooccurrence_threshold", "neighborhood_order", "direction", "terminal_mode",
                "k_seeds", "k_output", "server"},
               "config");
    EngineConfig c;
    std::string text;
    if (doc.contains("papers")) {
        read(doc, "papers", text, "config");
        c.papers = resolve(base_dir, text);
    }
    if (doc.contains("venues")) {
        read(doc, "venues", text, "config");
        c.venues = resolve(base_dir, text);
    }
    if (doc.contains("pagerank_cache") && !doc["pagerank_cache"].is_null()) {
        read(doc, "pagerank_cache", text, "config");
        c.pagerank_cache = resolve(base_dir, text);
    }

    if (doc.contains("params")) {
        const auto& p = doc["params"];
        check_keys(p,
                   {"alpha", "beta", "gamma", "a", "b", "damping", "pr_tolerance", "pr_max_iters",
                    "epsilon_floor", "missing_venue_score"},
                   "params");
        auto& sp = c.pipeline.params;
        read(p, "alpha", sp.alpha, "params");
        read(p, "beta", sp.beta, "params");
        read(p, "gamma", sp.gamma, "params");
        read(p, "a", sp.a, "params");
        read(p, "b", sp.b, "params");
        read(p, "damping", sp.damping, "params");
        read(p, "pr_tolerance", sp.pr_tolerance, "params");
        read(p, "pr_max_iters", sp.pr_max_iters, "params");
        read(p, "epsilon_floor", sp.epsilon_floor, "params");
        read(p, "missing_venue_score", sp.missing_venue_score, "params");
    }

    if (doc.contains("seed_provider")) {
        const auto& sp = doc["seed_provider"];
        check_keys(sp,
                   {"type", "path", "url_template", "results_pointer", "id_pointer", "headers",
                    "timeout_ms"},
                   "seed_provider");
        std::string type = "offline";
        read(sp, "type", type, "seed_provider");
        if (type == "offline") {
            c.seed_provider.kind = SeedProviderConfig::Kind::Offline;
            if (sp.contains("path")) {
                read(sp, "path", text, "seed_provider");
                c.seed_provider.offline_path = resolve(base_dir, text);
            }
        } else if (type == "http") {
            c.seed_provider.kind = SeedProviderConfig::Kind::Http;
            auto& h = c.seed_provider.http;
            read(sp, "url_template", h.url_template, "seed_provider");
            read(sp, "results_pointer", h.results_pointer, "seed_provider");
            read(sp, "id_pointer", h.id_pointer, "seed_provider");
            read(sp, "headers", h.headers, "seed_provider");
            read(sp, "timeout_ms", h.timeout_ms, "seed_provider");
        } else {
            throw Error(ErrorCode::Parse, "config: seed_provider type must be offline or http");
        }
    }

    read(doc, "cooccurrence_threshold", c.pipeline.cooccurrence_threshold, "config");
    read(doc, "neighborhood_order", c.pipeline.neighborhood_order, "config");
    if (doc.contains("direction")) {
        read(doc, "direction", text, "config");
        c.pipeline.direction = parse_direction(text);
    }
    if (doc.contains("terminal_mode")) {
        read(doc, "terminal_mode", text, "config");
        c.pipeline.terminal_mode = parse_terminal_mode(text);
    }
    read(doc, "k_seeds", c.k_seeds, "config");
    read(doc, "k_output", c.k_output, "config");

    if (doc.contains("server")) {
        const auto& s = doc["server"];
        check_keys(s, {"host", "port", "request_timeout_ms", "cors_origin"}, "server");
        read(s, "host", c.host, "server");
        read(s, "port", c.port, "server");
        read(s, "request_timeout_ms", c.request_timeout_ms, "server");
        read(s, "cors_origin", c.cors_origin, "server");
    }
    c.validate();
    return c;
}

EngineConfig load_engine_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, "cannot read " + path.string());
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::Parse, path.string() + ": invalid JSON (" + e.what() + ")");
    }
    return parse_engine_config(doc, path.parent_path());
}

json to_json(const EngineConfig& c) {
    const auto& p = c.pipeline.params;
    json seed;
    if (c.seed_provider.kind == SeedProviderConfig::Kind::Offline) {
        seed = {{"type", "offline"}, {"path", c.seed_provider.offline_path.string()}};
    } else {
        const auto& h = c.seed_provider.http;
        seed = {{"type", "http"},
                {"url_template", h.url_template},
                {"results_pointer", h.results_pointer},
                {"id_pointer", h.id_pointer},
                {"headers", h.headers},
                {"timeout_ms", h.timeout_ms}};
    }
    return {
        {"papers", c.papers.string()},
        {"venues", c.venues.string()},
        {"pagerank_cache", c.pagerank_cache ? json(c.pagerank_cache->string()) : json(nullptr)},
        {"params",
         {{"alpha", p.alpha},
          {"beta", p.beta},
          {"gamma", p.gamma},
          {"a", p.a},
          {"b", p.b},
          {"damping", p.damping},
          {"pr_tolerance", p.pr_tolerance},
          {"pr_max_iters", p.pr_max_iters},
          {"epsilon_floor", p.epsilon_floor},
          {"missing_venue_score", p.missing_venue_score}}},
        {"seed_provider", seed},
        {"cooccurrence_threshold", c.pipeline.cooccurrence_threshold},
        {"neighborhood_order", c.pipeline.neighborhood_order},
        {"direction", to_string(c.pipeline.direction)},
        {"terminal_mode", to_string(c.pipeline.terminal_mode)},
        {"k_seeds", c.k_seeds},
        {"k_output", c.k_output},
        {"server",
         {{"host", c.host},
          {"port", c.port},
          {"request_timeout_ms", c.request_timeout_ms},
          {"cors_origin", c.cors_origin}}},
    };
}

} // namespace readpath
