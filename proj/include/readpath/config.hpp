// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 readpath contributors

#pragma once

#include "readpath/pipeline.hpp"
#include "readpath/seeding.hpp"

#include <filesystem>
#include <optional>
#include <string>

#include <nlohmann/json_fwd.hpp>

namespace readpath {

struct SeedProviderConfig {
    enum class Kind { Offline, Http };
    Kind kind = Kind::Offline;
    std::filesystem::path offline_path;
    HttpSeedConfig http;
};

/// Engine configuration. Loaded from one JSON document; relative paths are
/// resolved against the document's directory and unknown keys are rejected.
struct EngineConfig {
    std::filesystem::path papers;
    std::filesystem::path venues;
    /// Raw PageRank written by `readpath ingest --cache`.
    std::optional<std::filesystem::path> pagerank_cache;

    PipelineOptions pipeline;
    SeedProviderConfig seed_provider;
    int k_seeds = 30;
    int k_output = 30;

    std::string host = "127.0.0.1";
    int port = 8080;
    int request_timeout_ms = 30000;
    std::string cors_origin = "*";

    void validate() const;
};

EngineConfig parse_engine_config(const nlohmann::json& doc,
                                 const std::filesystem::path& base_dir = {});
EngineConfig load_engine_config(const std::filesystem::path& path);
nlohmann::json to_json(const EngineConfig& config);

} // namespace readpath
