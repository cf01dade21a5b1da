// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 readpath contributors

#pragma once

#include "readpath/corpus.hpp"

#include <chrono>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace readpath {

struct QuerySpec {
    std::vector<std::string> key_phrases;
    int k_seeds = 30;
    std::optional<int> cutoff_year;
    int k_output = 30;
    /// Papers that must never appear (e.g. the survey a benchmark query came from).
    std::vector<PaperId> excluded;

    void validate() const;
    /// Lookup key for offline providers: phrases joined with "; ".
    std::string key() const;
};

using Deadline = std::chrono::steady_clock::time_point;

inline Deadline no_deadline() { return Deadline::max(); }

/// Source of rank-ordered candidate papers for a query.
class SeedProvider {
public:
    virtual ~SeedProvider() = default;
    virtual std::vector<PaperId> search(const QuerySpec& query, Deadline deadline) const = 0;
};

/// Frozen query -> ids table, loaded from a JSON object file.
class OfflineSeedProvider final : public SeedProvider {
public:
    explicit OfflineSeedProvider(std::map<std::string, std::vector<PaperId>> table)
        : table_(std::move(table)) {}

    static OfflineSeedProvider from_file(const std::filesystem::path& path);

    std::vector<PaperId> search(const QuerySpec& query, Deadline deadline) const override;

    const std::map<std::string, std::vector<PaperId>>& table() const noexcept { return table_; }

private:
    std::map<std::string, std::vector<PaperId>> table_;
};

/// Generic search-endpoint adapter.
///
/// `url_template` is an absolute http URL where `{query}` is replaced by the
/// URL-encoded query key and `{k}` by k_seeds, for example
/// `http://localhost:8000/search?q={query}&limit={k}`. The response must be
/// JSON; `results_pointer` (a JSON pointer, "" for the root) selects an array,
/// and `id_pointer` selects the id inside each element ("" when the elements
/// are plain strings).
struct HttpSeedConfig {
    std::string url_template;
    std::string results_pointer;
    std::string id_pointer;
    std::map<std::string, std::string> headers;
    int timeout_ms = 10000;
};

class HttpSeedProvider final : public SeedProvider {
public:
    explicit HttpSeedProvider(HttpSeedConfig config);

    std::vector<PaperId> search(const QuerySpec& query, Deadline deadline) const override;

    /// Exposed for tests: the request target for a query.
    std::string request_url(const QuerySpec& query) const;

private:
    HttpSeedConfig config_;
};

/// Rank-ordered seeds that resolved in the corpus, with drop counts.
struct SeedSet {
    std::vector<PaperId> ids;
    std::size_t dropped_unresolvable = 0;
    std::size_t dropped_cutoff = 0;
    std::size_t dropped_excluded = 0;
    std::size_t dropped_duplicates = 0;

    std::size_t dropped() const {
        return dropped_unresolvable + dropped_cutoff + dropped_excluded + dropped_duplicates;
    }
};

/// Applies exclusion, cutoff and resolvability to raw candidates and keeps the
/// first k_seeds survivors.
SeedSet resolve_seeds(std::span<const PaperId> candidates, const QuerySpec& query,
                      const CitationGraph& graph);

/// Queries the provider and resolves. Throws Error(NoSeeds) when nothing
/// usable comes back.
SeedSet provide_seeds(const SeedProvider& provider, const QuerySpec& query,
                      const CitationGraph& graph, Deadline deadline = no_deadline());

/// For each non-seed paper, how many distinct seeds cite it. With
/// `include_seeds`, seeds cited by other seeds are counted as well.
std::map<PaperId, int> cooccurrence_counts(const CitationGraph& subgraph,
                                           std::span<const PaperId> seeds,
                                           bool include_seeds = false);

enum class TerminalMode { Reallocated, Initial, Union, Intersection };

TerminalMode parse_terminal_mode(std::string_view text);
const char* to_string(TerminalMode mode);

struct TerminalSet {
    std::vector<PaperId> ids;  ///< sorted
    TerminalMode mode = TerminalMode::Reallocated;
    /// True when the requested set was empty and the initial seeds were used.
    bool fallback = false;
    /// Papers with co-occurrence >= threshold, before any fallback.
    std::vector<PaperId> reallocated;
};

/// Builds the compulsory terminal set. Reallocated papers are those cited by
/// at least `threshold` seeds; a seed qualifies too when enough other seeds
/// cite it, which is what makes the intersection mode non-trivial.
TerminalSet reallocate_terminals(const CitationGraph& subgraph, std::span<const PaperId> seeds,
                                 int threshold, TerminalMode mode);

} // namespace readpath
