// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 readpath contributors

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace readpath {

using PaperId = std::string;

struct Citation {
    PaperId target;
    int mentions = 1;

    bool operator==(const Citation&) const = default;
};

struct PaperRecord {
    PaperId id;
    std::string title;
    int year = 1900;
    std::optional<std::string> venue;
    std::vector<std::string> authors;
    std::optional<std::string> abstract;
    std::vector<Citation> citations_out;

    bool operator==(const PaperRecord&) const = default;
};

inline constexpr int kMinYear = 1900;
inline constexpr int kMaxYear = 2100;
/// Year assigned to papers without one.
inline constexpr int kUndatedYear = kMinYear;

/// What load_corpus had to repair. Anything it cannot repair is an Error.
struct LoadReport {
    std::size_t papers = 0;
    std::size_t citations = 0;
    std::size_t dangling = 0;
    std::size_t self_citations = 0;
    std::size_t merged_duplicate_targets = 0;
    std::vector<PaperId> undated;
    /// First few dangling targets, for diagnostics.
    std::vector<PaperId> dangling_samples;

    bool clean() const {
        return dangling == 0 && self_citations == 0 && merged_duplicate_targets == 0 &&
               undated.empty();
    }
};

/// Immutable citation graph. Papers are stored sorted by id, so index order is
/// lexicographic id order; every deterministic tie-break downstream relies on
/// this.
class CitationGraph {
public:
    using Index = std::uint32_t;

    struct OutEdge {
        Index target;
        int mentions;

        bool operator==(const OutEdge&) const = default;
    };

    CitationGraph() = default;

    /// Validates and indexes the records. Dangling targets and self-citations are
    /// dropped, duplicate targets merged (mentions summed), all counted in
    /// `report` when given. Duplicate paper ids throw.
    static CitationGraph from_records(std::vector<PaperRecord> records,
                                      LoadReport* report = nullptr);

    std::size_t size() const noexcept { return papers_.size(); }
    bool empty() const noexcept { return papers_.empty(); }
    std::size_t edge_count() const noexcept { return edge_count_; }

    const std::vector<PaperRecord>& papers() const noexcept { return papers_; }
    const PaperRecord& paper(Index i) const { return papers_.at(i); }
    const PaperId& id(Index i) const { return papers_.at(i).id; }

    std::optional<Index> index_of(std::string_view id) const;
    bool contains(std::string_view id) const { return index_of(id).has_value(); }
    const PaperRecord* find(std::string_view id) const;

    /// Papers cited by `i`, sorted by target index.
    std::span<const OutEdge> references(Index i) const { return out_.at(i); }
    /// Papers citing `i`, sorted.
    std::span<const Index> cited_by(Index i) const { return in_.at(i); }

    /// Mentions of `to` inside `from`; 0 when `from` does not cite `to`.
    int mentions(Index from, Index to) const;

    /// Subgraph induced by `keep` (any order, duplicates ignored).
    CitationGraph induced(std::span<const Index> keep) const;

    bool operator==(const CitationGraph& other) const {
        return papers_ == other.papers_;
    }

private:
    std::vector<PaperRecord> papers_;
    std::unordered_map<std::string, Index> index_;
    std::vector<std::vector<OutEdge>> out_;
    std::vector<std::vector<Index>> in_;
    std::size_t edge_count_ = 0;
};

/// Venue key to a score in [0,1].
class VenueTable {
public:
    VenueTable() = default;
    explicit VenueTable(std::map<std::string, double> scores);

    std::optional<double> score(std::string_view venue) const;
    std::size_t size() const noexcept { return scores_.size(); }
    const std::map<std::string, double, std::less<>>& entries() const noexcept {
        return scores_;
    }

private:
    std::map<std::string, double, std::less<>> scores_;
};

struct Corpus {
    CitationGraph graph;
    VenueTable venues;
    LoadReport report;
};

// Parsing. Errors carry 1-based line numbers for JSONL input.
CitationGraph parse_papers(std::istream& in, LoadReport& report);
VenueTable parse_venues(std::istream& in);

Corpus load_corpus(const std::filesystem::path& papers_path,
                   const std::filesystem::path& venues_path);
CitationGraph load_papers(const std::filesystem::path& papers_path, LoadReport& report);
VenueTable load_venues(const std::filesystem::path& venues_path);

/// One JSONL line, same field set as the papers file.
std::string to_jsonl(const PaperRecord& record);

enum class Direction { Out, Both };

Direction parse_direction(std::string_view text);
const char* to_string(Direction direction);

/// Seeds plus everything within `order` hops (1 or 2). `Out` follows
/// references only; `Both` also follows citing papers.
CitationGraph neighborhood(const CitationGraph& graph, std::span<const PaperId> seeds,
                           int order, Direction direction = Direction::Out);

/// Keeps papers with year <= cutoff_year.
CitationGraph filter_by_year(const CitationGraph& graph, int cutoff_year);
std::vector<PaperId> filter_by_year(const CitationGraph& graph, std::span<const PaperId> ids,
                                    int cutoff_year);

/// Drops the given ids (unknown ids are ignored).
CitationGraph without(const CitationGraph& graph, std::span<const PaperId> excluded);

/// Stable 64-bit digest of ids and edges, used to validate score caches.
std::uint64_t fingerprint(const CitationGraph& graph);

} // namespace readpath
