// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 readpath contributors

#include "readpath/corpus.hpp"

#include "readpath/error.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <queue>
#include <set>
#include <unordered_set>

#include <nlohmann/json.hpp>

namespace readpath {

using json = nlohmann::json;

const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidArgument: return "invalid argument";
        case ErrorCode::Parse: return "parse error";
        case ErrorCode::Io: return "io error";
        case ErrorCode::NotFound: return "not found";
        case ErrorCode::NoSeeds: return "no seeds";
        case ErrorCode::Internal: return "internal error";
    }
    return "unknown";
}

namespace {

constexpr std::size_t kDanglingSamples = 10;

std::string line_prefix(std::size_t line) {
    return "papers line " + std::to_string(line) + ": ";
}

const std::set<std::string, std::less<>> kPaperKeys = {
    "id", "title", "year", "venue", "authors", "abstract", "citations"};

PaperRecord parse_paper_line(const std::string& text, std::size_t line, LoadReport& report) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::Parse, line_prefix(line) + "invalid JSON (" + e.what() + ")");
    }
    if (!j.is_object()) {
        throw Error(ErrorCode::Parse, line_prefix(line) + "expected a JSON object");
    }
    for (const auto& [key, _] : j.items()) {
        if (!kPaperKeys.contains(key)) {
            throw Error(ErrorCode::Parse, line_prefix(line) + "unknown field \"" + key + "\"");
        }
    }
    auto fail = [&](const std::string& what) {
        throw Error(ErrorCode::Parse, line_prefix(line) + what);
    };

    PaperRecord rec;
    if (!j.contains("id") || !j["id"].is_string() || j["id"].get_ref<const std::string&>().empty()) {
        fail("\"id\" must be a non-empty string");
    }
    rec.id = j["id"].get<std::string>();

    if (j.contains("title") && !j["title"].is_null()) {
        if (!j["title"].is_string()) fail("\"title\" must be a string");
        rec.title = j["title"].get<std::string>();
    }

    if (!j.contains("year") || j["year"].is_null()) {
        rec.year = kUndatedYear;
        report.undated.push_back(rec.id);
    } else {
        if (!j["year"].is_number_integer()) fail("\"year\" must be an integer");
        auto year = j["year"].get<long long>();
        if (year < kMinYear || year > kMaxYear) {
            fail("\"year\" " + std::to_string(year) + " outside [1900, 2100]");
        }
        rec.year = static_cast<int>(year);
    }

    if (j.contains("venue") && !j["venue"].is_null()) {
        if (!j["venue"].is_string()) fail("\"venue\" must be a string or null");
        rec.venue = j["venue"].get<std::string>();
    }
    if (j.contains("abstract") && !j["abstract"].is_null()) {
        if (!j["abstract"].is_string()) fail("\"abstract\" must be a string or null");
        rec.abstract = j["abstract"].get<std::string>();
    }
    if (j.contains("authors") && !j["authors"].is_null()) {
        if (!j["authors"].is_array()) fail("\"authors\" must be an array of strings");
        for (const auto& a : j["authors"]) {
            if (!a.is_string()) fail("\"authors\" must be an array of strings");
            rec.authors.push_back(a.get<std::string>());
        }
    }
    if (j.contains("citations") && !j["citations"].is_null()) {
        if (!j["citations"].is_array()) fail("\"citations\" must be an array");
        for (const auto& c : j["citations"]) {
            if (!c.is_object() || !c.contains("id") || !c["id"].is_string()) {
                fail("citation entries need a string \"id\"");
            }
            int mentions = 1;
            if (c.contains("mentions")) {
                if (!c["mentions"].is_number_integer() || c["mentions"].get<long long>() < 1) {
                    fail("citation \"mentions\" must be a positive integer");
                }
                mentions = static_cast<int>(c["mentions"].get<long long>());
            }
            rec.citations_out.push_back({c["id"].get<std::string>(), mentions});
        }
    }
    return rec;
}

} // namespace

CitationGraph CitationGraph::from_records(std::vector<PaperRecord> records, LoadReport* report) {
    LoadReport scratch;
    LoadReport& rep = report ? *report : scratch;

    std::sort(records.begin(), records.end(),
              [](const PaperRecord& a, const PaperRecord& b) { return a.id < b.id; });
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& r = records[i];
        if (r.id.empty()) {
            throw Error(ErrorCode::InvalidArgument, "paper id must be non-empty");
        }
        if (i > 0 && records[i - 1].id == r.id) {
            throw Error(ErrorCode::InvalidArgument, "duplicate paper id \"" + r.id + "\"");
        }
        if (r.year < kMinYear || r.year > kMaxYear) {
            throw Error(ErrorCode::InvalidArgument,
                        "paper \"" + r.id + "\" has year outside [1900, 2100]");
        }
    }

    CitationGraph g;
    g.papers_ = std::move(records);
    const auto n = g.papers_.size();
    g.index_.reserve(n);
    for (Index i = 0; i < n; ++i) g.index_.emplace(g.papers_[i].id, i);
    g.out_.assign(n, {});
    g.in_.assign(n, {});

    for (Index i = 0; i < n; ++i) {
        auto& rec = g.papers_[i];
        std::vector<OutEdge> edges;
        edges.reserve(rec.citations_out.size());
        for (const auto& c : rec.citations_out) {
            if (c.mentions < 1) {
                throw Error(ErrorCode::InvalidArgument,
                            "paper \"" + rec.id + "\" cites \"" + c.target +
                                "\" with non-positive mentions");
            }
            if (c.target == rec.id) {
                ++rep.self_citations;
                continue;
            }
            auto it = g.index_.find(c.target);
            if (it == g.index_.end()) {
                ++rep.dangling;
                if (rep.dangling_samples.size() < kDanglingSamples) {
                    rep.dangling_samples.push_back(c.target);
                }
                continue;
            }
            edges.push_back({it->second, c.mentions});
        }
        std::sort(edges.begin(), edges.end(),
                  [](const OutEdge& a, const OutEdge& b) { return a.target < b.target; });
        std::vector<OutEdge> merged;
        merged.reserve(edges.size());
        for (const auto& e : edges) {
            if (!merged.empty() && merged.back().target == e.target) {
                merged.back().mentions += e.mentions;
                ++rep.merged_duplicate_targets;
            } else {
                merged.push_back(e);
            }
        }
        rec.citations_out.clear();
        for (const auto& e : merged) {
            rec.citations_out.push_back({g.papers_[e.target].id, e.mentions});
            g.in_[e.target].push_back(i);
        }
        g.edge_count_ += merged.size();
        g.out_[i] = std::move(merged);
    }
    // in_ lists are filled in increasing source order, so already sorted.
    rep.papers = n;
    rep.citations = g.edge_count_;
    return g;
}

std::optional<CitationGraph::Index> CitationGraph::index_of(std::string_view id) const {
    auto it = index_.find(std::string(id));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

const PaperRecord* CitationGraph::find(std::string_view id) const {
    auto idx = index_of(id);
    return idx ? &papers_[*idx] : nullptr;
}

int CitationGraph::mentions(Index from, Index to) const {
    const auto& edges = out_.at(from);
    auto it = std::lower_bound(edges.begin(), edges.end(), to,
                               [](const OutEdge& e, Index t) { return e.target < t; });
    return (it != edges.end() && it->target == to) ? it->mentions : 0;
}

CitationGraph CitationGraph::induced(std::span<const Index> keep) const {
    std::vector<char> kept(size(), 0);
    for (auto i : keep) kept.at(i) = 1;
    std::vector<PaperRecord> records;
    for (Index i = 0; i < size(); ++i) {
        if (!kept[i]) continue;
        PaperRecord rec = papers_[i];
        rec.citations_out.clear();
        for (const auto& e : out_[i]) {
            if (kept[e.target]) rec.citations_out.push_back({papers_[e.target].id, e.mentions});
        }
        records.push_back(std::move(rec));
    }
    return from_records(std::move(records));
}

VenueTable::VenueTable(std::map<std::string, double> scores) {
    for (auto& [key, value] : scores) {
        if (!(value >= 0.0 && value <= 1.0)) {
            throw Error(ErrorCode::InvalidArgument,
                        "venue \"" + key + "\" score must lie in [0,1]");
        }
        scores_.emplace(key, value);
    }
}

std::optional<double> VenueTable::score(std::string_view venue) const {
    auto it = scores_.find(venue);
    if (it == scores_.end()) return std::nullopt;
    return it->second;
}

CitationGraph parse_papers(std::istream& in, LoadReport& report) {
    std::vector<PaperRecord> records;
    std::string text;
    std::size_t line = 0;
    while (std::getline(in, text)) {
        ++line;
        if (!text.empty() && text.back() == '\r') text.pop_back();
        if (text.find_first_not_of(" \t") == std::string::npos) continue;
        records.push_back(parse_paper_line(text, line, report));
    }
    return CitationGraph::from_records(std::move(records), &report);
}

VenueTable parse_venues(std::istream& in) {
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::Parse, std::string("venues: invalid JSON (") + e.what() + ")");
    }
    if (!j.is_object()) throw Error(ErrorCode::Parse, "venues: expected a JSON object");
    std::map<std::string, double> scores;
    for (const auto& [key, value] : j.items()) {
        if (!value.is_number()) {
            throw Error(ErrorCode::Parse, "venues: score of \"" + key + "\" is not a number");
        }
        scores.emplace(key, value.get<double>());
    }
    return VenueTable(std::move(scores));
}

namespace {

std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, "cannot read " + path.string());
    return in;
}

} // namespace

CitationGraph load_papers(const std::filesystem::path& papers_path, LoadReport& report) {
    auto in = open_input(papers_path);
    return parse_papers(in, report);
}

VenueTable load_venues(const std::filesystem::path& venues_path) {
    auto in = open_input(venues_path);
    return parse_venues(in);
}

Corpus load_corpus(const std::filesystem::path& papers_path,
                   const std::filesystem::path& venues_path) {
    Corpus corpus;
    corpus.graph = load_papers(papers_path, corpus.report);
    corpus.venues = load_venues(venues_path);
    return corpus;
}

std::string to_jsonl(const PaperRecord& record) {
    json j;
    j["id"] = record.id;
    j["title"] = record.title;
    j["year"] = record.year;
    j["venue"] = record.venue ? json(*record.venue) : json(nullptr);
    j["authors"] = record.authors;
    j["abstract"] = record.abstract ? json(*record.abstract) : json(nullptr);
    j["citations"] = json::array();
    for (const auto& c : record.citations_out) {
        j["citations"].push_back({{"id", c.target}, {"mentions", c.mentions}});
    }
    return j.dump();
}

Direction parse_direction(std::string_view text) {
    if (text == "out") return Direction::Out;
    if (text == "both") return Direction::Both;
    throw Error(ErrorCode::InvalidArgument,
                "direction must be \"out\" or \"both\", got \"" + std::string(text) + "\"");
}

const char* to_string(Direction direction) {
    return direction == Direction::Out ? "out" : "both";
}

CitationGraph neighborhood(const CitationGraph& graph, std::span<const PaperId> seeds,
                           int order, Direction direction) {
    if (order < 1 || order > 2) {
        throw Error(ErrorCode::InvalidArgument, "neighborhood order must be 1 or 2");
    }
    using Index = CitationGraph::Index;
    std::vector<int> depth(graph.size(), -1);
    std::vector<Index> frontier;
    for (const auto& s : seeds) {
        auto idx = graph.index_of(s);
        if (!idx) throw Error(ErrorCode::NotFound, "unknown seed id \"" + s + "\"");
        if (depth[*idx] < 0) {
            depth[*idx] = 0;
            frontier.push_back(*idx);
        }
    }
    std::vector<Index> keep = frontier;
    for (int hop = 1; hop <= order; ++hop) {
        std::vector<Index> next;
        auto visit = [&](Index v) {
            if (depth[v] < 0) {
                depth[v] = hop;
                next.push_back(v);
            }
        };
        for (auto u : frontier) {
            for (const auto& e : graph.references(u)) visit(e.target);
            if (direction == Direction::Both) {
                for (auto v : graph.cited_by(u)) visit(v);
            }
        }
        keep.insert(keep.end(), next.begin(), next.end());
        frontier = std::move(next);
    }
    return graph.induced(keep);
}

CitationGraph filter_by_year(const CitationGraph& graph, int cutoff_year) {
    std::vector<CitationGraph::Index> keep;
    for (CitationGraph::Index i = 0; i < graph.size(); ++i) {
        if (graph.paper(i).year <= cutoff_year) keep.push_back(i);
    }
    if (keep.size() == graph.size()) return graph;
    return graph.induced(keep);
}

std::vector<PaperId> filter_by_year(const CitationGraph& graph, std::span<const PaperId> ids,
                                    int cutoff_year) {
    std::vector<PaperId> out;
    for (const auto& id : ids) {
        const auto* rec = graph.find(id);
        if (rec && rec->year <= cutoff_year) out.push_back(id);
    }
    return out;
}

CitationGraph without(const CitationGraph& graph, std::span<const PaperId> excluded) {
    std::unordered_set<std::string_view> drop(excluded.begin(), excluded.end());
    std::vector<CitationGraph::Index> keep;
    for (CitationGraph::Index i = 0; i < graph.size(); ++i) {
        if (!drop.contains(graph.id(i))) keep.push_back(i);
    }
    if (keep.size() == graph.size()) return graph;
    return graph.induced(keep);
}

std::uint64_t fingerprint(const CitationGraph& graph) {
    // FNV-1a over ids, years and edges.
    std::uint64_t h = 1469598103934665603ULL;
    auto mix_bytes = [&](const void* data, std::size_t len) {
        const auto* p = static_cast<const unsigned char*>(data);
        for (std::size_t i = 0; i < len; ++i) {
            h ^= p[i];
            h *= 1099511628211ULL;
        }
    };
    auto mix_u64 = [&](std::uint64_t v) {
        unsigned char bytes[8];
        for (int i = 0; i < 8; ++i) bytes[i] = static_cast<unsigned char>(v >> (8 * i));
        mix_bytes(bytes, 8);
    };
    mix_u64(graph.size());
    for (CitationGraph::Index i = 0; i < graph.size(); ++i) {
        const auto& id = graph.id(i);
        mix_u64(id.size());
        mix_bytes(id.data(), id.size());
        mix_u64(static_cast<std::uint64_t>(graph.paper(i).year));
        for (const auto& e : graph.references(i)) {
            mix_u64(e.target);
            mix_u64(static_cast<std::uint64_t>(e.mentions));
        }
    }
    return h;
}

} // namespace readpath
