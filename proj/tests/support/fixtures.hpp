// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 readpath contributors

#pragma once

#include "readpath/corpus.hpp"
#include "readpath/scoring.hpp"

#include <cstdlib>
#include <filesystem>
#include <optional>
#include <random>
#include <string>
#include <unistd.h>
#include <vector>

namespace fixture {

struct P {
    std::string id;
    int year = 2010;
    std::vector<std::string> cites;
    std::optional<std::string> venue = std::nullopt;
};

inline readpath::PaperRecord record(const P& p) {
    readpath::PaperRecord r;
    r.id = p.id;
    r.title = "Paper " + p.id;
    r.year = p.year;
    r.venue = p.venue;
    for (const auto& c : p.cites) r.citations_out.push_back({c, 1});
    return r;
}

inline readpath::CitationGraph graph(const std::vector<P>& papers) {
    std::vector<readpath::PaperRecord> records;
    for (const auto& p : papers) records.push_back(record(p));
    return readpath::CitationGraph::from_records(std::move(records));
}

/// Random citation graph; ids are zero padded so index order matches creation order.
inline readpath::CitationGraph random_citations(std::mt19937_64& rng, int n, double p) {
    std::vector<readpath::PaperRecord> records;
    for (int i = 0; i < n; ++i) {
        readpath::PaperRecord r;
        char id[16];
        std::snprintf(id, sizeof id, "p%03d", i);
        r.id = id;
        r.year = 1990 + static_cast<int>(rng() % 30);
        records.push_back(std::move(r));
    }
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i != j && static_cast<double>(rng() >> 11) * 0x1.0p-53 < p) {
                records[static_cast<std::size_t>(i)].citations_out.push_back(
                    {records[static_cast<std::size_t>(j)].id, 1 + static_cast<int>(rng() % 3)});
            }
        }
    }
    return readpath::CitationGraph::from_records(std::move(records));
}

/// Scratch directory removed on destruction.
class TempDir {
public:
    TempDir() {
        auto base = std::filesystem::temp_directory_path() / "readpath-test-XXXXXX";
        std::string tmpl = base.string();
        if (!mkdtemp(tmpl.data())) std::abort();
        path_ = tmpl;
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

private:
    std::filesystem::path path_;
};

} // namespace fixture
