// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 readpath contributors

#pragma once

#include "readpath/corpus.hpp"
#include "readpath/evalbench.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace readpath {

/// A generated corpus with its venue table, benchmark and frozen seed lists.
struct SynthCorpus {
    std::vector<PaperRecord> papers;
    std::map<std::string, double> venues;
    std::vector<SurveyEntry> benchmark;
    /// query key -> ranked candidate ids, the offline seed provider format
    std::map<std::string, std::vector<PaperId>> seeds;

    Corpus to_corpus() const;
};

/// Topic-structured citation corpus: per topic a few old foundation papers,
/// a layer of core papers citing them, and recent papers citing the core.
/// One survey per topic references the foundations and the popular core.
/// Seed lists hold recent papers plus a few entries that resolution must drop
/// (the survey itself, an unknown id, papers newer than the survey).
struct BenchmarkShape {
    int topics = 8;
    int foundations = 15;
    int core = 60;
    int recent = 120;
    int background = 400;
    int seeds_per_survey = 30;
    std::uint64_t rng_seed = 20190601;
};

SynthCorpus make_benchmark_corpus(const BenchmarkShape& shape = {});

/// Two-level citation fan-out around one query: seeds cite first-order papers
/// which cite second-order papers, padded with extra links up to
/// `target_edges`. Used for timing the full query path.
struct FanoutShape {
    int seeds = 30;
    int first_order = 580;
    int second_order = 1140;
    int hubs = 40;
    int target_edges = 2900;
    std::uint64_t rng_seed = 4242;
};

inline constexpr const char* kFanoutQuery = "citation fanout";

SynthCorpus make_fanout_corpus(const FanoutShape& shape = {});

/// Writes papers.jsonl, venues.json, bench.jsonl, seeds.json and a config.json
/// pointing at them with relative paths.
void write_fixture(const SynthCorpus& corpus, const std::filesystem::path& dir);

} // namespace readpath
