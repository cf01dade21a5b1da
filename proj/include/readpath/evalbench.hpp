// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 readpath contributors

#pragma once

#include "readpath/corpus.hpp"
#include "readpath/pipeline.hpp"

#include <array>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace readpath {

/// One benchmark query: a survey, its occurrence-counted references and the
/// frozen seed list a search engine returned for its key phrases.
struct SurveyEntry {
    PaperId survey_id;
    std::vector<std::string> key_phrases;
    int year = 2020;
    long long citation_count = 0;
    std::map<PaperId, int> reference_occurrences;
    std::vector<PaperId> seeds;
};

std::vector<SurveyEntry> parse_benchmark(std::istream& in);
std::vector<SurveyEntry> load_benchmark(const std::filesystem::path& path);
std::string to_jsonl(const SurveyEntry& entry);

/// citation_count / (2020 - year + 1)
double survey_quality_score(long long citation_count, int year);

/// Reference lists thresholded at >= 1, 2 and 3 occurrences.
struct GroundTruth {
    std::array<std::set<PaperId>, 3> lists;

    /// level in {1, 2, 3}
    const std::set<PaperId>& level(int level) const;
};

GroundTruth ground_truth(const SurveyEntry& entry);

struct Metrics {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    std::size_t hits = 0;
    /// The truth set was empty; all metrics are 0 by definition.
    bool empty_truth = false;
};

/// Precision/recall/F1 of the first k predictions. Precision always divides
/// by k, even when fewer than k papers were predicted.
Metrics metrics_at_k(std::span<const PaperId> predicted, const std::set<PaperId>& truth, int k);
double precision_at_k(std::span<const PaperId> predicted, const std::set<PaperId>& truth, int k);
double f1_at_k(std::span<const PaperId> predicted, const std::set<PaperId>& truth, int k);

struct EvalConfig {
    std::vector<Mode> modes{Mode::Newst};
    std::vector<int> ks{20, 30, 40, 50};
    std::vector<int> levels{1, 2, 3};
    std::vector<int> seed_counts{30};
    PipelineOptions pipeline;
    /// Worker threads over surveys; results are assembled in input order.
    int jobs = 1;

    void validate() const;
};

struct EvalRow {
    PaperId survey_id;
    Mode mode = Mode::Newst;
    int k_seeds = 0;
    int k = 0;
    int level = 1;
    Metrics metrics;
    std::size_t truth_size = 0;
    /// Ground-truth papers missing from the survey's filtered corpus.
    std::size_t truth_unresolvable = 0;
    std::size_t predicted = 0;
};

struct AggregateRow {
    Mode mode = Mode::Newst;
    int k_seeds = 0;
    int k = 0;
    int level = 1;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    /// Surveys averaged (empty-truth rows excluded).
    std::size_t surveys = 0;
};

/// Wall-clock cost of one mode on one survey. Written to runtime.json.
struct RuntimeRow {
    PaperId survey_id;
    Mode mode = Mode::Newst;
    int k_seeds = 0;
    std::size_t nodes = 0;
    std::size_t edges = 0;
    double seconds = 0.0;
};

struct SkippedSurvey {
    PaperId survey_id;
    int k_seeds = 0;
    std::string reason;
};

struct EvalReport {
    std::vector<EvalRow> rows;
    std::vector<AggregateRow> aggregates;
    std::vector<RuntimeRow> runtime;
    std::vector<SkippedSurvey> skipped;
    std::size_t surveys = 0;
};

/// For every survey: filter the corpus to its year, drop the survey itself,
/// resolve its frozen seeds, run each mode and score the top-K prefixes.
EvalReport run_eval(std::span<const SurveyEntry> benchmark, const Corpus& corpus,
                    const EvalConfig& config);

std::string report_json(const EvalReport& report);
std::string report_csv(const EvalReport& report);
std::string runtime_json(const EvalReport& report);

/// Mean aggregate for one cell; throws Error(NotFound) when absent.
const AggregateRow& find_aggregate(const EvalReport& report, Mode mode, int k_seeds, int k,
                                   int level);

} // namespace readpath
