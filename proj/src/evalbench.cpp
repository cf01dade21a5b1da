// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 readpath contributors

#include "readpath/evalbench.hpp"

#include "readpath/error.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <istream>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

namespace readpath {

using json = nlohmann::json;

namespace {

std::string bench_prefix(std::size_t line) {
    return "benchmark line " + std::to_string(line) + ": ";
}

SurveyEntry parse_entry(const std::string& text, std::size_t line) {
    auto fail = [&](const std::string& what) {
        throw Error(ErrorCode::Parse, bench_prefix(line) + what);
    };
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        fail(std::string("invalid JSON (") + e.what() + ")");
    }
    if (!j.is_object()) fail("expected a JSON object");
    static const std::set<std::string> kKeys = {"survey_id",      "key_phrases", "year",
                                                "citation_count", "references",  "seeds"};
    for (const auto& [key, _] : j.items()) {
        if (!kKeys.contains(key)) fail("unknown field \"" + key + "\"");
    }

    SurveyEntry e;
    if (!j.contains("survey_id") || !j["survey_id"].is_string() ||
        j["survey_id"].get_ref<const std::string&>().empty()) {
        fail("\"survey_id\" must be a non-empty string");
    }
    e.survey_id = j["survey_id"].get<std::string>();
    if (!j.contains("key_phrases") || !j["key_phrases"].is_array() || j["key_phrases"].empty()) {
        fail("\"key_phrases\" must be a non-empty array");
    }
    for (const auto& p : j["key_phrases"]) {
        if (!p.is_string()) fail("\"key_phrases\" must hold strings");
        e.key_phrases.push_back(p.get<std::string>());
    }
    if (!j.contains("year") || !j["year"].is_number_integer()) fail("\"year\" must be an integer");
    e.year = j["year"].get<int>();
    if (j.contains("citation_count")) {
        if (!j["citation_count"].is_number_integer()) fail("\"citation_count\" must be an integer");
        e.citation_count = j["citation_count"].get<long long>();
    }
    if (j.contains("references")) {
        if (!j["references"].is_array()) fail("\"references\" must be an array");
        for (const auto& r : j["references"]) {
            if (!r.is_object() || !r.contains("id") || !r["id"].is_string()) {
                fail("reference entries need a string \"id\"");
            }
            int occ = 1;
            if (r.contains("occurrences")) {
                if (!r["occurrences"].is_number_integer() || r["occurrences"].get<long long>() < 1) {
                    fail("\"occurrences\" must be a positive integer");
                }
                occ = r["occurrences"].get<int>();
            }
            e.reference_occurrences[r["id"].get<std::string>()] += occ;
        }
    }
    if (j.contains("seeds")) {
        if (!j["seeds"].is_array()) fail("\"seeds\" must be an array");
        for (const auto& s : j["seeds"]) {
            if (!s.is_string()) fail("\"seeds\" must hold strings");
            e.seeds.push_back(s.get<std::string>());
        }
    }
    return e;
}

std::string csv_field(const std::string& text) {
    if (text.find_first_of(",\"\n") == std::string::npos) return text;
    std::string out = "\"";
    for (char c : text) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string fmt6(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", x);
    return buf;
}

} // namespace

std::vector<SurveyEntry> parse_benchmark(std::istream& in) {
    std::vector<SurveyEntry> out;
    std::string text;
    std::size_t line = 0;
    while (std::getline(in, text)) {
        ++line;
        if (!text.empty() && text.back() == '\r') text.pop_back();
        if (text.find_first_not_of(" \t") == std::string::npos) continue;
        out.push_back(parse_entry(text, line));
    }
    return out;
}

std::vector<SurveyEntry> load_benchmark(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, "cannot read " + path.string());
    return parse_benchmark(in);
}

std::string to_jsonl(const SurveyEntry& entry) {
    json j;
    j["survey_id"] = entry.survey_id;
    j["key_phrases"] = entry.key_phrases;
    j["year"] = entry.year;
    j["citation_count"] = entry.citation_count;
    j["references"] = json::array();
    for (const auto& [id, occ] : entry.reference_occurrences) {
        j["references"].push_back({{"id", id}, {"occurrences", occ}});
    }
    j["seeds"] = entry.seeds;
    return j.dump();
}

double survey_quality_score(long long citation_count, int year) {
    if (year > 2020) {
        throw Error(ErrorCode::InvalidArgument, "survey year must not exceed 2020");
    }
    if (citation_count < 0) {
        throw Error(ErrorCode::InvalidArgument, "citation count must be non-negative");
    }
    return static_cast<double>(citation_count) / static_cast<double>(2020 - year + 1);
}

const std::set<PaperId>& GroundTruth::level(int level) const {
    if (level < 1 || level > 3) {
        throw Error(ErrorCode::InvalidArgument, "label level must be 1, 2 or 3");
    }
    return lists[static_cast<std::size_t>(level - 1)];
}

GroundTruth ground_truth(const SurveyEntry& entry) {
    GroundTruth gt;
    for (const auto& [id, occ] : entry.reference_occurrences) {
        if (id == entry.survey_id) continue;
        for (int level = 1; level <= 3; ++level) {
            if (occ >= level) gt.lists[static_cast<std::size_t>(level - 1)].insert(id);
        }
    }
    return gt;
}

Metrics metrics_at_k(std::span<const PaperId> predicted, const std::set<PaperId>& truth, int k) {
    if (k < 1) throw Error(ErrorCode::InvalidArgument, "k must be >= 1");
    Metrics m;
    if (truth.empty()) {
        m.empty_truth = true;
        return m;
    }
    const auto n = std::min(predicted.size(), static_cast<std::size_t>(k));
    std::set<PaperId> seen;
    for (std::size_t i = 0; i < n; ++i) {
        if (truth.contains(predicted[i]) && seen.insert(predicted[i]).second) ++m.hits;
    }
    m.precision = static_cast<double>(m.hits) / static_cast<double>(k);
    m.recall = static_cast<double>(m.hits) / static_cast<double>(truth.size());
    if (m.precision + m.recall > 0.0) {
        m.f1 = 2.0 * m.precision * m.recall / (m.precision + m.recall);
    }
    return m;
}

double precision_at_k(std::span<const PaperId> predicted, const std::set<PaperId>& truth, int k) {
    return metrics_at_k(predicted, truth, k).precision;
}

double f1_at_k(std::span<const PaperId> predicted, const std::set<PaperId>& truth, int k) {
    return metrics_at_k(predicted, truth, k).f1;
}

void EvalConfig::validate() const {
    pipeline.validate();
    if (modes.empty()) throw Error(ErrorCode::InvalidArgument, "eval needs at least one mode");
    if (ks.empty()) throw Error(ErrorCode::InvalidArgument, "eval needs at least one K");
    for (int k : ks) {
        if (k < 1) throw Error(ErrorCode::InvalidArgument, "K values must be >= 1");
    }
    for (int level : levels) {
        if (level < 1 || level > 3) {
            throw Error(ErrorCode::InvalidArgument, "label levels must be 1, 2 or 3");
        }
    }
    if (levels.empty()) throw Error(ErrorCode::InvalidArgument, "eval needs a label level");
    if (seed_counts.empty()) throw Error(ErrorCode::InvalidArgument, "eval needs a seed count");
    for (int s : seed_counts) {
        if (s < 1) throw Error(ErrorCode::InvalidArgument, "seed counts must be >= 1");
    }
    if (jobs < 1) throw Error(ErrorCode::InvalidArgument, "jobs must be >= 1");
}

namespace {

struct SurveyOutcome {
    std::vector<EvalRow> rows;
    std::vector<RuntimeRow> runtime;
    std::vector<SkippedSurvey> skipped;
};

SurveyOutcome evaluate_survey(const SurveyEntry& entry, const Corpus& corpus,
                              const EvalConfig& config) {
    SurveyOutcome out;
    const std::vector<PaperId> excluded{entry.survey_id};
    const auto visible = without(filter_by_year(corpus.graph, entry.year), excluded);
    if (visible.empty()) {
        for (int s : config.seed_counts) {
            out.skipped.push_back({entry.survey_id, s, "no papers before the survey year"});
        }
        return out;
    }
    const auto scores = compute_node_scores(visible, corpus.venues, config.pipeline.params);

    const auto truth = ground_truth(entry);
    std::array<std::set<PaperId>, 3> resolvable;
    std::array<std::size_t, 3> unresolvable{};
    for (std::size_t l = 0; l < 3; ++l) {
        for (const auto& id : truth.lists[l]) {
            if (visible.contains(id)) {
                resolvable[l].insert(id);
            } else {
                ++unresolvable[l];
            }
        }
    }
    const int max_k = *std::max_element(config.ks.begin(), config.ks.end());

    for (int k_seeds : config.seed_counts) {
        QuerySpec query;
        query.key_phrases = entry.key_phrases;
        query.k_seeds = k_seeds;
        query.cutoff_year = entry.year;
        query.k_output = max_k;
        query.excluded = excluded;
        const auto seeds = resolve_seeds(entry.seeds, query, visible);
        if (seeds.ids.empty()) {
            out.skipped.push_back({entry.survey_id, k_seeds, "no resolvable seeds"});
            continue;
        }
        for (Mode mode : config.modes) {
            const auto result = run_pipeline(visible, scores, seeds, config.pipeline, mode, max_k);
            for (const auto& id : result.ranked) {
                const auto* rec = visible.find(id);
                if (!rec || rec->year > entry.year || id == entry.survey_id) {
                    throw Error(ErrorCode::Internal,
                                "evaluation leak: \"" + id + "\" is not visible to survey \"" +
                                    entry.survey_id + "\"");
                }
            }
            out.runtime.push_back({entry.survey_id, mode, k_seeds, result.graph_nodes,
                                   result.graph_edges, result.seconds});
            for (int k : config.ks) {
                for (int level : config.levels) {
                    const auto l = static_cast<std::size_t>(level - 1);
                    EvalRow row;
                    row.survey_id = entry.survey_id;
                    row.mode = mode;
                    row.k_seeds = k_seeds;
                    row.k = k;
                    row.level = level;
                    row.metrics = metrics_at_k(result.ranked, resolvable[l], k);
                    row.truth_size = resolvable[l].size();
                    row.truth_unresolvable = unresolvable[l];
                    row.predicted = std::min(result.ranked.size(), static_cast<std::size_t>(k));
                    out.rows.push_back(std::move(row));
                }
            }
        }
    }
    return out;
}

} // namespace

EvalReport run_eval(std::span<const SurveyEntry> benchmark, const Corpus& corpus,
                    const EvalConfig& config) {
    config.validate();
    std::vector<SurveyOutcome> outcomes(benchmark.size());

    const auto workers = std::min<std::size_t>(static_cast<std::size_t>(config.jobs),
                                               std::max<std::size_t>(benchmark.size(), 1));
    if (workers <= 1) {
        for (std::size_t i = 0; i < benchmark.size(); ++i) {
            outcomes[i] = evaluate_survey(benchmark[i], corpus, config);
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::exception_ptr> errors(workers);
        std::vector<std::thread> threads;
        for (std::size_t w = 0; w < workers; ++w) {
            threads.emplace_back([&, w] {
                try {
                    for (auto i = next++; i < benchmark.size(); i = next++) {
                        outcomes[i] = evaluate_survey(benchmark[i], corpus, config);
                    }
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
        for (auto& t : threads) t.join();
        for (auto& e : errors) {
            if (e) std::rethrow_exception(e);
        }
    }

    EvalReport report;
    report.surveys = benchmark.size();
    for (auto& o : outcomes) {
        std::move(o.rows.begin(), o.rows.end(), std::back_inserter(report.rows));
        std::move(o.runtime.begin(), o.runtime.end(), std::back_inserter(report.runtime));
        std::move(o.skipped.begin(), o.skipped.end(), std::back_inserter(report.skipped));
    }

    for (Mode mode : config.modes) {
        for (int k_seeds : config.seed_counts) {
            for (int k : config.ks) {
                for (int level : config.levels) {
                    AggregateRow agg{mode, k_seeds, k, level};
                    for (const auto& row : report.rows) {
                        if (row.mode != mode || row.k_seeds != k_seeds || row.k != k ||
                            row.level != level || row.metrics.empty_truth) {
                            continue;
                        }
                        agg.precision += row.metrics.precision;
                        agg.recall += row.metrics.recall;
                        agg.f1 += row.metrics.f1;
                        ++agg.surveys;
                    }
                    if (agg.surveys > 0) {
                        const auto n = static_cast<double>(agg.surveys);
                        agg.precision /= n;
                        agg.recall /= n;
                        agg.f1 /= n;
                    }
                    report.aggregates.push_back(agg);
                }
            }
        }
    }
    return report;
}

const AggregateRow& find_aggregate(const EvalReport& report, Mode mode, int k_seeds, int k,
                                   int level) {
    for (const auto& a : report.aggregates) {
        if (a.mode == mode && a.k_seeds == k_seeds && a.k == k && a.level == level) return a;
    }
    throw Error(ErrorCode::NotFound, std::string("no aggregate for ") + to_string(mode));
}

std::string report_json(const EvalReport& report) {
    json j;
    j["surveys"] = report.surveys;
    j["rows"] = json::array();
    for (const auto& r : report.rows) {
        j["rows"].push_back({{"survey_id", r.survey_id},
                             {"mode", to_string(r.mode)},
                             {"k_seeds", r.k_seeds},
                             {"k", r.k},
                             {"level", r.level},
                             {"precision", r.metrics.precision},
                             {"recall", r.metrics.recall},
                             {"f1", r.metrics.f1},
                             {"hits", r.metrics.hits},
                             {"empty_truth", r.metrics.empty_truth},
                             {"truth_size", r.truth_size},
                             {"truth_unresolvable", r.truth_unresolvable},
                             {"predicted", r.predicted}});
    }
    j["aggregates"] = json::array();
    for (const auto& a : report.aggregates) {
        j["aggregates"].push_back({{"mode", to_string(a.mode)},
                                   {"k_seeds", a.k_seeds},
                                   {"k", a.k},
                                   {"level", a.level},
                                   {"precision", a.precision},
                                   {"recall", a.recall},
                                   {"f1", a.f1},
                                   {"surveys", a.surveys}});
    }
    j["skipped"] = json::array();
    for (const auto& s : report.skipped) {
        j["skipped"].push_back(
            {{"survey_id", s.survey_id}, {"k_seeds", s.k_seeds}, {"reason", s.reason}});
    }
    return j.dump(2) + "\n";
}

std::string report_csv(const EvalReport& report) {
    std::ostringstream out;
    out << "survey_id,mode,k_seeds,k,level,precision,recall,f1,hits,truth_size,"
           "truth_unresolvable,predicted,empty_truth\n";
    for (const auto& r : report.rows) {
        out << csv_field(r.survey_id) << ',' << to_string(r.mode) << ',' << r.k_seeds << ',' << r.k << ','
            << r.level << ',' << fmt6(r.metrics.precision) << ',' << fmt6(r.metrics.recall) << ','
            << fmt6(r.metrics.f1) << ',' << r.metrics.hits << ',' << r.truth_size << ','
            << r.truth_unresolvable << ',' << r.predicted << ','
            << (r.metrics.empty_truth ? "true" : "false") << '\n';
    }
    return out.str();
}

std::string runtime_json(const EvalReport& report) {
    json j = json::array();
    for (const auto& r : report.runtime) {
        j.push_back({{"survey_id", r.survey_id},
                     {"mode", to_string(r.mode)},
                     {"k_seeds", r.k_seeds},
                     {"nodes", r.nodes},
                     {"edges", r.edges},
                     {"seconds", r.seconds}});
    }
    return j.dump(2) + "\n";
}

} // namespace readpath
