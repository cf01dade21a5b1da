// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 readpath contributors

#include "fixtures.hpp"
#include "readpath/error.hpp"
#include "readpath/evalbench.hpp"
#include "readpath/synth.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

using namespace readpath;

namespace {

bool near(double a, double b) { return std::abs(a - b) <= 1e-12; }

// S is the survey. It cites both seeds, so leaving it in would put it next
// to every seed.
Corpus hand_corpus() {
    Corpus c;
    c.graph = fixture::graph({{"s1", 2018, {"f1", "f2", "p1"}},
                              {"s2", 2018, {"f1", "f2"}},
                              {"f1", 2005},
                              {"f2", 2006},
                              {"p1", 2015},
                              {"S", 2019, {"s1", "s2", "f1"}},
                              {"late", 2020, {"f1", "S"}}});
    return c;
}

SurveyEntry hand_survey() {
    SurveyEntry e;
    e.survey_id = "S";
    e.key_phrases = {"hand"};
    e.year = 2019;
    e.reference_occurrences = {{"f1", 2}, {"f2", 1}, {"p1", 1}, {"ghost", 3}};
    e.seeds = {"S", "s1", "late", "s2"};
    return e;
}

const EvalRow& row_of(const EvalReport& r, const std::string& survey, Mode mode, int k, int level) {
    for (const auto& row : r.rows) {
        if (row.survey_id == survey && row.mode == mode && row.k == k && row.level == level) return row;
    }
    throw Error(ErrorCode::NotFound, "row");
}

} // namespace

TEST_CASE("metrics on the worked example") {
    const std::set<PaperId> truth{"A", "B", "C", "D"};
    const std::vector<PaperId> predicted{"A", "B", "X", "Y"};
    const auto m = metrics_at_k(predicted, truth, 4);
    CHECK(m.hits == 2);
    CHECK(near(m.precision, 0.5));
    CHECK(near(m.recall, 0.5));
    CHECK(near(m.f1, 0.5));
    CHECK(near(precision_at_k(predicted, truth, 4), 0.5));
    CHECK(near(f1_at_k(predicted, truth, 4), 0.5));
}

TEST_CASE("metrics edge cases") {
    const std::set<PaperId> truth{"A", "B"};
    const std::vector<PaperId> all{"A", "B"};
    const auto perfect = metrics_at_k(all, truth, 2);
    CHECK(perfect.precision == 1.0);
    CHECK(perfect.recall == 1.0);
    CHECK(perfect.f1 == 1.0);

    const std::vector<PaperId> miss{"X", "Y"};
    const auto none = metrics_at_k(miss, truth, 2);
    CHECK(none.hits == 0);
    CHECK(none.f1 == 0.0);

    // Short lists still divide by k.
    const auto short_list = metrics_at_k(all, truth, 4);
    CHECK(near(short_list.precision, 0.5));
    CHECK(short_list.recall == 1.0);

    // Only the first k count, and duplicates count once.
    const std::vector<PaperId> dup{"A", "A", "B"};
    CHECK(metrics_at_k(dup, truth, 2).hits == 1);

    const auto empty = metrics_at_k(all, {}, 2);
    CHECK(empty.empty_truth);
    CHECK(empty.precision == 0.0);
    CHECK_THROWS_AS(metrics_at_k(all, truth, 0), Error);
}

TEST_CASE("ground truth levels and quality score") {
    SurveyEntry e;
    e.survey_id = "S";
    e.reference_occurrences = {{"a", 1}, {"b", 2}, {"c", 3}, {"S", 5}};
    const auto gt = ground_truth(e);
    CHECK(gt.level(1) == std::set<PaperId>{"a", "b", "c"});
    CHECK(gt.level(2) == std::set<PaperId>{"b", "c"});
    CHECK(gt.level(3) == std::set<PaperId>{"c"});
    CHECK_THROWS_AS(gt.level(4), Error);

    CHECK(near(survey_quality_score(120, 2017), 30.0));
    CHECK(near(survey_quality_score(7, 2020), 7.0));
    CHECK_THROWS_AS(survey_quality_score(7, 2021), Error);
    CHECK_THROWS_AS(survey_quality_score(-1, 2010), Error);
}

TEST_CASE("benchmark parsing") {
    std::istringstream ok(
        R"({"survey_id":"S","key_phrases":["x"],"year":2018,"references":[{"id":"a","occurrences":2},{"id":"b"}],"seeds":["a"]})"
        "\n\n");
    const auto b = parse_benchmark(ok);
    REQUIRE(b.size() == 1);
    CHECK(b[0].reference_occurrences.at("a") == 2);
    CHECK(b[0].reference_occurrences.at("b") == 1);

    std::istringstream back(to_jsonl(b[0]) + "\n");
    const auto again = parse_benchmark(back);
    CHECK(again[0].reference_occurrences == b[0].reference_occurrences);
    CHECK(again[0].seeds == b[0].seeds);

    auto fails_on_line = [](const std::string& text, const std::string& what) {
        std::istringstream in(text);
        CHECK_THROWS_WITH_AS(parse_benchmark(in), doctest::Contains(what.c_str()), Error);
    };
    const std::string good = R"({"survey_id":"S","key_phrases":["x"],"year":2018})";
    fails_on_line(good + "\n{oops\n", "benchmark line 2");
    fails_on_line(good + "\n" + R"({"survey_id":"T","key_phrases":["x"],"year":2018,"extra":1})",
                  "unknown field");
    fails_on_line(R"({"survey_id":"S","key_phrases":[],"year":2018})", "key_phrases");
    fails_on_line(R"({"survey_id":"S","key_phrases":["x"],"year":2018,"references":[{"id":"a","occurrences":0}]})",
                  "occurrences");
}

TEST_CASE("hand fixture gives hand-checked scores") {
    const auto corpus = hand_corpus();
    const std::vector<SurveyEntry> bench{hand_survey()};
    EvalConfig cfg;
    cfg.modes = {Mode::NewstC, Mode::SeedsOnly, Mode::Newst};
    cfg.ks = {2, 4};
    cfg.levels = {1, 2, 3};
    cfg.seed_counts = {10};
    const auto r = run_eval(bench, corpus, cfg);
    CHECK(r.surveys == 1);
    CHECK(r.rows.size() == 3 * 2 * 3);
    CHECK(r.skipped.empty());

    // Both seeds cite f1 and f2; those become the terminals.
    const auto& c1 = row_of(r, "S", Mode::NewstC, 2, 1);
    CHECK(c1.metrics.hits == 2);
    CHECK(near(c1.metrics.precision, 1.0));
    CHECK(near(c1.metrics.recall, 2.0 / 3.0));
    CHECK(c1.truth_size == 3);
    CHECK(c1.truth_unresolvable == 1);
    const auto& c2 = row_of(r, "S", Mode::NewstC, 2, 2);
    CHECK(near(c2.metrics.precision, 0.5));
    CHECK(near(c2.metrics.recall, 1.0));
    CHECK(row_of(r, "S", Mode::NewstC, 2, 3).metrics.empty_truth);

    const auto& seeds = row_of(r, "S", Mode::SeedsOnly, 2, 1);
    CHECK(seeds.metrics.hits == 0);

    // Hits can only grow with K.
    for (Mode m : cfg.modes) {
        for (int level : {1, 2}) {
            CHECK(row_of(r, "S", m, 2, level).metrics.hits <= row_of(r, "S", m, 4, level).metrics.hits);
        }
    }

    const auto& agg = find_aggregate(r, Mode::NewstC, 10, 2, 1);
    CHECK(agg.surveys == 1);
    CHECK(near(agg.precision, 1.0));
    CHECK(find_aggregate(r, Mode::NewstC, 10, 2, 3).surveys == 0);
    CHECK_THROWS_AS(find_aggregate(r, Mode::NewstU, 10, 2, 1), Error);
}

TEST_CASE("the survey and later papers never reach the output") {
    const auto corpus = hand_corpus();
    const std::vector<SurveyEntry> bench{hand_survey()};
    EvalConfig cfg;
    cfg.modes = all_modes();
    cfg.ks = {7};
    cfg.levels = {1};
    const auto r = run_eval(bench, corpus, cfg);
    for (const auto& row : r.rows) CHECK(row.predicted <= 5);  // five visible papers
    const auto json = report_json(r);
    CHECK(json.find("\"late\"") == std::string::npos);
}

TEST_CASE("skipped surveys and empty truth") {
    const auto corpus = hand_corpus();
    SurveyEntry unseeded = hand_survey();
    unseeded.survey_id = "U";
    unseeded.seeds = {"nothing", "late"};
    SurveyEntry ghostly = hand_survey();
    ghostly.survey_id = "G";
    ghostly.reference_occurrences = {{"ghost", 1}};
    SurveyEntry early = hand_survey();
    early.survey_id = "E";
    early.year = 1990;
    const std::vector<SurveyEntry> bench{hand_survey(), unseeded, ghostly, early};

    EvalConfig cfg;
    cfg.modes = {Mode::NewstC};
    cfg.ks = {2};
    cfg.levels = {1};
    const auto r = run_eval(bench, corpus, cfg);
    REQUIRE(r.skipped.size() == 2);
    CHECK(r.skipped[0].survey_id == "U");
    CHECK(r.skipped[0].reason == "no resolvable seeds");
    CHECK(r.skipped[1].survey_id == "E");
    CHECK(row_of(r, "G", Mode::NewstC, 2, 1).metrics.empty_truth);
    const auto& agg = find_aggregate(r, Mode::NewstC, 30, 2, 1);
    CHECK(agg.surveys == 1);
    CHECK(near(agg.precision, 1.0));
}

TEST_CASE("config validation") {
    EvalConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    cfg.ks = {0};
    CHECK_THROWS_AS(cfg.validate(), Error);
    cfg = {};
    cfg.levels = {4};
    CHECK_THROWS_AS(cfg.validate(), Error);
    cfg = {};
    cfg.modes.clear();
    CHECK_THROWS_AS(cfg.validate(), Error);
    cfg = {};
    cfg.jobs = 0;
    CHECK_THROWS_AS(cfg.validate(), Error);
}

TEST_CASE("reports are identical across worker counts") {
    BenchmarkShape shape;
    shape.topics = 3;
    shape.background = 80;
    const auto synth = make_benchmark_corpus(shape);
    const auto corpus = synth.to_corpus();
    EvalConfig cfg;
    cfg.modes = {Mode::Newst, Mode::NewstC, Mode::SeedsOnly};
    cfg.ks = {10, 20};
    const auto one = run_eval(synth.benchmark, corpus, cfg);
    cfg.jobs = 3;
    const auto three = run_eval(synth.benchmark, corpus, cfg);
    CHECK(report_json(one) == report_json(three));
    CHECK(report_csv(one) == report_csv(three));
    CHECK(one.runtime.size() == three.runtime.size());

    const auto csv = report_csv(one);
    CHECK(csv.rfind("survey_id,mode,k_seeds,k,level,precision,recall,f1,hits,", 0) == 0);
    const auto lines = static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n'));
    CHECK(lines == one.rows.size() + 1);
}
