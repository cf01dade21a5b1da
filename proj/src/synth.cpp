// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 readpath contributors

#include "readpath/synth.hpp"

#include "readpath/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <set>

#include <nlohmann/json.hpp>

namespace readpath {

using json = nlohmann::json;

namespace {

// std distributions differ between standard libraries; the fixtures must not.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : engine_() % n; }
    int between(int lo, int hi) { return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1))); }
    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    bool chance(double p) { return unit() < p; }

    /// Index in [0, n) skewed toward 0.
    int skewed(int n, double power = 2.0) {
        const int i = static_cast<int>(static_cast<double>(n) * std::pow(unit(), power));
        return std::min(i, n - 1);
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
    }

private:
    std::mt19937_64 engine_;
};

std::string make_id(const char* prefix, int topic, int i) {
    char buf[32];
    if (topic < 0) {
        std::snprintf(buf, sizeof buf, "%s%04d", prefix, i);
    } else {
        std::snprintf(buf, sizeof buf, "T%02d%s%03d", topic, prefix, i);
    }
    return buf;
}

struct Draft {
    PaperRecord record;
    std::set<PaperId> cited;

    void cite(const PaperId& target, int mentions) {
        if (target == record.id || !cited.insert(target).second) return;
        record.citations_out.push_back({target, mentions});
    }
};

const std::vector<std::string> kPhrases = {
    "pretrained language model", "graph neural network",   "knowledge graph embedding",
    "neural machine translation", "reinforcement learning", "object detection",
    "recommender system",         "speech recognition",     "federated learning",
    "question answering",         "image segmentation",     "anomaly detection",
};

const std::vector<std::pair<std::string, double>> kVenues = {
    {"ACL", 0.95},  {"NeurIPS", 0.95}, {"ICML", 0.9},      {"KDD", 0.85}, {"CVPR", 0.9},
    {"EMNLP", 0.8}, {"AAAI", 0.7},     {"COLING", 0.55},   {"ICONIP", 0.3}, {"arXiv", 0.1},
};

std::optional<std::string> pick_venue(Rng& rng, int quality) {
    // quality 0 = strong, 1 = mixed, 2 = weak
    if (quality == 2 && rng.chance(0.3)) return std::nullopt;
    int i = 0;
    switch (quality) {
        case 0: i = rng.between(0, 5); break;
        case 1: i = rng.between(2, 9); break;
        default: i = rng.between(6, 9); break;
    }
    return kVenues[static_cast<std::size_t>(i)].first;
}

std::string topic_phrase(int t) {
    if (static_cast<std::size_t>(t) < kPhrases.size()) return kPhrases[static_cast<std::size_t>(t)];
    return "topic " + std::to_string(t);
}

void fill_venue_table(SynthCorpus& out) {
    for (const auto& [name, score] : kVenues) out.venues.emplace(name, score);
}

} // namespace

Corpus SynthCorpus::to_corpus() const {
    Corpus c;
    c.graph = CitationGraph::from_records(papers, &c.report);
    c.venues = VenueTable(venues);
    return c;
}

SynthCorpus make_benchmark_corpus(const BenchmarkShape& shape) {
    if (shape.topics < 1 || shape.foundations < 2 || shape.core < 4 ||
        shape.recent < shape.seeds_per_survey + 4 || shape.background < 0 ||
        shape.seeds_per_survey < 2) {
        throw Error(ErrorCode::InvalidArgument, "synth: benchmark shape too small");
    }
    Rng rng(shape.rng_seed);
    SynthCorpus out;
    fill_venue_table(out);

    std::vector<Draft> background;
    for (int i = 0; i < shape.background; ++i) {
        Draft d;
        d.record.id = make_id("BG", -1, i);
        d.record.title = "Background study " + std::to_string(i);
        d.record.year = rng.between(1995, 2020);
        d.record.venue = pick_venue(rng, 2);
        d.record.authors = {"Author B" + std::to_string(rng.below(300))};
        background.push_back(std::move(d));
    }
    auto older_background = [&](int year) -> const PaperId* {
        for (int tries = 0; tries < 8; ++tries) {
            const auto& b = background[rng.below(background.size())];
            if (b.record.year < year) return &b.record.id;
        }
        return nullptr;
    };
    for (auto& d : background) {
        if (shape.background < 2) break;
        const int n = rng.between(0, 3);
        for (int j = 0; j < n; ++j) {
            if (const auto* t = older_background(d.record.year)) d.cite(*t, 1);
        }
    }

    std::vector<std::vector<Draft>> foundations(static_cast<std::size_t>(shape.topics));
    std::vector<std::vector<Draft>> core(static_cast<std::size_t>(shape.topics));
    std::vector<std::vector<Draft>> recent(static_cast<std::size_t>(shape.topics));

    for (int t = 0; t < shape.topics; ++t) {
        const auto ts = static_cast<std::size_t>(t);
        const auto phrase = topic_phrase(t);
        for (int i = 0; i < shape.foundations; ++i) {
            Draft d;
            d.record.id = make_id("F", t, i);
            d.record.title = "Foundations of " + phrase + " " + std::to_string(i);
            d.record.year = 1996 + (i * 12) / shape.foundations + rng.between(0, 2);
            d.record.venue = pick_venue(rng, 0);
            d.record.authors = {"Author F" + std::to_string(t * 100 + i)};
            for (int j = 0; j < 2 && i > 0; ++j) {
                const auto& target = foundations[ts][rng.below(static_cast<std::uint64_t>(i))];
                if (target.record.year <= d.record.year) d.cite(target.record.id, rng.between(1, 3));
            }
            foundations[ts].push_back(std::move(d));
        }
        for (int i = 0; i < shape.core; ++i) {
            Draft d;
            d.record.id = make_id("C", t, i);
            d.record.title = "Advances in " + phrase + " " + std::to_string(i);
            d.record.year = rng.between(2006, 2015);
            d.record.venue = pick_venue(rng, i < shape.core / 3 ? 0 : 1);
            d.record.authors = {"Author C" + std::to_string(t * 100 + i),
                                "Author C" + std::to_string(rng.below(500))};
            const int nf = rng.between(2, 4);
            for (int j = 0; j < nf; ++j) {
                d.cite(foundations[ts][static_cast<std::size_t>(rng.skewed(shape.foundations))].record.id,
                       rng.between(1, 3));
            }
            const int nc = std::min(i, rng.between(1, 3));
            for (int j = 0; j < nc; ++j) {
                d.cite(core[ts][static_cast<std::size_t>(rng.skewed(i))].record.id, rng.between(1, 2));
            }
            if (shape.background > 0 && rng.chance(0.3)) {
                if (const auto* b = older_background(d.record.year)) d.cite(*b, 1);
            }
            core[ts].push_back(std::move(d));
        }
        for (int i = 0; i < shape.recent; ++i) {
            Draft d;
            d.record.id = make_id("R", t, i);
            d.record.title = "Toward better " + phrase + " " + std::to_string(i);
            // A tail of papers appears after the survey year.
            d.record.year = i >= shape.recent - 4 ? 2020 : rng.between(2015, 2019);
            d.record.venue = pick_venue(rng, 1);
            d.record.authors = {"Author R" + std::to_string(t * 1000 + i)};
            const int nc = rng.between(2, 5);
            for (int j = 0; j < nc; ++j) {
                d.cite(core[ts][static_cast<std::size_t>(rng.skewed(shape.core, 2.5))].record.id,
                       rng.between(1, 4));
            }
            const int nf = rng.between(0, 2);
            for (int j = 0; j < nf; ++j) {
                d.cite(foundations[ts][static_cast<std::size_t>(rng.skewed(shape.foundations))].record.id,
                       rng.between(1, 2));
            }
            if (i > 0 && rng.chance(0.4)) {
                const auto& other = recent[ts][rng.below(static_cast<std::uint64_t>(i))];
                if (other.record.year <= d.record.year) d.cite(other.record.id, 1);
            }
            if (shape.topics > 1 && rng.chance(0.15)) {
                const auto other = static_cast<std::size_t>((t + 1 + static_cast<int>(rng.below(
                                       static_cast<std::uint64_t>(shape.topics - 1)))) %
                                   shape.topics);
                // Later topics are not built yet; the id is resolved at load time.
                d.cite(make_id("C", static_cast<int>(other), rng.skewed(shape.core, 3.0)), 1);
            }
            if (shape.background > 0 && rng.chance(0.3)) {
                if (const auto* b = older_background(d.record.year)) d.cite(*b, 1);
            }
            recent[ts].push_back(std::move(d));
        }
    }

    // Surveys and their benchmark entries.
    std::vector<Draft> surveys;
    for (int t = 0; t < shape.topics; ++t) {
        const auto ts = static_cast<std::size_t>(t);
        Draft s;
        s.record.id = make_id("SV", -1, t);
        s.record.title = "A survey of " + topic_phrase(t);
        s.record.year = 2019;
        s.record.venue = "ACL";
        s.record.authors = {"Author S" + std::to_string(t)};

        SurveyEntry entry;
        entry.survey_id = s.record.id;
        entry.key_phrases = {topic_phrase(t)};
        entry.year = 2019;
        entry.citation_count = 40 + static_cast<long long>(rng.below(400));

        auto reference = [&](const PaperId& id, int occurrences) {
            entry.reference_occurrences[id] = occurrences;
            s.cite(id, occurrences);
        };
        for (int i = 0; i < shape.foundations; ++i) {
            reference(foundations[ts][static_cast<std::size_t>(i)].record.id,
                      i < shape.foundations / 2 ? 3 : 2);
        }
        const int popular = shape.core / 3;
        for (int i = 0; i < popular; ++i) {
            reference(core[ts][static_cast<std::size_t>(i)].record.id, i < popular / 2 ? 2 : 1);
        }
        for (int j = 0; j < shape.core / 6; ++j) {
            const auto i = static_cast<std::size_t>(popular) +
                           rng.below(static_cast<std::uint64_t>(shape.core - popular));
            reference(core[ts][i].record.id, 1);
        }

        // Recent papers from before the survey, in a search-engine-like order.
        std::vector<PaperId> pool;
        for (const auto& d : recent[ts]) {
            if (d.record.year <= 2019) pool.push_back(d.record.id);
        }
        rng.shuffle(pool);
        std::vector<PaperId> seeds(pool.begin(),
                                   pool.begin() + std::min<std::ptrdiff_t>(
                                                      static_cast<std::ptrdiff_t>(pool.size()),
                                                      shape.seeds_per_survey));
        // The survey cites a few of the recent papers the search engine also finds.
        for (std::size_t j = 0; j < seeds.size(); j += 2) reference(seeds[j], 1);

        auto insert_at = [&](std::size_t pos, PaperId id) {
            seeds.insert(seeds.begin() + static_cast<std::ptrdiff_t>(std::min(pos, seeds.size())),
                         std::move(id));
        };
        insert_at(2, s.record.id);
        insert_at(6, "UNKNOWN" + std::to_string(t));
        insert_at(9, recent[ts][static_cast<std::size_t>(shape.recent - 1)].record.id);
        insert_at(14, recent[ts][static_cast<std::size_t>(shape.recent - 2)].record.id);
        insert_at(20, seeds[0]);
        entry.seeds = seeds;
        out.seeds[entry.key_phrases.front()] = seeds;
        out.benchmark.push_back(std::move(entry));
        surveys.push_back(std::move(s));
    }

    auto emit = [&](std::vector<Draft>& drafts) {
        for (auto& d : drafts) out.papers.push_back(std::move(d.record));
    };
    for (int t = 0; t < shape.topics; ++t) {
        const auto ts = static_cast<std::size_t>(t);
        emit(foundations[ts]);
        emit(core[ts]);
        emit(recent[ts]);
    }
    emit(background);
    emit(surveys);
    std::sort(out.papers.begin(), out.papers.end(),
              [](const PaperRecord& a, const PaperRecord& b) { return a.id < b.id; });
    return out;
}

SynthCorpus make_fanout_corpus(const FanoutShape& shape) {
    if (shape.seeds < 2 || shape.first_order < shape.hubs || shape.hubs < 1 ||
        shape.second_order < 1) {
        throw Error(ErrorCode::InvalidArgument, "synth: fanout shape too small");
    }
    Rng rng(shape.rng_seed);
    SynthCorpus out;
    fill_venue_table(out);

    std::vector<Draft> seeds(static_cast<std::size_t>(shape.seeds));
    std::vector<Draft> first(static_cast<std::size_t>(shape.first_order));
    std::vector<Draft> second(static_cast<std::size_t>(shape.second_order));
    auto init = [&](std::vector<Draft>& v, const char* prefix, int lo, int hi) {
        for (std::size_t i = 0; i < v.size(); ++i) {
            v[i].record.id = make_id(prefix, -1, static_cast<int>(i));
            v[i].record.title = std::string(prefix) + " paper " + std::to_string(i);
            v[i].record.year = rng.between(lo, hi);
            v[i].record.venue = pick_venue(rng, 1);
            v[i].record.authors = {"Author " + std::to_string(rng.below(800))};
        }
    };
    init(seeds, "QS", 2018, 2020);
    init(first, "QA", 2010, 2017);
    init(second, "QB", 1995, 2009);

    std::size_t edges = 0;
    auto link = [&](Draft& from, const Draft& to) {
        const auto before = from.record.citations_out.size();
        from.cite(to.record.id, rng.between(1, 3));
        edges += from.record.citations_out.size() - before;
    };

    // Every first-order paper is cited by some seed; hubs are cited by many.
    for (std::size_t i = 0; i < first.size(); ++i) link(seeds[i % seeds.size()], first[i]);
    for (auto& s : seeds) {
        for (int j = 0; j < 3; ++j) link(s, first[rng.below(static_cast<std::uint64_t>(shape.hubs))]);
    }
    // Every second-order paper is cited by some first-order paper.
    for (std::size_t i = 0; i < second.size(); ++i) link(first[rng.below(first.size())], second[i]);

    const auto target = static_cast<std::size_t>(shape.target_edges);
    for (int guard = 0; edges < target && guard < shape.target_edges * 20; ++guard) {
        if (rng.chance(0.85)) {
            link(first[rng.below(first.size())], second[rng.below(second.size())]);
        } else {
            auto& a = first[rng.below(first.size())];
            const auto& b = first[rng.below(first.size())];
            if (b.record.year < a.record.year) link(a, b);
        }
    }

    std::vector<PaperId> ranked;
    for (const auto& s : seeds) ranked.push_back(s.record.id);
    out.seeds[kFanoutQuery] = ranked;

    for (auto* v : {&seeds, &first, &second}) {
        for (auto& d : *v) out.papers.push_back(std::move(d.record));
    }
    std::sort(out.papers.begin(), out.papers.end(),
              [](const PaperRecord& a, const PaperRecord& b) { return a.id < b.id; });
    return out;
}

void write_fixture(const SynthCorpus& corpus, const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw Error(ErrorCode::Io, "cannot create " + dir.string() + ": " + ec.message());

    auto open = [&](const char* name) {
        std::ofstream f(dir / name, std::ios::binary);
        if (!f) throw Error(ErrorCode::Io, "cannot write " + (dir / name).string());
        return f;
    };
    {
        auto f = open("papers.jsonl");
        for (const auto& p : corpus.papers) f << to_jsonl(p) << '\n';
    }
    {
        auto f = open("venues.json");
        f << json(corpus.venues).dump(2) << '\n';
    }
    if (!corpus.benchmark.empty()) {
        auto f = open("bench.jsonl");
        for (const auto& e : corpus.benchmark) f << to_jsonl(e) << '\n';
    }
    {
        auto f = open("seeds.json");
        f << json(corpus.seeds).dump(2) << '\n';
    }
    {
        auto f = open("config.json");
        const json config = {
            {"papers", "papers.jsonl"},
            {"venues", "venues.json"},
            {"pagerank_cache", "pagerank.json"},
            {"seed_provider", {{"type", "offline"}, {"path", "seeds.json"}}},
            {"k_seeds", 30},
            {"k_output", 30},
            {"server", {{"host", "127.0.0.1"}, {"port", 8080}, {"cors_origin", "*"}}},
        };
        f << config.dump(2) << '\n';
    }
}

} // namespace readpath
