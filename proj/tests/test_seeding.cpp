// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 readpath contributors

#include "fixtures.hpp"
#include "readpath/error.hpp"
#include "readpath/seeding.hpp"

#include <doctest.h>
#include <httplib.h>

#include <algorithm>
#include <fstream>
#include <set>
#include <thread>

using namespace readpath;

namespace {

QuerySpec query(int k_seeds = 30) {
    QuerySpec q;
    q.key_phrases = {"graph neural network"};
    q.k_seeds = k_seeds;
    return q;
}

bool subset(const std::vector<PaperId>& a, const std::vector<PaperId>& b) {
    const std::set<PaperId> sa(a.begin(), a.end());
    const std::set<PaperId> sb(b.begin(), b.end());
    return std::includes(sb.begin(), sb.end(), sa.begin(), sa.end());
}

// Seeds s1..s3; s1 and s2 cite x; all three cite y; s2 and s3 cite s1.
CitationGraph cooccurrence_graph() {
    return fixture::graph({{"s1", 2015, {"x", "y"}},
                           {"s2", 2016, {"x", "y", "s1"}},
                           {"s3", 2017, {"y", "s1", "z"}},
                           {"x", 2010},
                           {"y", 2009},
                           {"z", 2008}});
}

class LocalServer {
public:
    explicit LocalServer(std::function<void(const httplib::Request&, httplib::Response&)> handler) {
        server_.Get("/search", std::move(handler));
        port_ = server_.bind_to_any_port("127.0.0.1");
        thread_ = std::thread([this] { server_.listen_after_bind(); });
        server_.wait_until_ready();
    }
    ~LocalServer() {
        server_.stop();
        thread_.join();
    }
    int port() const { return port_; }

private:
    httplib::Server server_;
    int port_ = -1;
    std::thread thread_;
};

} // namespace

TEST_CASE("query validation and key") {
    QuerySpec q = query();
    q.key_phrases.push_back("message passing");
    CHECK(q.key() == "graph neural network; message passing");
    CHECK_NOTHROW(q.validate());
    q.k_seeds = 0;
    CHECK_THROWS_AS(q.validate(), Error);
    q = query();
    q.key_phrases.clear();
    CHECK_THROWS_AS(q.validate(), Error);
    q = query();
    q.key_phrases = {"  "};
    CHECK_THROWS_AS(q.validate(), Error);
}

TEST_CASE("seed resolution drops and counts unusable candidates") {
    const auto g = fixture::graph({{"a", 2010}, {"b", 2012}, {"c", 2020}, {"d", 2011}, {"e", 2009}});
    QuerySpec q = query(3);
    q.cutoff_year = 2015;
    q.excluded = {"d"};
    const std::vector<PaperId> candidates{"zz", "a", "c", "a", "d", "b", "e"};
    const auto s = resolve_seeds(candidates, q, g);
    CHECK(s.ids == std::vector<PaperId>{"a", "b", "e"});
    CHECK(s.dropped_unresolvable == 1);
    CHECK(s.dropped_cutoff == 1);
    CHECK(s.dropped_duplicates == 1);
    CHECK(s.dropped_excluded == 1);
    CHECK(s.dropped() == 4);

    const auto two = resolve_seeds(candidates, query(2), g);
    CHECK(two.ids == std::vector<PaperId>{"a", "c"});
}

TEST_CASE("offline provider and NoSeeds") {
    const auto g = fixture::graph({{"a", 2010}, {"b", 2012}});
    const OfflineSeedProvider provider({{"graph neural network", {"b", "zz", "a"}}});
    const auto s = provide_seeds(provider, query(), g);
    CHECK(s.ids == std::vector<PaperId>{"b", "a"});

    QuerySpec other = query();
    other.key_phrases = {"unheard of"};
    CHECK(provider.search(other, no_deadline()).empty());
    try {
        provide_seeds(provider, other, g);
        FAIL("expected NoSeeds");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NoSeeds);
    }
}

TEST_CASE("offline provider file format") {
    fixture::TempDir dir;
    {
        std::ofstream f(dir / "seeds.json");
        f << R"({"graph neural network": ["a", "b"], "x": []})";
    }
    const auto p = OfflineSeedProvider::from_file(dir / "seeds.json");
    CHECK(p.table().at("graph neural network") == std::vector<PaperId>{"a", "b"});
    {
        std::ofstream f(dir / "bad.json");
        f << R"({"q": "a"})";
    }
    CHECK_THROWS_AS(OfflineSeedProvider::from_file(dir / "bad.json"), Error);
    CHECK_THROWS_AS(OfflineSeedProvider::from_file(dir / "missing.json"), Error);
}

TEST_CASE("http provider reads ids through JSON pointers") {
    std::string seen_query;
    std::string seen_limit;
    std::string seen_header;
    LocalServer server([&](const httplib::Request& req, httplib::Response& res) {
        seen_query = req.get_param_value("q");
        seen_limit = req.get_param_value("limit");
        seen_header = req.get_header_value("X-Api-Key");
        res.set_content(R"({"data":{"hits":[{"paper":{"id":"b"}},{"paper":{}},{"paper":{"id":"a"}}]}})",
                        "application/json");
    });
    HttpSeedConfig cfg;
    cfg.url_template = "http://127.0.0.1:" + std::to_string(server.port()) + "/search?q={query}&limit={k}";
    cfg.results_pointer = "/data/hits";
    cfg.id_pointer = "/paper/id";
    cfg.headers = {{"X-Api-Key", "secret"}};
    const HttpSeedProvider provider(cfg);

    QuerySpec q = query(7);
    q.key_phrases = {"graph neural network", "a&b"};
    CHECK(provider.request_url(q).find("q=graph%20neural%20network%3B%20a%26b&limit=7") !=
          std::string::npos);
    const auto ids = provider.search(q, no_deadline());
    CHECK(ids == std::vector<PaperId>{"b", "a"});
    CHECK(seen_query == "graph neural network; a&b");
    CHECK(seen_limit == "7");
    CHECK(seen_header == "secret");
}

TEST_CASE("http provider errors") {
    LocalServer server([](const httplib::Request& req, httplib::Response& res) {
        if (req.get_param_value("q") == "down") {
            res.status = 503;
            return;
        }
        if (req.get_param_value("q") == "garbled") {
            res.set_content("not json", "text/plain");
            return;
        }
        res.set_content(R"({"other":[]})", "application/json");
    });
    HttpSeedConfig cfg;
    cfg.url_template = "http://127.0.0.1:" + std::to_string(server.port()) + "/search?q={query}";
    cfg.results_pointer = "/results";
    const HttpSeedProvider provider(cfg);
    auto ask = [&](const std::string& phrase) {
        QuerySpec q = query();
        q.key_phrases = {phrase};
        return provider.search(q, no_deadline());
    };
    CHECK_THROWS_AS(ask("down"), Error);
    CHECK_THROWS_AS(ask("garbled"), Error);
    CHECK_THROWS_AS(ask("ok"), Error);

    QuerySpec q = query();
    CHECK_THROWS_AS(provider.search(q, std::chrono::steady_clock::now() - std::chrono::seconds(1)),
                    Error);

    HttpSeedConfig bad = cfg;
    bad.url_template = "https://example.org/{query}";
    CHECK_THROWS_AS(HttpSeedProvider{bad}, Error);
    bad = cfg;
    bad.id_pointer = "no-slash";
    CHECK_THROWS_AS(HttpSeedProvider{bad}, Error);
}

TEST_CASE("co-occurrence counts distinct citing seeds") {
    const auto g = cooccurrence_graph();
    const std::vector<PaperId> seeds{"s1", "s2", "s3"};
    const auto plain = cooccurrence_counts(g, seeds);
    CHECK(plain.at("x") == 2);
    CHECK(plain.at("y") == 3);
    CHECK(plain.at("z") == 1);
    CHECK_FALSE(plain.contains("s1"));
    const auto with_seeds = cooccurrence_counts(g, seeds, true);
    CHECK(with_seeds.at("s1") == 2);
    CHECK_THROWS_AS(cooccurrence_counts(g, std::vector<PaperId>{"nope"}), Error);
}

TEST_CASE("terminal modes") {
    const auto g = cooccurrence_graph();
    const std::vector<PaperId> seeds{"s1", "s2", "s3"};
    const auto r = reallocate_terminals(g, seeds, 2, TerminalMode::Reallocated);
    CHECK(r.ids == std::vector<PaperId>{"s1", "x", "y"});
    CHECK_FALSE(r.fallback);
    const auto i = reallocate_terminals(g, seeds, 2, TerminalMode::Initial);
    CHECK(i.ids == std::vector<PaperId>{"s1", "s2", "s3"});
    const auto u = reallocate_terminals(g, seeds, 2, TerminalMode::Union);
    CHECK(u.ids == std::vector<PaperId>{"s1", "s2", "s3", "x", "y"});
    const auto n = reallocate_terminals(g, seeds, 2, TerminalMode::Intersection);
    CHECK(n.ids == std::vector<PaperId>{"s1"});

    const auto high = reallocate_terminals(g, seeds, 4, TerminalMode::Reallocated);
    CHECK(high.fallback);
    CHECK(high.reallocated.empty());
    CHECK(high.ids == std::vector<PaperId>{"s1", "s2", "s3"});
    CHECK_THROWS_AS(reallocate_terminals(g, seeds, 1, TerminalMode::Reallocated), Error);

    CHECK(parse_terminal_mode("union") == TerminalMode::Union);
    CHECK(std::string(to_string(TerminalMode::Intersection)) == "intersection");
    CHECK_THROWS_AS(parse_terminal_mode("both"), Error);
}

TEST_CASE("terminal set properties on random graphs") {
    std::mt19937_64 rng(41);
    for (int round = 0; round < 40; ++round) {
        const auto g = fixture::random_citations(rng, 30, 0.15);
        std::vector<PaperId> seeds;
        for (int j = 0; j < 6; ++j) seeds.push_back(g.id(static_cast<CitationGraph::Index>(rng() % g.size())));
        std::sort(seeds.begin(), seeds.end());
        seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());

        const auto r2 = reallocate_terminals(g, seeds, 2, TerminalMode::Reallocated);
        const auto r3 = reallocate_terminals(g, seeds, 3, TerminalMode::Reallocated);
        CHECK(subset(r3.reallocated, r2.reallocated));

        const auto u = reallocate_terminals(g, seeds, 2, TerminalMode::Union);
        const auto n = reallocate_terminals(g, seeds, 2, TerminalMode::Intersection);
        CHECK(subset(r2.reallocated, u.ids));
        CHECK(subset(seeds, u.ids));
        if (!n.fallback) {
            CHECK(subset(n.ids, seeds));
            CHECK(subset(n.ids, r2.reallocated));
        } else {
            CHECK(n.ids == seeds);
        }
    }
}
