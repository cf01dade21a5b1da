// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 readpath contributors

#include "fixtures.hpp"

#include <doctest.h>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

namespace {

struct Run {
    int status = -1;
    std::string output;
};

// Runs the CLI with stderr folded into stdout.
Run cli(const std::string& args) {
    const std::string cmd = std::string(READPATH_CLI) + " " + args + " 2>&1";
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.output.append(buf, n);
    const int raw = pclose(pipe);
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return r;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::string q(const std::filesystem::path& p) { return "'" + p.string() + "'"; }

} // namespace

TEST_CASE("synth, ingest, query and eval end to end") {
    fixture::TempDir dir;
    const auto fx = dir / "fx";
    auto r = cli("synth --out-dir " + q(fx));
    REQUIRE_MESSAGE(r.status == 0, r.output);
    for (const char* f : {"papers.jsonl", "venues.json", "bench.jsonl", "seeds.json", "config.json"}) {
        CHECK_MESSAGE(std::filesystem::exists(fx / f), f);
    }

    r = cli("ingest --config " + q(fx / "config.json"));
    REQUIRE_MESSAGE(r.status == 0, r.output);
    CHECK(r.output.find("papers: 1968") != std::string::npos);
    CHECK(std::filesystem::exists(fx / "pagerank.json"));

    r = cli("query --config " + q(fx / "config.json") +
            " -p 'pretrained language model' --k 12 --cutoff-year 2019 --no-timing -o " + q(dir / "q.json"));
    REQUIRE_MESSAGE(r.status == 0, r.output);
    const auto j = nlohmann::json::parse(slurp(dir / "q.json"));
    CHECK(j["top_k"].size() == 12);
    CHECK_FALSE(j["timing"].contains("seconds"));
    for (const auto& n : j["nodes"]) CHECK(n["year"].get<int>() <= 2019);

    const std::string eval = "eval --config " + q(fx / "config.json") + " --benchmark " +
                             q(fx / "bench.jsonl") + " --modes NEWST,SEEDS_ONLY --K 20,30 --levels 1,2";
    r = cli(eval + " --out-dir " + q(dir / "a"));
    REQUIRE_MESSAGE(r.status == 0, r.output);
    CHECK(r.output.find("NEWST") != std::string::npos);
    r = cli(eval + " -j 4 --out-dir " + q(dir / "b"));
    REQUIRE_MESSAGE(r.status == 0, r.output);
    for (const char* f : {"report.json", "report.csv"}) {
        const auto a = slurp(dir / "a" / f);
        CHECK_FALSE(a.empty());
        CHECK_MESSAGE(a == slurp(dir / "b" / f), f);
    }
    CHECK(std::filesystem::exists(dir / "a" / "runtime.json"));
}

TEST_CASE("bad input fails loudly") {
    fixture::TempDir dir;
    {
        std::ofstream papers(dir / "papers.jsonl");
        papers << R"({"id":"a","title":"A","year":2000})" << '\n' << R"({"id":"b","year":"soon"})" << '\n';
        std::ofstream venues(dir / "venues.json");
        venues << "{}";
    }
    auto r = cli("ingest --papers " + q(dir / "papers.jsonl") + " --venues " + q(dir / "venues.json"));
    CHECK(r.status != 0);
    CHECK_MESSAGE(r.output.find("line 2") != std::string::npos, r.output);

    r = cli("frobnicate");
    CHECK(r.status != 0);
    r = cli("query --config " + q(dir / "missing.json") + " -p x");
    CHECK(r.status != 0);
    CHECK(r.output.find("missing.json") != std::string::npos);
    r = cli("eval --papers " + q(dir / "papers.jsonl") + " --venues " + q(dir / "venues.json") +
            " --benchmark b.jsonl --modes NOPE");
    CHECK(r.status != 0);
}
