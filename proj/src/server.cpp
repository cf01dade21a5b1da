// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 readpath contributors

#include "readpath/server.hpp"

#include "readpath/error.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <set>

#include <httplib.h>
#include <nlohmann/json.hpp>

namespace readpath {

using json = nlohmann::json;

namespace {

void send_json(httplib::Response& res, int status, const json& body) {
    res.status = status;
    res.set_content(body.dump(), "application/json; charset=utf-8");
}

void send_error(httplib::Response& res, int status, const std::string& code,
                const std::string& message) {
    send_json(res, status, {{"error", {{"code", code}, {"message", message}}}});
}

std::string next_fault_id() {
    static std::atomic<std::uint64_t> counter{0};
    const auto now = static_cast<std::uint64_t>(
        std::chrono::system_clock::now().time_since_epoch().count());
    char buf[40];
    std::snprintf(buf, sizeof buf, "%llx-%llx", static_cast<unsigned long long>(now & 0xffffffffULL),
                  static_cast<unsigned long long>(++counter));
    return buf;
}

void send_fault(httplib::Response& res, const std::string& what) {
    const auto id = next_fault_id();
    std::fprintf(stderr, "readpath: internal error %s: %s\n", id.c_str(), what.c_str());
    send_json(res, 500,
              {{"error", {{"code", "internal"}, {"message", "internal error"}, {"id", id}}}});
}

void send_library_error(httplib::Response& res, const Error& e) {
    switch (e.code()) {
        case ErrorCode::InvalidArgument:
        case ErrorCode::Parse:
            send_error(res, 400, "bad_request", e.what());
            return;
        case ErrorCode::NotFound:
            send_error(res, 404, "not_found", e.what());
            return;
        case ErrorCode::NoSeeds:
            send_error(res, 422, "no_seeds", e.what());
            return;
        default:
            send_fault(res, e.what());
    }
}

QuerySpec parse_query_body(const std::string& body, const EngineConfig& config) {
    json j;
    try {
        j = json::parse(body);
    } catch (const json::parse_error&) {
        throw Error(ErrorCode::Parse, "request body is not valid JSON");
    }
    if (!j.is_object()) throw Error(ErrorCode::Parse, "request body must be a JSON object");
    static const std::set<std::string> kKeys = {"phrases", "k_seeds", "k_output", "cutoff_year"};
    for (const auto& [key, _] : j.items()) {
        if (!kKeys.contains(key)) throw Error(ErrorCode::Parse, "unknown field \"" + key + "\"");
    }

    QuerySpec spec;
    spec.k_seeds = config.k_seeds;
    spec.k_output = config.k_output;
    if (!j.contains("phrases")) throw Error(ErrorCode::InvalidArgument, "\"phrases\" is required");
    const auto& phrases = j["phrases"];
    if (phrases.is_string()) {
        spec.key_phrases.push_back(phrases.get<std::string>());
    } else if (phrases.is_array()) {
        for (const auto& p : phrases) {
            if (!p.is_string()) {
                throw Error(ErrorCode::InvalidArgument, "\"phrases\" must hold strings");
            }
            spec.key_phrases.push_back(p.get<std::string>());
        }
    } else {
        throw Error(ErrorCode::InvalidArgument, "\"phrases\" must be a string or array");
    }
    auto read_int = [&](const char* key, int& out) {
        if (!j.contains(key) || j[key].is_null()) return false;
        if (!j[key].is_number_integer()) {
            throw Error(ErrorCode::InvalidArgument, std::string("\"") + key + "\" must be an integer");
        }
        out = j[key].get<int>();
        return true;
    };
    read_int("k_seeds", spec.k_seeds);
    read_int("k_output", spec.k_output);
    int cutoff = 0;
    if (read_int("cutoff_year", cutoff)) spec.cutoff_year = cutoff;
    spec.validate();
    return spec;
}

} // namespace

ApiServer::ApiServer(std::shared_ptr<const Engine> engine)
    : engine_(std::move(engine)), server_(std::make_unique<httplib::Server>()) {
    auto& srv = *server_;
    const auto origin = engine_->config().cors_origin;
    srv.set_default_headers({{"Access-Control-Allow-Origin", origin},
                             {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
                             {"Access-Control-Allow-Headers", "Content-Type"}});

    srv.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) {
        res.status = 204;
    });

    srv.Get("/api/health", [this](const httplib::Request&, httplib::Response& res) {
        send_json(res, 200, {{"status", "ok"}, {"corpus_size", engine_->corpus().graph.size()}});
    });

    srv.Get(R"(/api/paper/(.+))", [this](const httplib::Request& req, httplib::Response& res) {
        const std::string id = req.matches[1];
        const auto* rec = engine_->corpus().graph.find(id);
        if (!rec) {
            send_error(res, 404, "not_found", "unknown paper id \"" + id + "\"");
            return;
        }
        send_json(res, 200, to_json(*rec));
    });

    srv.Post("/api/query", [this](const httplib::Request& req, httplib::Response& res) {
        try {
            const auto spec = parse_query_body(req.body, engine_->config());
            const auto deadline = std::chrono::steady_clock::now() +
                                  std::chrono::milliseconds(engine_->config().request_timeout_ms);
            send_json(res, 200, to_json(engine_->query(spec, deadline)));
        } catch (const Error& e) {
            send_library_error(res, e);
        } catch (const std::exception& e) {
            send_fault(res, e.what());
        }
    });

    srv.set_exception_handler(
        [](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
            try {
                std::rethrow_exception(ep);
            } catch (const std::exception& e) {
                send_fault(res, e.what());
            } catch (...) {
                send_fault(res, "unknown exception");
            }
        });
}

ApiServer::~ApiServer() { stop(); }

bool ApiServer::listen(const std::string& host, int port) { return server_->listen(host, port); }

int ApiServer::bind_to_any_port(const std::string& host) {
    return server_->bind_to_any_port(host);
}

bool ApiServer::listen_after_bind() { return server_->listen_after_bind(); }

void ApiServer::stop() {
    if (server_ && server_->is_running()) server_->stop();
}

void ApiServer::wait_until_ready() const { server_->wait_until_ready(); }

} // namespace readpath
