// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 readpath contributors

#pragma once

#include "readpath/engine.hpp"

#include <memory>
#include <string>

namespace httplib {
class Server;
}

namespace readpath {

/// HTTP front end over a shared Engine.
///
///   POST /api/query       {phrases, k_seeds?, k_output?, cutoff_year?} -> QueryResult
///   GET  /api/paper/{id}  -> PaperRecord
///   GET  /api/health      -> {status, corpus_size}
///
/// Errors are {"error": {"code", "message"[, "id"]}} with 400 / 404 / 422 / 500.
class ApiServer {
public:
    explicit ApiServer(std::shared_ptr<const Engine> engine);
    ~ApiServer();

    ApiServer(const ApiServer&) = delete;
    ApiServer& operator=(const ApiServer&) = delete;

    /// Blocks until stop().
    bool listen(const std::string& host, int port);
    /// Binds an ephemeral port and returns it (or -1).
    int bind_to_any_port(const std::string& host);
    /// Serves on the port bound by bind_to_any_port; blocks until stop().
    bool listen_after_bind();
    void stop();
    void wait_until_ready() const;

private:
    std::shared_ptr<const Engine> engine_;
    std::unique_ptr<httplib::Server> server_;
};

} // namespace readpath
