// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 readpath contributors

#pragma once

#include <stdexcept>
#include <string>

namespace readpath {

enum class ErrorCode {
    InvalidArgument,
    Parse,
    Io,
    NotFound,
    NoSeeds,
    Internal,
};

const char* to_string(ErrorCode code);

/// Every failure raised by the library. The code drives CLI exit messages and
/// HTTP status mapping.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace readpath
