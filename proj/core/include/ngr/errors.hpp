#pragma once

#include <stdexcept>
#include <string>

namespace ngr {

// Malformed or truncated file content (tensor files, checkpoints, PNGs).
struct FormatError : std::runtime_error {
    explicit FormatError(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad key/value configuration input; message carries the offending line number.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Non-finite values detected mid-solve.
struct NumericError : std::runtime_error {
    explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace ngr
