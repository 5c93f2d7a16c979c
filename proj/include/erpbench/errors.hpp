#pragma once

#include <stdexcept>
#include <string>

namespace erpbench {

// Exit-code contract shared with the CLI:
//   0 success, 1 usage error, 2 data/validation error, 3 I/O error.

struct UsageError : std::runtime_error {
    explicit UsageError(const std::string& msg) : std::runtime_error(msg) {}
    static constexpr int exit_code = 1;
};

struct DataError : std::runtime_error {
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
    static constexpr int exit_code = 2;
};

struct IoError : std::runtime_error {
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
    static constexpr int exit_code = 3;
};

}  // namespace erpbench
