#pragma once

#include <stdexcept>
#include <string>

namespace cb {

/// Violated precondition or contract (bad arguments, mismatched shapes, unknown
/// names). The CLI maps this to exit code 2.
class ContractError : public std::runtime_error {
public:
    explicit ContractError(const std::string& what) : std::runtime_error(what) {}
};

/// Unreadable, unwritable or malformed file. The CLI maps this to exit code 3.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

/// Throws ContractError with `message` unless `condition` holds.
inline void require(bool condition, const std::string& message) {
    if (!condition) {
        throw ContractError(message);
    }
}

}  // namespace cb
