#ifndef GOPPA_ERRORS_HPP
#define GOPPA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace goppa {

// Bad user-supplied parameters (CLI exit code 2).
struct UsageError : std::invalid_argument {
    explicit UsageError(const std::string& what) : std::invalid_argument(what) {}
};

// Work refused because it exceeds a configured limit (CLI exit code 3).
struct CapacityError : std::runtime_error {
    explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

// An internal cross-check failed; indicates a bug, never bad input.
struct ConsistencyError : std::logic_error {
    explicit ConsistencyError(const std::string& what) : std::logic_error(what) {}
};

} // namespace goppa

#endif
