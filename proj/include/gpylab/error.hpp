#pragma once

#include <stdexcept>
#include <string>

namespace gpylab {

enum class ErrorKind {
    invalid_argument,
    out_of_range,
    budget_exceeded,
    cache_corrupt,
    io,
};

// Single exception type for the library. The CLI maps kind() onto exit codes.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
    throw Error(kind, what);
}

}  // namespace gpylab
