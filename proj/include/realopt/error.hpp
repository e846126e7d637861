#pragma once

#include <stdexcept>
#include <string>

namespace realopt {

/// Error categories. The numeric values double as CLI exit codes.
enum class ErrorKind {
    input = 2,   // unreadable or invalid input document / model
    domain = 3,  // math domain violation (e.g. rate <= -1)
    usage = 4,   // request not meaningful for the given model or flags
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void throw_input(const std::string& what) {
    throw Error(ErrorKind::input, what);
}
[[noreturn]] inline void throw_domain(const std::string& what) {
    throw Error(ErrorKind::domain, what);
}
[[noreturn]] inline void throw_usage(const std::string& what) {
    throw Error(ErrorKind::usage, what);
}

}  // namespace realopt
