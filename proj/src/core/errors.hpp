#pragma once

#include <stdexcept>
#include <string>

namespace iatpcs {

// Error categories; they map 1:1 onto the C API status codes and the CLI
// exit codes.
enum class ErrorKind {
    validation,   // structurally invalid input (plan, config, dataset shape)
    domain,       // scalar argument outside the mathematical domain
    nonexistent,  // requested estimate does not exist (e.g. no cause-j failures)
    parse,        // malformed file/text input
    io,           // filesystem failure
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void throw_validation(const std::string& msg) { throw Error(ErrorKind::validation, msg); }
[[noreturn]] inline void throw_domain(const std::string& msg) { throw Error(ErrorKind::domain, msg); }
[[noreturn]] inline void throw_nonexistent(const std::string& msg) { throw Error(ErrorKind::nonexistent, msg); }
[[noreturn]] inline void throw_parse(const std::string& msg) { throw Error(ErrorKind::parse, msg); }

}  // namespace iatpcs
