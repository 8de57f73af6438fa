#pragma once

#include <stdexcept>
#include <string>

namespace skaff {

/// Failure categories surfaced by the library.  The CLI maps them to exit
/// codes; tests match on them.
enum class ErrorKind {
    InvalidInput,         // malformed data, out-of-range index, shape mismatch
    ValidationFailure,    // structural axiom or embedding check failed
    UnsupportedOperation, // operation needs data the object does not carry
    ResourceLimit,        // configured size cap exceeded
    InvalidRewrite,       // rewrite precondition not met
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string message)
        : std::runtime_error(std::move(message)), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& msg) {
    throw Error(kind, msg);
}

inline const char* to_string(ErrorKind k) {
    switch (k) {
    case ErrorKind::InvalidInput: return "invalid-input";
    case ErrorKind::ValidationFailure: return "validation-failure";
    case ErrorKind::UnsupportedOperation: return "unsupported-operation";
    case ErrorKind::ResourceLimit: return "resource-limit";
    case ErrorKind::InvalidRewrite: return "invalid-rewrite";
    }
    return "error";
}

} // namespace skaff
