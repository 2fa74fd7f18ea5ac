#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ioo {

enum class ErrorCode {
    UnknownVocabulary,
    MalformedTerm,
    UnknownTypeName,
    MalformedIdentifier,
    MalformedTimestamp,
    InvalidObject,
    TypeNameMismatch,
    DanglingEndpoint,
    IllegalRelationship,
    DuplicateEdge,
    NotFound,
    WouldDangle,
    WrongKind,
    SyntaxError,
    NotABundle,
    UnsupportedFormat,
    ConfigError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Base of every exception thrown by the library. The code is stable and is
/// what callers (and the CLI exit-status mapping) should switch on.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace ioo
