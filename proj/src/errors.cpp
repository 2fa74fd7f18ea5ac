#include "ioo/errors.hpp"

namespace ioo {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::UnknownVocabulary: return "unknown-vocabulary";
    case ErrorCode::MalformedTerm: return "malformed-term";
    case ErrorCode::UnknownTypeName: return "unknown-type-name";
    case ErrorCode::MalformedIdentifier: return "malformed-identifier";
    case ErrorCode::MalformedTimestamp: return "malformed-timestamp";
    case ErrorCode::InvalidObject: return "invalid-object";
    case ErrorCode::TypeNameMismatch: return "type-name-mismatch";
    case ErrorCode::DanglingEndpoint: return "dangling-endpoint";
    case ErrorCode::IllegalRelationship: return "illegal-relationship";
    case ErrorCode::DuplicateEdge: return "duplicate-edge";
    case ErrorCode::NotFound: return "not-found";
    case ErrorCode::WouldDangle: return "would-dangle";
    case ErrorCode::WrongKind: return "wrong-kind";
    case ErrorCode::SyntaxError: return "syntax-error";
    case ErrorCode::NotABundle: return "not-a-bundle";
    case ErrorCode::UnsupportedFormat: return "unsupported-format";
    case ErrorCode::ConfigError: return "config-error";
    }
    return "unknown";
}

}  // namespace ioo
