#pragma once

#include "ioo/objects.hpp"
#include "ioo/vocab.hpp"

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ioo {

enum class Severity { Error, Warning };

std::string_view to_string(Severity severity) noexcept;

/// Finding codes. Stable strings: they appear in CLI machine output.
namespace finding {
inline constexpr std::string_view kMissingMandatoryField = "missing-mandatory-field";
inline constexpr std::string_view kRangeViolation = "range-violation";
inline constexpr std::string_view kIncompleteCoordinates = "incomplete-coordinates";
inline constexpr std::string_view kTimestampOrder = "timestamp-order";
inline constexpr std::string_view kVocabularyRejected = "vocabulary-rejected";
inline constexpr std::string_view kVocabularyExtension = "vocabulary-extension";
inline constexpr std::string_view kMalformedTerm = "malformed-term";
inline constexpr std::string_view kMalformedReference = "malformed-reference";
inline constexpr std::string_view kMalformedUrl = "malformed-url";
inline constexpr std::string_view kEmptyListEntry = "empty-list-entry";
inline constexpr std::string_view kIllegalRelationship = "illegal-relationship";
inline constexpr std::string_view kGenericRelationship = "generic-relationship";
inline constexpr std::string_view kSelfReference = "self-reference";
inline constexpr std::string_view kEndpointKindMismatch = "endpoint-kind-mismatch";
inline constexpr std::string_view kMalformedIdentifier = "malformed-identifier";
}  // namespace finding

struct Finding {
    Severity severity = Severity::Error;
    std::string code;
    std::string message;
    std::optional<std::string> field;

    friend bool operator==(const Finding&, const Finding&) = default;
};

enum class Verdict { Valid, ValidWithWarnings, Invalid };

std::string_view to_string(Verdict verdict) noexcept;

struct ValidationReport {
    std::optional<Identifier> subject;
    std::vector<Finding> findings;

    /// Derived from findings: Invalid iff any error, Valid iff none at all.
    Verdict verdict() const noexcept;
    bool has_errors() const noexcept;
    bool has_warnings() const noexcept;

    friend bool operator==(const ValidationReport&, const ValidationReport&) = default;
};

/// Checks every single-object invariant; never throws for content problems.
ValidationReport validate_object(const IooObject& obj,
                                 std::optional<Identifier> subject = std::nullopt,
                                 const vocab::Registry& registry = vocab::Registry::builtin());

/// Checks a relationship against the legality matrix for the given endpoint
/// kinds. related-to between distinct objects is accepted with a warning.
ValidationReport validate_relationship(const Relationship& rel, ObjectKind source_kind,
                                       ObjectKind target_kind);

/// Whether (source, kind, target) is a strict edge of the ontology.
/// related-to is never part of the matrix.
bool is_legal_triple(ObjectKind source, RelationshipKind kind, ObjectKind target) noexcept;

struct LegalTriple {
    ObjectKind source;
    RelationshipKind kind;
    ObjectKind target;
};

/// The matrix itself, in declaration order.
std::span<const LegalTriple> legality_matrix() noexcept;

/// True for an absolute URL: a scheme, a colon, then non-blank content; an
/// authority ("//host") when present must be non-empty.
bool is_absolute_url(std::string_view text) noexcept;

/// DISARM technique id: 'T', digits, optional '.' plus digits.
bool is_disarm_technique_id(std::string_view text) noexcept;

}  // namespace ioo
