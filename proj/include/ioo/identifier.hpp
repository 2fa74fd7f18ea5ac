#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace ioo {

/// The twelve ontology object kinds, grouped by domain.
enum class ObjectKind {
    // threat domain
    Incident,
    AttackPattern,
    Campaign,
    ThreatActor,
    // channel domain
    UserAccount,
    Channel,
    Message,
    // social domain
    CyberPersona,
    Community,
    Narrative,
    Event,
    Location,
};

inline constexpr std::array<ObjectKind, 12> kAllObjectKinds = {
    ObjectKind::Incident,     ObjectKind::AttackPattern, ObjectKind::Campaign,
    ObjectKind::ThreatActor,  ObjectKind::UserAccount,   ObjectKind::Channel,
    ObjectKind::Message,      ObjectKind::CyberPersona,  ObjectKind::Community,
    ObjectKind::Narrative,    ObjectKind::Event,         ObjectKind::Location,
};

inline constexpr std::string_view kRelationshipTypeName = "relationship";
inline constexpr std::string_view kBundleTypeName = "bundle";

/// Wire type name: STIX names for imported kinds, bare names for the
/// Filigran extension kinds, "x-ioo-" names for kinds new to this ontology.
std::string_view canonical_type_name(ObjectKind kind) noexcept;

/// Short human name ("cyber-persona"), used in reports and stats.
std::string_view kind_name(ObjectKind kind) noexcept;

std::optional<ObjectKind> kind_from_type_name(std::string_view type_name) noexcept;

/// The 12 object type names plus "relationship".
bool is_canonical_type_name(std::string_view type_name) noexcept;

class Uuid {
public:
    constexpr Uuid() = default;
    constexpr explicit Uuid(const std::array<std::uint8_t, 16>& bytes) : bytes_(bytes) {}

    /// 8-4-4-4-12 hex, either case. Returns nullopt on any other shape.
    static std::optional<Uuid> parse(std::string_view text) noexcept;

    /// Fresh version-4 UUID.
    static Uuid random();

    /// Deterministic version-8 UUID derived from arbitrary bytes (FNV-1a based).
    static Uuid from_content(std::string_view content) noexcept;

    std::span<const std::uint8_t, 16> bytes() const noexcept { return bytes_; }

    /// Lowercase 8-4-4-4-12 form.
    std::string to_string() const;

    friend constexpr auto operator<=>(const Uuid&, const Uuid&) = default;

private:
    std::array<std::uint8_t, 16> bytes_{};
};

/// "<type_name>--<uuid>". Ordering matches the lexicographic order of the
/// text form: no canonical type name is a prefix of another, and lowercase
/// hex sorts like the underlying bytes.
class Identifier {
public:
    Identifier() = default;

    /// Throws UnknownTypeName unless type_name is canonical (or "bundle").
    Identifier(std::string_view type_name, Uuid uuid);

    /// Throws MalformedIdentifier on shape errors, UnknownTypeName on an
    /// unrecognized prefix.
    static Identifier parse(std::string_view text);

    const std::string& type_name() const noexcept { return type_name_; }
    const Uuid& uuid() const noexcept { return uuid_; }
    std::optional<ObjectKind> kind() const noexcept { return kind_from_type_name(type_name_); }

    std::string to_string() const;

    friend auto operator<=>(const Identifier&, const Identifier&) = default;
    friend bool operator==(const Identifier&, const Identifier&) = default;

private:
    std::string type_name_;
    Uuid uuid_;
};

/// Builds an identifier for a canonical type name, generating a random UUID
/// when none is given. Throws UnknownTypeName.
Identifier make_identifier(std::string_view type_name, std::optional<Uuid> uuid = std::nullopt);

}  // namespace ioo
