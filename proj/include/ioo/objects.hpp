#pragma once

#include "ioo/identifier.hpp"
#include "ioo/timestamp.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace ioo {

/// Flattened schema.org MediaObject / Image.
struct MediaReference {
    std::string url;
    std::optional<std::string> mime_type;
    std::optional<std::string> caption;

    friend bool operator==(const MediaReference&, const MediaReference&) = default;
};

// Threat domain ------------------------------------------------------------

struct Incident {
    std::string name;
    std::optional<std::string> description;
    std::optional<Timestamp> first_seen;
    std::optional<Timestamp> last_seen;
    std::optional<std::string> objective;

    friend bool operator==(const Incident&, const Incident&) = default;
};

struct AttackPattern {
    std::string name;
    std::optional<std::string> description;
    std::vector<std::string> aliases;
    std::optional<std::string> external_reference;  // DISARM technique id, e.g. "T0049.003"
    std::optional<std::string> kill_chain_phase;    // DISARM tactic

    friend bool operator==(const AttackPattern&, const AttackPattern&) = default;
};

struct Campaign {
    std::string name;
    std::optional<std::string> description;
    std::vector<std::string> aliases;
    std::optional<Timestamp> first_seen;
    std::optional<Timestamp> last_seen;
    std::optional<std::string> objective;

    friend bool operator==(const Campaign&, const Campaign&) = default;
};

struct ThreatActor {
    std::string name;
    std::optional<std::string> description;
    std::optional<std::string> threat_actor_type;
    std::vector<std::string> aliases;
    std::optional<Timestamp> first_seen;
    std::optional<Timestamp> last_seen;
    std::vector<std::string> roles;
    std::optional<std::string> goals;
    std::optional<std::string> sophistication;
    std::optional<std::string> resource_level;
    std::optional<std::string> primary_motivations;
    std::optional<std::string> secondary_motivations;
    std::optional<std::string> personal_motivations;

    friend bool operator==(const ThreatActor&, const ThreatActor&) = default;
};

// Channel domain -----------------------------------------------------------

struct UserAccount {
    std::string display_name;
    std::optional<std::string> name;
    std::optional<std::int64_t> age;
    std::optional<MediaReference> icon;
    std::optional<std::string> description;
    std::vector<std::string> external_links;
    std::optional<std::string> region;
    std::optional<Timestamp> account_created;
    std::optional<std::string> platform;
    std::optional<std::string> privacy_settings;
    std::optional<std::int64_t> followers;
    std::optional<std::int64_t> following;
    std::optional<std::int64_t> rating;
    std::optional<bool> privileged;
    std::optional<bool> disabled;
    std::optional<std::int64_t> automation;  // 0..100

    friend bool operator==(const UserAccount&, const UserAccount&) = default;
};

struct Channel {
    std::string name;
    std::optional<std::string> description;
    std::optional<std::string> platform;
    std::optional<std::string> affiliation;
    std::optional<std::string> reach;
    std::optional<std::string> purpose;
    std::optional<bool> sponsored;
    std::optional<std::string> channel_type;

    friend bool operator==(const Channel&, const Channel&) = default;
};

struct Message {
    std::string name;
    std::optional<std::string> description;
    std::vector<MediaReference> media_content;
    std::optional<std::string> url;
    std::optional<std::string> format;

    friend bool operator==(const Message&, const Message&) = default;
};

// Social domain ------------------------------------------------------------

struct CyberPersona {
    std::string name;
    std::vector<std::string> alias;
    std::optional<std::int64_t> age;
    std::optional<std::string> description;
    std::optional<std::string> gender;
    std::vector<std::string> language;
    std::optional<std::string> religion;
    std::optional<std::string> occupation;
    std::vector<std::string> interest;
    std::optional<std::string> public_opinion;
    std::optional<std::string> affiliation;

    friend bool operator==(const CyberPersona&, const CyberPersona&) = default;
};

struct Community {
    std::string name;
    std::optional<std::string> description;
    std::optional<std::string> community_type;
    std::vector<std::string> resources;
    std::optional<std::string> topic;
    std::optional<std::string> affiliation;

    friend bool operator==(const Community&, const Community&) = default;
};

struct Narrative {
    std::string name;
    std::optional<std::string> description;
    std::optional<std::string> goal;
    std::optional<std::string> topic;
    std::optional<std::string> targeted_public;
    std::optional<std::string> emotion;
    std::optional<std::string> affiliation;

    friend bool operator==(const Narrative&, const Narrative&) = default;
};

struct Event {
    std::string name;
    std::optional<std::string> description;
    std::optional<Timestamp> date;

    friend bool operator==(const Event&, const Event&) = default;
};

struct Location {
    std::string name;
    std::optional<std::string> description;
    std::optional<double> latitude;
    std::optional<double> longitude;
    std::optional<std::string> precision;
    std::optional<std::string> region;
    std::optional<std::string> country;
    std::optional<std::string> city;
    std::optional<std::string> street_address;
    std::optional<std::string> postal_code;

    friend bool operator==(const Location&, const Location&) = default;
};

/// Alternatives are in ObjectKind order, so index() == ObjectKind value.
using IooObject = std::variant<Incident, AttackPattern, Campaign, ThreatActor, UserAccount,
                               Channel, Message, CyberPersona, Community, Narrative, Event,
                               Location>;

inline ObjectKind kind_of(const IooObject& obj) noexcept {
    return static_cast<ObjectKind>(obj.index());
}

/// Value of the mandatory name-like field (display_name for accounts).
const std::string& display_label(const IooObject& obj) noexcept;

// Relationships ------------------------------------------------------------

enum class RelationshipKind {
    Uses,
    AttributedTo,
    PartOf,
    Targets,
    Publishes,
    Amplifies,
    BelongsTo,
    MemberOf,
    Supports,
    Has,
    LocatedAt,
    RelatedTo,
};

inline constexpr std::array<RelationshipKind, 12> kAllRelationshipKinds = {
    RelationshipKind::Uses,      RelationshipKind::AttributedTo, RelationshipKind::PartOf,
    RelationshipKind::Targets,   RelationshipKind::Publishes,    RelationshipKind::Amplifies,
    RelationshipKind::BelongsTo, RelationshipKind::MemberOf,     RelationshipKind::Supports,
    RelationshipKind::Has,       RelationshipKind::LocatedAt,    RelationshipKind::RelatedTo,
};

std::string_view to_string(RelationshipKind kind) noexcept;
std::optional<RelationshipKind> relationship_kind_from_string(std::string_view text) noexcept;

struct Relationship {
    Identifier id;
    Identifier source;
    RelationshipKind kind = RelationshipKind::RelatedTo;
    Identifier target;
    std::optional<Timestamp> start_time;
    std::optional<Timestamp> stop_time;
    std::optional<std::string> description;

    friend bool operator==(const Relationship&, const Relationship&) = default;
};

}  // namespace ioo
