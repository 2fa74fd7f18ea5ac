#include "ioo/identifier.hpp"

#include "ioo/errors.hpp"

#include <random>

namespace ioo {

namespace {

struct KindNames {
    ObjectKind kind;
    std::string_view type_name;
    std::string_view short_name;
};

constexpr std::array<KindNames, 12> kKindNames = {{
    {ObjectKind::Incident, "incident", "incident"},
    {ObjectKind::AttackPattern, "attack-pattern", "attack-pattern"},
    {ObjectKind::Campaign, "campaign", "campaign"},
    {ObjectKind::ThreatActor, "threat-actor", "threat-actor"},
    {ObjectKind::UserAccount, "user-account", "user-account"},
    {ObjectKind::Channel, "channel", "channel"},
    {ObjectKind::Message, "x-ioo-message", "message"},
    {ObjectKind::CyberPersona, "x-ioo-cyber-persona", "cyber-persona"},
    {ObjectKind::Community, "x-ioo-community", "community"},
    {ObjectKind::Narrative, "narrative", "narrative"},
    {ObjectKind::Event, "event", "event"},
    {ObjectKind::Location, "location", "location"},
}};

int hex_value(char c) noexcept {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

}  // namespace

std::string_view canonical_type_name(ObjectKind kind) noexcept {
    return kKindNames[static_cast<std::size_t>(kind)].type_name;
}

std::string_view kind_name(ObjectKind kind) noexcept {
    return kKindNames[static_cast<std::size_t>(kind)].short_name;
}

std::optional<ObjectKind> kind_from_type_name(std::string_view type_name) noexcept {
    for (const auto& k : kKindNames) {
        if (k.type_name == type_name) {
            return k.kind;
        }
    }
    return std::nullopt;
}

bool is_canonical_type_name(std::string_view type_name) noexcept {
    return type_name == kRelationshipTypeName || kind_from_type_name(type_name).has_value();
}

std::optional<Uuid> Uuid::parse(std::string_view text) noexcept {
    if (text.size() != 36) {
        return std::nullopt;
    }
    std::array<std::uint8_t, 16> bytes{};
    std::size_t out = 0;
    for (std::size_t i = 0; i < 36;) {
        if (i == 8 || i == 13 || i == 18 || i == 23) {
            if (text[i] != '-') {
                return std::nullopt;
            }
            ++i;
            continue;
        }
        const int hi = hex_value(text[i]);
        const int lo = hex_value(text[i + 1]);
        if (hi < 0 || lo < 0) {
            return std::nullopt;
        }
        bytes[out++] = static_cast<std::uint8_t>(hi << 4 | lo);
        i += 2;
    }
    return Uuid(bytes);
}

Uuid Uuid::random() {
    thread_local std::mt19937_64 engine{std::random_device{}()};
    std::array<std::uint8_t, 16> bytes{};
    for (std::size_t i = 0; i < 16; i += 8) {
        const auto word = engine();
        for (std::size_t j = 0; j < 8; ++j) {
            bytes[i + j] = static_cast<std::uint8_t>(word >> (8 * j));
        }
    }
    bytes[6] = static_cast<std::uint8_t>((bytes[6] & 0x0F) | 0x40);
    bytes[8] = static_cast<std::uint8_t>((bytes[8] & 0x3F) | 0x80);
    return Uuid(bytes);
}

Uuid Uuid::from_content(std::string_view content) noexcept {
    constexpr std::uint64_t kPrime = 0x100000001b3ULL;
    std::uint64_t h1 = 0xcbf29ce484222325ULL;
    std::uint64_t h2 = 0x84222325cbf29ce4ULL;
    for (unsigned char c : content) {
        h1 = (h1 ^ c) * kPrime;
        h2 = (h2 ^ static_cast<unsigned char>(c ^ 0x5c)) * kPrime;
    }
    std::array<std::uint8_t, 16> bytes{};
    for (std::size_t j = 0; j < 8; ++j) {
        bytes[j] = static_cast<std::uint8_t>(h1 >> (56 - 8 * j));
        bytes[8 + j] = static_cast<std::uint8_t>(h2 >> (56 - 8 * j));
    }
    bytes[6] = static_cast<std::uint8_t>((bytes[6] & 0x0F) | 0x80);
    bytes[8] = static_cast<std::uint8_t>((bytes[8] & 0x3F) | 0x80);
    return Uuid(bytes);
}

std::string Uuid::to_string() const {
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out;
    out.reserve(36);
    for (std::size_t i = 0; i < 16; ++i) {
        if (i == 4 || i == 6 || i == 8 || i == 10) {
            out.push_back('-');
        }
        out.push_back(kHex[bytes_[i] >> 4]);
        out.push_back(kHex[bytes_[i] & 0x0F]);
    }
    return out;
}

Identifier::Identifier(std::string_view type_name, Uuid uuid) : type_name_(type_name), uuid_(uuid) {
    if (!is_canonical_type_name(type_name) && type_name != kBundleTypeName) {
        throw Error(ErrorCode::UnknownTypeName, "unknown type name '" + std::string(type_name) + "'");
    }
}

Identifier Identifier::parse(std::string_view text) {
    const auto sep = text.find("--");
    if (sep == std::string_view::npos || sep == 0) {
        throw Error(ErrorCode::MalformedIdentifier,
                    "identifier '" + std::string(text) + "' lacks '<type>--<uuid>' shape");
    }
    const auto uuid = Uuid::parse(text.substr(sep + 2));
    if (!uuid) {
        throw Error(ErrorCode::MalformedIdentifier,
                    "identifier '" + std::string(text) + "' has a malformed UUID");
    }
    return Identifier(text.substr(0, sep), *uuid);
}

std::string Identifier::to_string() const {
    return type_name_ + "--" + uuid_.to_string();
}

Identifier make_identifier(std::string_view type_name, std::optional<Uuid> uuid) {
    if (!is_canonical_type_name(type_name)) {
        throw Error(ErrorCode::UnknownTypeName, "unknown type name '" + std::string(type_name) + "'");
    }
    return Identifier(type_name, uuid ? *uuid : Uuid::random());
}

}  // namespace ioo
