#pragma once

// Field tables and JSON value codecs shared by the bundle reader and writer.

#include "ioo/objects.hpp"

#include <json.hpp>

#include <concepts>
#include <string>
#include <string_view>
#include <vector>

namespace ioo::wire::detail {

template <typename Self, typename Plain>
concept SameBare = std::same_as<std::remove_const_t<Self>, Plain>;

// One function per kind: visit every attribute as (wire key, member).

template <SameBare<Incident> Self, typename F>
void fields(Self& o, F&& f) {
    f("name", o.name);
    f("description", o.description);
    f("first_seen", o.first_seen);
    f("last_seen", o.last_seen);
    f("objective", o.objective);
}

template <SameBare<AttackPattern> Self, typename F>
void fields(Self& o, F&& f) {
    f("name", o.name);
    f("description", o.description);
    f("aliases", o.aliases);
    f("external_reference", o.external_reference);
    f("kill_chain_phase", o.kill_chain_phase);
}

template <SameBare<Campaign> Self, typename F>
void fields(Self& o, F&& f) {
    f("name", o.name);
    f("description", o.description);
    f("aliases", o.aliases);
    f("first_seen", o.first_seen);
    f("last_seen", o.last_seen);
    f("objective", o.objective);
}

template <SameBare<ThreatActor> Self, typename F>
void fields(Self& o, F&& f) {
    f("name", o.name);
    f("description", o.description);
    f("threat_actor_type", o.threat_actor_type);
    f("aliases", o.aliases);
    f("first_seen", o.first_seen);
    f("last_seen", o.last_seen);
    f("roles", o.roles);
    f("goals", o.goals);
    f("sophistication", o.sophistication);
    f("resource_level", o.resource_level);
    f("primary_motivations", o.primary_motivations);
    f("secondary_motivations", o.secondary_motivations);
    f("personal_motivations", o.personal_motivations);
}

template <SameBare<UserAccount> Self, typename F>
void fields(Self& o, F&& f) {
    f("display_name", o.display_name);
    f("name", o.name);
    f("age", o.age);
    f("icon", o.icon);
    f("description", o.description);
    f("external_links", o.external_links);
    f("region", o.region);
    f("account_created", o.account_created);
    f("platform", o.platform);
    f("privacy_settings", o.privacy_settings);
    f("followers", o.followers);
    f("following", o.following);
    f("rating", o.rating);
    f("privileged", o.privileged);
    f("disabled", o.disabled);
    f("automation", o.automation);
}

template <SameBare<Channel> Self, typename F>
void fields(Self& o, F&& f) {
    f("name", o.name);
    f("description", o.description);
    f("platform", o.platform);
    f("affiliation", o.affiliation);
    f("reach", o.reach);
    f("purpose", o.purpose);
    f("sponsored", o.sponsored);
    f("channel_type", o.channel_type);
}

template <SameBare<Message> Self, typename F>
void fields(Self& o, F&& f) {
    f("name", o.name);
    f("description", o.description);
    f("media_content", o.media_content);
    f("url", o.url);
    f("format", o.format);
}

template <SameBare<CyberPersona> Self, typename F>
void fields(Self& o, F&& f) {
    f("name", o.name);
    f("alias", o.alias);
    f("age", o.age);
    f("description", o.description);
    f("gender", o.gender);
    f("language", o.language);
    f("religion", o.religion);
    f("occupation", o.occupation);
    f("interest", o.interest);
    f("public_opinion", o.public_opinion);
    f("affiliation", o.affiliation);
}

template <SameBare<Community> Self, typename F>
void fields(Self& o, F&& f) {
    f("name", o.name);
    f("description", o.description);
    f("community_type", o.community_type);
    f("resources", o.resources);
    f("topic", o.topic);
    f("affiliation", o.affiliation);
}

template <SameBare<Narrative> Self, typename F>
void fields(Self& o, F&& f) {
    f("name", o.name);
    f("description", o.description);
    f("goal", o.goal);
    f("topic", o.topic);
    f("targeted_public", o.targeted_public);
    f("emotion", o.emotion);
    f("affiliation", o.affiliation);
}

template <SameBare<Event> Self, typename F>
void fields(Self& o, F&& f) {
    f("name", o.name);
    f("description", o.description);
    f("date", o.date);
}

template <SameBare<Location> Self, typename F>
void fields(Self& o, F&& f) {
    f("name", o.name);
    f("description", o.description);
    f("latitude", o.latitude);
    f("longitude", o.longitude);
    f("precision", o.precision);
    f("region", o.region);
    f("country", o.country);
    f("city", o.city);
    f("street_address", o.street_address);
    f("postal_code", o.postal_code);
}

template <SameBare<MediaReference> Self, typename F>
void fields(Self& o, F&& f) {
    f("url", o.url);
    f("mime_type", o.mime_type);
    f("caption", o.caption);
}

/// Thrown while decoding a single record; the caller turns it into a
/// per-object diagnostic.
struct DecodeError {
    std::string field;
    std::string message;
};

// Encoding -----------------------------------------------------------------

nlohmann::json encode_value(const std::string& v);
nlohmann::json encode_value(const Timestamp& v);
nlohmann::json encode_value(std::int64_t v);
nlohmann::json encode_value(bool v);
nlohmann::json encode_value(double v);
nlohmann::json encode_value(const MediaReference& v);

template <typename T>
void encode_field(nlohmann::json& out, std::string_view key, const T& v) {
    out[std::string(key)] = encode_value(v);
}

template <typename T>
void encode_field(nlohmann::json& out, std::string_view key, const std::optional<T>& v) {
    if (v) {
        out[std::string(key)] = encode_value(*v);
    }
}

template <typename T>
void encode_field(nlohmann::json& out, std::string_view key, const std::vector<T>& v) {
    if (!v.empty()) {
        auto arr = nlohmann::json::array();
        for (const auto& item : v) {
            arr.push_back(encode_value(item));
        }
        out[std::string(key)] = std::move(arr);
    }
}

// Decoding -----------------------------------------------------------------

void decode_value(const nlohmann::json& j, std::string_view key, std::string& out);
void decode_value(const nlohmann::json& j, std::string_view key, Timestamp& out);
void decode_value(const nlohmann::json& j, std::string_view key, std::int64_t& out);
void decode_value(const nlohmann::json& j, std::string_view key, bool& out);
void decode_value(const nlohmann::json& j, std::string_view key, double& out);
void decode_value(const nlohmann::json& j, std::string_view key, MediaReference& out);

template <typename T>
void decode_field(const nlohmann::json& j, std::string_view key, T& out) {
    decode_value(j, key, out);
}

template <typename T>
void decode_field(const nlohmann::json& j, std::string_view key, std::optional<T>& out) {
    T value{};
    decode_value(j, key, value);
    out = std::move(value);
}

template <typename T>
void decode_field(const nlohmann::json& j, std::string_view key, std::vector<T>& out) {
    if (!j.is_array()) {
        throw DecodeError{std::string(key), "expected an array"};
    }
    out.clear();
    for (const auto& item : j) {
        T value{};
        decode_value(item, key, value);
        out.push_back(std::move(value));
    }
}

}  // namespace ioo::wire::detail
