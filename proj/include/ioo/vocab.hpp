#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace ioo::vocab {

/// Names of the built-in vocabularies referenced by the object model.
inline constexpr std::string_view kThreatActorType = "threat-actor-type";
inline constexpr std::string_view kThreatActorRole = "threat-actor-role";
inline constexpr std::string_view kSophistication = "sophistication";
inline constexpr std::string_view kResourceLevel = "resource-level";
inline constexpr std::string_view kChannelType = "channel-type";
inline constexpr std::string_view kPlatform = "platform";
inline constexpr std::string_view kCommunityResources = "community-resources";

struct Vocabulary {
    std::string name;
    std::vector<std::string> terms;  // insertion order preserved, unique
    bool open = false;

    bool contains(std::string_view term) const;

    friend bool operator==(const Vocabulary&, const Vocabulary&) = default;
};

enum class TermVerdict { Accepted, AcceptedWithWarning, Rejected };

std::string_view to_string(TermVerdict verdict) noexcept;

/// True for non-empty lowercase alphanumeric tokens joined by single hyphens.
bool is_well_formed_term(std::string_view term) noexcept;

/// Immutable set of named vocabularies. Built once, then shared read-only.
class Registry {
public:
    /// Throws ConfigError when a vocabulary breaks its invariants
    /// (empty/duplicate/malformed terms, duplicate names).
    explicit Registry(std::vector<Vocabulary> vocabularies);

    /// The compiled-in vocabulary set.
    static const Registry& builtin();

    /// Built-in set with the entries of a JSON configuration document merged
    /// over it; an entry whose name matches a built-in replaces it.
    ///
    /// Document shape:
    ///   {"vocabularies": [{"name": "...", "open": true, "terms": ["..."]}]}
    static Registry with_overrides(std::string_view json_text);
    static Registry with_overrides_from_file(const std::filesystem::path& path);

    const Vocabulary& lookup(std::string_view name) const;
    bool has(std::string_view name) const;

    /// Throws UnknownVocabulary or MalformedTerm.
    TermVerdict validate_term(std::string_view vocab_name, std::string_view term) const;

    /// Registered names in lexicographic order.
    std::vector<std::string> names() const;

private:
    std::map<std::string, Vocabulary, std::less<>> by_name_;
};

// Shorthands over Registry::builtin().
const Vocabulary& lookup_vocabulary(std::string_view name);
TermVerdict validate_term(std::string_view vocab_name, std::string_view term);
std::vector<std::string> list_vocabularies();

}  // namespace ioo::vocab
