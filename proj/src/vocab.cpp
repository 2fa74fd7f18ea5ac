#include "ioo/vocab.hpp"

#include "ioo/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace ioo::vocab {

namespace {

std::vector<Vocabulary> builtin_vocabularies() {
    return {
        // STIX 2.1 threat-actor-type-ov
        {std::string(kThreatActorType),
         {"activist", "competitor", "crime-syndicate", "criminal", "hacker",
          "insider-accidental", "insider-disgruntled", "nation-state", "sensationalist",
          "spy", "terrorist", "unknown"},
         false},
        // STIX 2.1 threat-actor-role-ov
        {std::string(kThreatActorRole),
         {"agent", "director", "independent", "infrastructure-architect",
          "infrastructure-operator", "malware-author", "sponsor"},
         false},
        // STIX 2.1 threat-actor-sophistication-ov
        {std::string(kSophistication),
         {"none", "minimal", "intermediate", "advanced", "expert", "innovator", "strategic"},
         false},
        // STIX 2.1 attack-resource-level-ov
        {std::string(kResourceLevel),
         {"individual", "club", "contest", "team", "organization", "government"},
         false},
        {std::string(kChannelType),
         {"official-communication-channel", "state-linked-channel",
          "state-controlled-channel", "independent-channel", "unknown"},
         true},
        {std::string(kPlatform),
         {"social-media", "messaging-app", "website", "video-platform", "forum", "blog",
          "podcast", "other"},
         true},
        {std::string(kCommunityResources),
         {"members", "funding", "information", "technology"},
         true},
    };
}

void check_vocabulary(const Vocabulary& v) {
    if (v.name.empty()) {
        throw Error(ErrorCode::ConfigError, "vocabulary with empty name");
    }
    if (v.terms.empty()) {
        throw Error(ErrorCode::ConfigError, "vocabulary '" + v.name + "' has no terms");
    }
    std::set<std::string_view> seen;
    for (const auto& t : v.terms) {
        if (!is_well_formed_term(t)) {
            throw Error(ErrorCode::ConfigError,
                        "vocabulary '" + v.name + "' has malformed term '" + t + "'");
        }
        if (!seen.insert(t).second) {
            throw Error(ErrorCode::ConfigError,
                        "vocabulary '" + v.name + "' repeats term '" + t + "'");
        }
    }
}

std::vector<Vocabulary> parse_config(std::string_view json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::ConfigError, std::string("vocabulary config: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("vocabularies") || !doc["vocabularies"].is_array()) {
        throw Error(ErrorCode::ConfigError,
                    "vocabulary config must be an object with a 'vocabularies' array");
    }
    std::vector<Vocabulary> out;
    for (const auto& entry : doc["vocabularies"]) {
        if (!entry.is_object() || !entry.contains("name") || !entry["name"].is_string() ||
            !entry.contains("terms") || !entry["terms"].is_array()) {
            throw Error(ErrorCode::ConfigError,
                        "vocabulary entry needs a string 'name' and a 'terms' array");
        }
        Vocabulary v;
        v.name = entry["name"].get<std::string>();
        v.open = entry.value("open", true);
        for (const auto& t : entry["terms"]) {
            if (!t.is_string()) {
                throw Error(ErrorCode::ConfigError,
                            "vocabulary '" + v.name + "' has a non-string term");
            }
            v.terms.push_back(t.get<std::string>());
        }
        out.push_back(std::move(v));
    }
    return out;
}

}  // namespace

bool Vocabulary::contains(std::string_view term) const {
    return std::find(terms.begin(), terms.end(), term) != terms.end();
}

std::string_view to_string(TermVerdict verdict) noexcept {
    switch (verdict) {
    case TermVerdict::Accepted: return "accepted";
    case TermVerdict::AcceptedWithWarning: return "accepted-with-warning";
    case TermVerdict::Rejected: return "rejected";
    }
    return "rejected";
}

bool is_well_formed_term(std::string_view term) noexcept {
    if (term.empty() || term.front() == '-' || term.back() == '-') {
        return false;
    }
    char prev = '\0';
    for (char c : term) {
        const bool alnum = (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9');
        if (c == '-') {
            if (prev == '-') {
                return false;
            }
        } else if (!alnum) {
            return false;
        }
        prev = c;
    }
    return true;
}

Registry::Registry(std::vector<Vocabulary> vocabularies) {
    for (auto& v : vocabularies) {
        check_vocabulary(v);
        const std::string name = v.name;
        if (!by_name_.emplace(name, std::move(v)).second) {
            throw Error(ErrorCode::ConfigError, "duplicate vocabulary name '" + name + "'");
        }
    }
}

const Registry& Registry::builtin() {
    static const Registry registry(builtin_vocabularies());
    return registry;
}

Registry Registry::with_overrides(std::string_view json_text) {
    auto merged = builtin_vocabularies();
    std::set<std::string> overridden;
    for (auto& v : parse_config(json_text)) {
        if (!overridden.insert(v.name).second) {
            throw Error(ErrorCode::ConfigError, "duplicate vocabulary name '" + v.name + "'");
        }
        auto it = std::find_if(merged.begin(), merged.end(),
                               [&](const Vocabulary& b) { return b.name == v.name; });
        if (it != merged.end()) {
            *it = std::move(v);
        } else {
            merged.push_back(std::move(v));
        }
    }
    return Registry(std::move(merged));
}

Registry Registry::with_overrides_from_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::ConfigError, "cannot read vocabulary config " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return with_overrides(buf.str());
}

const Vocabulary& Registry::lookup(std::string_view name) const {
    auto it = by_name_.find(name);
    if (it == by_name_.end()) {
        throw Error(ErrorCode::UnknownVocabulary, "unknown vocabulary '" + std::string(name) + "'");
    }
    return it->second;
}

bool Registry::has(std::string_view name) const {
    return by_name_.find(name) != by_name_.end();
}

TermVerdict Registry::validate_term(std::string_view vocab_name, std::string_view term) const {
    const auto& v = lookup(vocab_name);
    if (!is_well_formed_term(term)) {
        throw Error(ErrorCode::MalformedTerm, "malformed term '" + std::string(term) + "'");
    }
    if (v.contains(term)) {
        return TermVerdict::Accepted;
    }
    return v.open ? TermVerdict::AcceptedWithWarning : TermVerdict::Rejected;
}

std::vector<std::string> Registry::names() const {
    std::vector<std::string> out;
    out.reserve(by_name_.size());
    for (const auto& [name, v] : by_name_) {
        out.push_back(name);
    }
    return out;
}

const Vocabulary& lookup_vocabulary(std::string_view name) {
    return Registry::builtin().lookup(name);
}

TermVerdict validate_term(std::string_view vocab_name, std::string_view term) {
    return Registry::builtin().validate_term(vocab_name, term);
}

std::vector<std::string> list_vocabularies() {
    return Registry::builtin().names();
}

}  // namespace ioo::vocab
