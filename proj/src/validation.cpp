#include "ioo/validation.hpp"

#include "ioo/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace ioo {

namespace {

using K = ObjectKind;
using R = RelationshipKind;

constexpr LegalTriple kMatrix[] = {
    {K::Incident, R::Uses, K::AttackPattern},
    {K::Incident, R::Uses, K::Channel},
    {K::Incident, R::Uses, K::UserAccount},
    {K::ThreatActor, R::Uses, K::AttackPattern},
    {K::ThreatActor, R::Uses, K::Channel},
    {K::ThreatActor, R::Uses, K::UserAccount},

    {K::Incident, R::AttributedTo, K::ThreatActor},
    {K::Campaign, R::AttributedTo, K::ThreatActor},
    {K::Incident, R::PartOf, K::Campaign},

    {K::Incident, R::Targets, K::CyberPersona},
    {K::Incident, R::Targets, K::Community},
    {K::Incident, R::Targets, K::Narrative},
    {K::Incident, R::Targets, K::Event},
    {K::Incident, R::Targets, K::Location},
    {K::Campaign, R::Targets, K::CyberPersona},
    {K::Campaign, R::Targets, K::Community},
    {K::Campaign, R::Targets, K::Narrative},
    {K::Campaign, R::Targets, K::Event},
    {K::Campaign, R::Targets, K::Location},
    {K::ThreatActor, R::Targets, K::CyberPersona},
    {K::ThreatActor, R::Targets, K::Community},
    {K::ThreatActor, R::Targets, K::Narrative},
    {K::ThreatActor, R::Targets, K::Event},
    {K::ThreatActor, R::Targets, K::Location},

    {K::Channel, R::Publishes, K::Message},
    {K::UserAccount, R::Publishes, K::Message},
    {K::Channel, R::Amplifies, K::Channel},
    {K::Channel, R::Amplifies, K::Message},

    {K::UserAccount, R::BelongsTo, K::CyberPersona},
    {K::UserAccount, R::BelongsTo, K::Community},
    {K::CyberPersona, R::MemberOf, K::Community},
    {K::CyberPersona, R::Supports, K::Narrative},
    {K::Community, R::Has, K::Narrative},

    {K::Event, R::LocatedAt, K::Location},
    {K::CyberPersona, R::LocatedAt, K::Location},
    {K::Community, R::LocatedAt, K::Location},
    {K::ThreatActor, R::LocatedAt, K::Location},
};

bool blank(std::string_view s) {
    return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

class Checker {
public:
    Checker(ValidationReport& report, const vocab::Registry& registry)
        : report_(report), registry_(registry) {}

    void error(std::string_view code, std::string message, std::string_view field) {
        report_.findings.push_back(
            {Severity::Error, std::string(code), std::move(message), std::string(field)});
    }

    void warning(std::string_view code, std::string message, std::string_view field) {
        report_.findings.push_back(
            {Severity::Warning, std::string(code), std::move(message), std::string(field)});
    }

    void mandatory(const std::string& value, std::string_view field) {
        if (blank(value)) {
            error(finding::kMissingMandatoryField,
                  "mandatory field '" + std::string(field) + "' is missing or empty", field);
        }
    }

    void ordered(const std::optional<Timestamp>& first, const std::optional<Timestamp>& last,
                 std::string_view first_field, std::string_view last_field) {
        if (first && last && *first > *last) {
            error(finding::kTimestampOrder,
                  std::string(first_field) + " " + first->to_string() + " is after " +
                      std::string(last_field) + " " + last->to_string(),
                  first_field);
        }
    }

    void non_negative(const std::optional<std::int64_t>& v, std::string_view field) {
        if (v && *v < 0) {
            error(finding::kRangeViolation,
                  std::string(field) + " must be >= 0, got " + std::to_string(*v), field);
        }
    }

    void in_range(const std::optional<std::int64_t>& v, std::int64_t lo, std::int64_t hi,
                  std::string_view field) {
        if (v && (*v < lo || *v > hi)) {
            error(finding::kRangeViolation,
                  std::string(field) + " must be within [" + std::to_string(lo) + ", " +
                      std::to_string(hi) + "], got " + std::to_string(*v),
                  field);
        }
    }

    void in_range(const std::optional<double>& v, double lo, double hi, std::string_view field) {
        if (v && !(*v >= lo && *v <= hi)) {
            error(finding::kRangeViolation,
                  std::string(field) + " must be within [" + std::to_string(lo) + ", " +
                      std::to_string(hi) + "]",
                  field);
        }
    }

    void no_empty_entries(const std::vector<std::string>& list, std::string_view field) {
        for (std::size_t i = 0; i < list.size(); ++i) {
            if (blank(list[i])) {
                error(finding::kEmptyListEntry,
                      std::string(field) + "[" + std::to_string(i) + "] is empty", field);
            }
        }
    }

    void url(const std::optional<std::string>& v, std::string_view field) {
        if (v && !is_absolute_url(*v)) {
            error(finding::kMalformedUrl, "'" + *v + "' is not an absolute URL", field);
        }
    }

    void media(const MediaReference& m, std::string_view field) {
        if (!is_absolute_url(m.url)) {
            error(finding::kMalformedUrl, "'" + m.url + "' is not an absolute URL", field);
        }
    }

    void term(const std::optional<std::string>& v, std::string_view vocab_name,
              std::string_view field) {
        if (v) {
            term(*v, vocab_name, field);
        }
    }

    void term(const std::string& v, std::string_view vocab_name, std::string_view field) {
        if (!vocab::is_well_formed_term(v)) {
            error(finding::kMalformedTerm,
                  "'" + v + "' is not a lowercase hyphenated term", field);
            return;
        }
        switch (registry_.validate_term(vocab_name, v)) {
        case vocab::TermVerdict::Accepted:
            break;
        case vocab::TermVerdict::AcceptedWithWarning:
            warning(finding::kVocabularyExtension,
                    "'" + v + "' is not in open vocabulary '" + std::string(vocab_name) + "'",
                    field);
            break;
        case vocab::TermVerdict::Rejected:
            error(finding::kVocabularyRejected,
                  "'" + v + "' is not in closed vocabulary '" + std::string(vocab_name) + "'",
                  field);
            break;
        }
    }

    void terms(const std::vector<std::string>& list, std::string_view vocab_name,
               std::string_view field) {
        for (const auto& v : list) {
            term(v, vocab_name, field);
        }
    }

    void check(const Incident& o) {
        mandatory(o.name, "name");
        ordered(o.first_seen, o.last_seen, "first_seen", "last_seen");
    }

    void check(const AttackPattern& o) {
        mandatory(o.name, "name");
        no_empty_entries(o.aliases, "aliases");
        if (o.external_reference && !is_disarm_technique_id(*o.external_reference)) {
            error(finding::kMalformedReference,
                  "'" + *o.external_reference + "' is not a DISARM technique id",
                  "external_reference");
        }
    }

    void check(const Campaign& o) {
        mandatory(o.name, "name");
        no_empty_entries(o.aliases, "aliases");
        ordered(o.first_seen, o.last_seen, "first_seen", "last_seen");
    }

    void check(const ThreatActor& o) {
        mandatory(o.name, "name");
        no_empty_entries(o.aliases, "aliases");
        term(o.threat_actor_type, vocab::kThreatActorType, "threat_actor_type");
        terms(o.roles, vocab::kThreatActorRole, "roles");
        term(o.sophistication, vocab::kSophistication, "sophistication");
        term(o.resource_level, vocab::kResourceLevel, "resource_level");
        ordered(o.first_seen, o.last_seen, "first_seen", "last_seen");
    }

    void check(const UserAccount& o) {
        mandatory(o.display_name, "display_name");
        non_negative(o.age, "age");
        non_negative(o.followers, "followers");
        non_negative(o.following, "following");
        in_range(o.automation, 0, 100, "automation");
        if (o.icon) {
            media(*o.icon, "icon");
        }
        no_empty_entries(o.external_links, "external_links");
        for (const auto& link : o.external_links) {
            if (!blank(link)) {
                url(link, "external_links");
            }
        }
    }

    void check(const Channel& o) {
        mandatory(o.name, "name");
        term(o.platform, vocab::kPlatform, "platform");
        term(o.channel_type, vocab::kChannelType, "channel_type");
    }

    void check(const Message& o) {
        mandatory(o.name, "name");
        url(o.url, "url");
        for (const auto& m : o.media_content) {
            media(m, "media_content");
        }
    }

    void check(const CyberPersona& o) {
        mandatory(o.name, "name");
        non_negative(o.age, "age");
        no_empty_entries(o.alias, "alias");
        no_empty_entries(o.language, "language");
        no_empty_entries(o.interest, "interest");
    }

    void check(const Community& o) {
        mandatory(o.name, "name");
        terms(o.resources, vocab::kCommunityResources, "resources");
    }

    void check(const Narrative& o) { mandatory(o.name, "name"); }

    void check(const Event& o) { mandatory(o.name, "name"); }

    void check(const Location& o) {
        mandatory(o.name, "name");
        in_range(o.latitude, -90.0, 90.0, "latitude");
        in_range(o.longitude, -180.0, 180.0, "longitude");
        if (o.latitude.has_value() != o.longitude.has_value()) {
            error(finding::kIncompleteCoordinates,
                  "latitude and longitude must be given together",
                  o.latitude ? "longitude" : "latitude");
        }
    }

private:
    ValidationReport& report_;
    const vocab::Registry& registry_;
};

}  // namespace

std::string_view to_string(Severity severity) noexcept {
    return severity == Severity::Error ? "error" : "warning";
}

std::string_view to_string(Verdict verdict) noexcept {
    switch (verdict) {
    case Verdict::Valid: return "valid";
    case Verdict::ValidWithWarnings: return "valid-with-warnings";
    case Verdict::Invalid: return "invalid";
    }
    return "invalid";
}

bool ValidationReport::has_errors() const noexcept {
    return std::any_of(findings.begin(), findings.end(),
                       [](const Finding& f) { return f.severity == Severity::Error; });
}

bool ValidationReport::has_warnings() const noexcept {
    return std::any_of(findings.begin(), findings.end(),
                       [](const Finding& f) { return f.severity == Severity::Warning; });
}

Verdict ValidationReport::verdict() const noexcept {
    if (has_errors()) {
        return Verdict::Invalid;
    }
    return findings.empty() ? Verdict::Valid : Verdict::ValidWithWarnings;
}

ValidationReport validate_object(const IooObject& obj, std::optional<Identifier> subject,
                                 const vocab::Registry& registry) {
    ValidationReport report{std::move(subject), {}};
    Checker checker(report, registry);
    std::visit([&](const auto& o) { checker.check(o); }, obj);
    return report;
}

ValidationReport validate_relationship(const Relationship& rel, ObjectKind source_kind,
                                       ObjectKind target_kind) {
    ValidationReport report{rel.id, {}};
    auto add = [&](Severity sev, std::string_view code, std::string message,
                   std::optional<std::string> field) {
        report.findings.push_back({sev, std::string(code), std::move(message), std::move(field)});
    };

    if (rel.id.type_name() != kRelationshipTypeName) {
        add(Severity::Error, finding::kMalformedIdentifier,
            "relationship id '" + rel.id.to_string() + "' must have type 'relationship'", "id");
    }
    if (rel.source.kind() != source_kind) {
        add(Severity::Error, finding::kEndpointKindMismatch,
            "source '" + rel.source.to_string() + "' is not a " +
                std::string(kind_name(source_kind)),
            "source_ref");
    }
    if (rel.target.kind() != target_kind) {
        add(Severity::Error, finding::kEndpointKindMismatch,
            "target '" + rel.target.to_string() + "' is not a " +
                std::string(kind_name(target_kind)),
            "target_ref");
    }
    if (rel.source == rel.target) {
        add(Severity::Error, finding::kSelfReference,
            "relationship source and target are the same object", "target_ref");
    }
    if (rel.start_time && rel.stop_time && *rel.start_time > *rel.stop_time) {
        add(Severity::Error, finding::kTimestampOrder,
            "start_time " + rel.start_time->to_string() + " is after stop_time " +
                rel.stop_time->to_string(),
            "start_time");
    }

    const auto triple = std::string(kind_name(source_kind)) + " -" +
                        std::string(to_string(rel.kind)) + "-> " +
                        std::string(kind_name(target_kind));
    if (rel.kind == RelationshipKind::RelatedTo) {
        add(Severity::Warning, finding::kGenericRelationship,
            "generic related-to edge " + triple + " carries no ontology semantics",
            "relationship_type");
    } else if (!is_legal_triple(source_kind, rel.kind, target_kind)) {
        add(Severity::Error, finding::kIllegalRelationship,
            "relationship " + triple + " is not permitted by the ontology",
            "relationship_type");
    }
    return report;
}

bool is_legal_triple(ObjectKind source, RelationshipKind kind, ObjectKind target) noexcept {
    return std::any_of(std::begin(kMatrix), std::end(kMatrix), [&](const LegalTriple& t) {
        return t.source == source && t.kind == kind && t.target == target;
    });
}

std::span<const LegalTriple> legality_matrix() noexcept {
    return kMatrix;
}

bool is_absolute_url(std::string_view text) noexcept {
    const auto colon = text.find(':');
    if (colon == std::string_view::npos || colon == 0) {
        return false;
    }
    const auto scheme = text.substr(0, colon);
    if (!std::isalpha(static_cast<unsigned char>(scheme.front()))) {
        return false;
    }
    for (unsigned char c : scheme) {
        if (!std::isalnum(c) && c != '+' && c != '-' && c != '.') {
            return false;
        }
    }
    const auto rest = text.substr(colon + 1);
    if (rest.empty()) {
        return false;
    }
    for (unsigned char c : rest) {
        if (std::isspace(c) || std::iscntrl(c)) {
            return false;
        }
    }
    if (rest.starts_with("//")) {
        const auto authority = rest.substr(2, rest.find_first_of("/?#", 2) - 2);
        return !authority.empty();
    }
    return true;
}

bool is_disarm_technique_id(std::string_view text) noexcept {
    auto digits = [](std::string_view s) {
        return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
            return std::isdigit(c);
        });
    };
    if (text.size() < 2 || text.front() != 'T') {
        return false;
    }
    const auto body = text.substr(1);
    const auto dot = body.find('.');
    if (dot == std::string_view::npos) {
        return digits(body);
    }
    return digits(body.substr(0, dot)) && digits(body.substr(dot + 1));
}

}  // namespace ioo
