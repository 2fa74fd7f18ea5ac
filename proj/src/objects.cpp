#include "ioo/objects.hpp"

namespace ioo {

namespace {

constexpr std::array<std::string_view, 12> kRelationshipNames = {
    "uses",       "attributed-to", "part-of",  "targets",  "publishes",  "amplifies",
    "belongs-to", "member-of",     "supports", "has",      "located-at", "related-to",
};

}  // namespace

const std::string& display_label(const IooObject& obj) noexcept {
    return std::visit(
        [](const auto& o) -> const std::string& {
            if constexpr (std::is_same_v<std::decay_t<decltype(o)>, UserAccount>) {
                return o.display_name;
            } else {
                return o.name;
            }
        },
        obj);
}

std::string_view to_string(RelationshipKind kind) noexcept {
    return kRelationshipNames[static_cast<std::size_t>(kind)];
}

std::optional<RelationshipKind> relationship_kind_from_string(std::string_view text) noexcept {
    for (std::size_t i = 0; i < kRelationshipNames.size(); ++i) {
        if (kRelationshipNames[i] == text) {
            return static_cast<RelationshipKind>(i);
        }
    }
    return std::nullopt;
}

}  // namespace ioo
