#include "ioo/graph.hpp"

#include <algorithm>
#include <deque>

namespace ioo {

namespace {

std::string first_error_message(const ValidationReport& report) {
    for (const auto& f : report.findings) {
        if (f.severity == Severity::Error) {
            return f.code + ": " + f.message;
        }
    }
    return "validation failed";
}

std::vector<Finding> warnings_of(const ValidationReport& report) {
    std::vector<Finding> out;
    std::copy_if(report.findings.begin(), report.findings.end(), std::back_inserter(out),
                 [](const Finding& f) { return f.severity == Severity::Warning; });
    return out;
}

std::vector<Identifier> to_vector(const std::set<Identifier>& s) {
    return {s.begin(), s.end()};
}

}  // namespace

InvalidObjectError::InvalidObjectError(ValidationReport report)
    : Error(ErrorCode::InvalidObject,
            (report.subject ? report.subject->to_string() + ": " : std::string()) +
                first_error_message(report)),
      report_(std::move(report)) {}

IllegalRelationshipError::IllegalRelationshipError(ValidationReport report)
    : Error(ErrorCode::IllegalRelationship,
            (report.subject ? report.subject->to_string() + ": " : std::string()) +
                first_error_message(report)),
      report_(std::move(report)) {}

DanglingEndpointError::DanglingEndpointError(EdgeEnd side, const Identifier& missing)
    : Error(ErrorCode::DanglingEndpoint,
            std::string(side == EdgeEnd::Source ? "source" : "target") + " '" +
                missing.to_string() + "' is not in the graph"),
      side_(side) {}

std::string_view to_string(InsertOutcome outcome) noexcept {
    switch (outcome) {
    case InsertOutcome::Inserted: return "inserted";
    case InsertOutcome::Updated: return "updated";
    case InsertOutcome::Unchanged: return "unchanged";
    }
    return "unchanged";
}

// Mutation -----------------------------------------------------------------

InsertResult KnowledgeGraph::insert_object(const Identifier& id, IooObject obj) {
    const auto kind = kind_of(obj);
    if (id.kind() != kind) {
        throw Error(ErrorCode::TypeNameMismatch,
                    "id '" + id.to_string() + "' does not name a " +
                        std::string(canonical_type_name(kind)));
    }
    auto report = validate_object(obj, id, *registry_);
    if (report.has_errors()) {
        throw InvalidObjectError(std::move(report));
    }

    InsertResult result{InsertOutcome::Inserted, warnings_of(report)};
    auto it = objects_.find(id);
    if (it == objects_.end()) {
        objects_.emplace(id, std::move(obj));
    } else if (it->second == obj) {
        result.outcome = InsertOutcome::Unchanged;
    } else {
        it->second = std::move(obj);
        result.outcome = InsertOutcome::Updated;
    }
    return result;
}

InsertResult KnowledgeGraph::insert_relationship(const Relationship& rel) {
    const auto* source = find(rel.source);
    if (source == nullptr) {
        throw DanglingEndpointError(EdgeEnd::Source, rel.source);
    }
    const auto* target = find(rel.target);
    if (target == nullptr) {
        throw DanglingEndpointError(EdgeEnd::Target, rel.target);
    }
    auto report = validate_relationship(rel, kind_of(*source), kind_of(*target));
    if (report.has_errors()) {
        throw IllegalRelationshipError(std::move(report));
    }

    for (const auto& edge_id : out_edges(rel.source)) {
        const auto& other = edges_.at(edge_id);
        if (other.id != rel.id && other.kind == rel.kind && other.target == rel.target &&
            other.start_time == rel.start_time && other.stop_time == rel.stop_time) {
            throw Error(ErrorCode::DuplicateEdge,
                        "relationship '" + rel.id.to_string() + "' duplicates '" +
                            other.id.to_string() + "'");
        }
    }

    InsertResult result{InsertOutcome::Inserted, warnings_of(report)};
    auto it = edges_.find(rel.id);
    if (it == edges_.end()) {
        edges_.emplace(rel.id, rel);
        index_edge(rel);
    } else if (it->second == rel) {
        result.outcome = InsertOutcome::Unchanged;
    } else {
        unindex_edge(it->second);
        it->second = rel;
        index_edge(rel);
        result.outcome = InsertOutcome::Updated;
    }
    return result;
}

std::size_t KnowledgeGraph::remove_object(const Identifier& id, bool cascade) {
    require(id);
    std::set<Identifier> incident;
    for (const auto* index : {&out_edges(id), &in_edges(id)}) {
        incident.insert(index->begin(), index->end());
    }
    if (!incident.empty() && !cascade) {
        throw Error(ErrorCode::WouldDangle,
                    "'" + id.to_string() + "' still has " + std::to_string(incident.size()) +
                        " incident relationship(s)");
    }
    for (const auto& edge_id : incident) {
        remove_relationship(edge_id);
    }
    objects_.erase(id);
    out_.erase(id);
    in_.erase(id);
    return incident.size();
}

void KnowledgeGraph::remove_relationship(const Identifier& edge_id) {
    auto it = edges_.find(edge_id);
    if (it == edges_.end()) {
        throw Error(ErrorCode::NotFound, "relationship '" + edge_id.to_string() + "' not found");
    }
    unindex_edge(it->second);
    edges_.erase(it);
}

// Access -------------------------------------------------------------------

const IooObject* KnowledgeGraph::find(const Identifier& id) const {
    auto it = objects_.find(id);
    return it == objects_.end() ? nullptr : &it->second;
}

const Relationship* KnowledgeGraph::find_edge(const Identifier& edge_id) const {
    auto it = edges_.find(edge_id);
    return it == edges_.end() ? nullptr : &it->second;
}

const IooObject& KnowledgeGraph::require(const Identifier& id) const {
    const auto* obj = find(id);
    if (obj == nullptr) {
        throw Error(ErrorCode::NotFound, "'" + id.to_string() + "' not found");
    }
    return *obj;
}

ObjectKind KnowledgeGraph::require_kind(const Identifier& id,
                                        std::initializer_list<ObjectKind> allowed,
                                        std::string_view what) const {
    const auto kind = kind_of(require(id));
    if (std::find(allowed.begin(), allowed.end(), kind) == allowed.end()) {
        throw Error(ErrorCode::WrongKind, "'" + id.to_string() + "' is a " +
                                              std::string(kind_name(kind)) + ", expected " +
                                              std::string(what));
    }
    return kind;
}

void KnowledgeGraph::index_edge(const Relationship& rel) {
    out_[rel.source].insert(rel.id);
    in_[rel.target].insert(rel.id);
}

void KnowledgeGraph::unindex_edge(const Relationship& rel) {
    auto drop = [&](std::map<Identifier, EdgeIds>& index, const Identifier& node) {
        auto it = index.find(node);
        if (it != index.end()) {
            it->second.erase(rel.id);
            if (it->second.empty()) {
                index.erase(it);
            }
        }
    };
    drop(out_, rel.source);
    drop(in_, rel.target);
}

const KnowledgeGraph::EdgeIds& KnowledgeGraph::out_edges(const Identifier& id) const {
    static const EdgeIds kEmpty;
    auto it = out_.find(id);
    return it == out_.end() ? kEmpty : it->second;
}

const KnowledgeGraph::EdgeIds& KnowledgeGraph::in_edges(const Identifier& id) const {
    static const EdgeIds kEmpty;
    auto it = in_.find(id);
    return it == in_.end() ? kEmpty : it->second;
}

std::set<Identifier> KnowledgeGraph::sources_into(const Identifier& id,
                                                  RelationshipKind kind) const {
    std::set<Identifier> out;
    for (const auto& edge_id : in_edges(id)) {
        const auto& e = edges_.at(edge_id);
        if (e.kind == kind) {
            out.insert(e.source);
        }
    }
    return out;
}

std::set<Identifier> KnowledgeGraph::targets_from(const Identifier& id,
                                                  RelationshipKind kind) const {
    std::set<Identifier> out;
    for (const auto& edge_id : out_edges(id)) {
        const auto& e = edges_.at(edge_id);
        if (e.kind == kind) {
            out.insert(e.target);
        }
    }
    return out;
}

// Queries ------------------------------------------------------------------

std::vector<Neighbor> KnowledgeGraph::neighbors(const Identifier& id, Direction direction,
                                                std::optional<RelationshipKind> kind_filter) const {
    require(id);
    std::set<Identifier> edge_ids;
    if (direction != Direction::In) {
        edge_ids.insert(out_edges(id).begin(), out_edges(id).end());
    }
    if (direction != Direction::Out) {
        edge_ids.insert(in_edges(id).begin(), in_edges(id).end());
    }
    std::vector<Neighbor> out;
    for (const auto& edge_id : edge_ids) {
        const auto& e = edges_.at(edge_id);
        if (kind_filter && e.kind != *kind_filter) {
            continue;
        }
        out.push_back({e, e.source == id ? e.target : e.source});
    }
    return out;
}

std::vector<Identifier> KnowledgeGraph::attribution_of(const Identifier& id) const {
    const auto kind =
        require_kind(id, {ObjectKind::Incident, ObjectKind::Campaign}, "incident or campaign");
    auto actors = targets_from(id, RelationshipKind::AttributedTo);
    if (kind == ObjectKind::Incident) {
        for (const auto& campaign : targets_from(id, RelationshipKind::PartOf)) {
            auto more = targets_from(campaign, RelationshipKind::AttributedTo);
            actors.insert(more.begin(), more.end());
        }
    }
    return to_vector(actors);
}

std::vector<Identifier> KnowledgeGraph::targets_of(const Identifier& id, bool transitive) const {
    require_kind(id, {ObjectKind::Incident, ObjectKind::Campaign, ObjectKind::ThreatActor},
                 "incident, campaign or threat-actor");
    if (!transitive) {
        return to_vector(targets_from(id, RelationshipKind::Targets));
    }

    // Walk the ownership tree downwards, collecting targets at each owner.
    std::set<Identifier> targets;
    std::set<Identifier> visited{id};
    std::deque<Identifier> pending{id};
    while (!pending.empty()) {
        const auto owner = pending.front();
        pending.pop_front();
        auto direct = targets_from(owner, RelationshipKind::Targets);
        targets.insert(direct.begin(), direct.end());

        std::set<Identifier> owned;
        switch (kind_of(objects_.at(owner))) {
        case ObjectKind::ThreatActor:
            owned = sources_into(owner, RelationshipKind::AttributedTo);
            break;
        case ObjectKind::Campaign:
            owned = sources_into(owner, RelationshipKind::PartOf);
            break;
        default:
            break;
        }
        for (const auto& child : owned) {
            if (visited.insert(child).second) {
                pending.push_back(child);
            }
        }
    }
    return to_vector(targets);
}

std::vector<Identifier> KnowledgeGraph::amplification_closure(const Identifier& id) const {
    require_kind(id, {ObjectKind::Channel}, "channel");
    std::set<Identifier> reached;
    std::deque<Identifier> pending{id};
    while (!pending.empty()) {
        const auto node = pending.front();
        pending.pop_front();
        for (const auto& next : targets_from(node, RelationshipKind::Amplifies)) {
            if (reached.insert(next).second) {
                pending.push_back(next);
            }
        }
    }
    return to_vector(reached);
}

Audience KnowledgeGraph::audience_of(const Identifier& id) const {
    require_kind(id, {ObjectKind::Narrative}, "narrative");
    const auto communities = sources_into(id, RelationshipKind::Has);
    auto personas = sources_into(id, RelationshipKind::Supports);
    for (const auto& community : communities) {
        auto members = sources_into(community, RelationshipKind::MemberOf);
        personas.insert(members.begin(), members.end());
    }
    return {to_vector(communities), to_vector(personas)};
}

Footprint KnowledgeGraph::footprint_of(const Identifier& id) const {
    require_kind(id, {ObjectKind::CyberPersona, ObjectKind::Community},
                 "cyber-persona or community");
    const auto accounts = sources_into(id, RelationshipKind::BelongsTo);
    std::set<Identifier> messages;
    for (const auto& account : accounts) {
        auto published = targets_from(account, RelationshipKind::Publishes);
        messages.insert(published.begin(), published.end());
    }
    return {to_vector(accounts), to_vector(messages)};
}

GraphStats KnowledgeGraph::stats() const {
    GraphStats s;
    for (auto k : kAllObjectKinds) {
        s.objects_by_kind[k] = 0;
    }
    for (auto k : kAllRelationshipKinds) {
        s.edges_by_kind[k] = 0;
    }
    for (const auto& [id, obj] : objects_) {
        ++s.objects_by_kind[kind_of(obj)];
    }
    for (const auto& [id, e] : edges_) {
        ++s.edges_by_kind[e.kind];
    }
    s.total_objects = objects_.size();
    s.total_edges = edges_.size();
    return s;
}

}  // namespace ioo
