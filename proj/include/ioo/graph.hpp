#pragma once

#include "ioo/errors.hpp"
#include "ioo/objects.hpp"
#include "ioo/validation.hpp"

#include <map>
#include <optional>
#include <set>
#include <vector>

namespace ioo {

/// Thrown by KnowledgeGraph::insert_object when validation reports errors.
class InvalidObjectError : public Error {
public:
    explicit InvalidObjectError(ValidationReport report);
    const ValidationReport& report() const noexcept { return report_; }

private:
    ValidationReport report_;
};

/// Thrown by KnowledgeGraph::insert_relationship for matrix violations (and
/// any other relationship error finding).
class IllegalRelationshipError : public Error {
public:
    explicit IllegalRelationshipError(ValidationReport report);
    const ValidationReport& report() const noexcept { return report_; }

private:
    ValidationReport report_;
};

enum class EdgeEnd { Source, Target };

class DanglingEndpointError : public Error {
public:
    DanglingEndpointError(EdgeEnd side, const Identifier& missing);
    EdgeEnd side() const noexcept { return side_; }

private:
    EdgeEnd side_;
};

enum class InsertOutcome { Inserted, Updated, Unchanged };

std::string_view to_string(InsertOutcome outcome) noexcept;

struct InsertResult {
    InsertOutcome outcome = InsertOutcome::Inserted;
    std::vector<Finding> warnings;
};

enum class Direction { Out, In, Both };

struct Neighbor {
    Relationship edge;
    Identifier other;

    friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

struct Audience {
    std::vector<Identifier> communities;
    std::vector<Identifier> personas;
};

struct Footprint {
    std::vector<Identifier> accounts;
    std::vector<Identifier> messages;
};

struct GraphStats {
    std::map<ObjectKind, std::size_t> objects_by_kind;            // every kind present, zeros included
    std::map<RelationshipKind, std::size_t> edges_by_kind;        // likewise
    std::size_t total_objects = 0;
    std::size_t total_edges = 0;

    friend bool operator==(const GraphStats&, const GraphStats&) = default;
};

/// In-memory object store plus typed edge set with referential integrity.
///
/// Every stored object passed validate_object without errors, every edge
/// passed validate_relationship without errors, and no edge has an endpoint
/// outside the object map. Single writer, many readers: const member
/// functions may run concurrently between mutations.
///
/// All id collections returned by queries are sorted by identifier.
class KnowledgeGraph {
public:
    KnowledgeGraph() = default;
    explicit KnowledgeGraph(const vocab::Registry& registry) : registry_(&registry) {}

    // Mutation -------------------------------------------------------------

    /// Insert or upsert. Throws TypeNameMismatch, InvalidObjectError.
    InsertResult insert_object(const Identifier& id, IooObject obj);

    /// Insert or upsert by edge id. Throws DanglingEndpointError,
    /// IllegalRelationshipError, Error(DuplicateEdge).
    InsertResult insert_relationship(const Relationship& rel);

    /// Throws NotFound, or WouldDangle when cascade is false and edges touch id.
    /// Returns the number of edges removed with the object.
    std::size_t remove_object(const Identifier& id, bool cascade);

    /// Throws NotFound.
    void remove_relationship(const Identifier& edge_id);

    // Access ---------------------------------------------------------------

    const std::map<Identifier, IooObject>& objects() const noexcept { return objects_; }
    const std::map<Identifier, Relationship>& edges() const noexcept { return edges_; }

    bool contains(const Identifier& id) const { return objects_.contains(id); }
    const IooObject* find(const Identifier& id) const;
    const Relationship* find_edge(const Identifier& edge_id) const;

    std::size_t object_count() const noexcept { return objects_.size(); }
    std::size_t edge_count() const noexcept { return edges_.size(); }

    const vocab::Registry& registry() const noexcept { return *registry_; }

    // Queries --------------------------------------------------------------

    /// Edges incident to id, ordered by edge id. Throws NotFound.
    std::vector<Neighbor> neighbors(const Identifier& id, Direction direction,
                                    std::optional<RelationshipKind> kind_filter = {}) const;

    /// Threat actors an incident or campaign is attributed to, directly or,
    /// for incidents, through the campaigns they are part of.
    /// Throws NotFound, WrongKind.
    std::vector<Identifier> attribution_of(const Identifier& id) const;

    /// Direct targets of an incident, campaign or threat actor; with
    /// transitive, also the targets of the campaigns and incidents it owns
    /// (actor <-attributed-to- campaign/incident, campaign <-part-of- incident).
    /// Throws NotFound, WrongKind.
    std::vector<Identifier> targets_of(const Identifier& id, bool transitive) const;

    /// Everything reachable from a channel over one or more amplifies edges.
    /// The start node is included only when it lies on a cycle.
    /// Throws NotFound, WrongKind.
    std::vector<Identifier> amplification_closure(const Identifier& id) const;

    /// Communities having the narrative, plus personas supporting it or
    /// belonging to one of those communities. Throws NotFound, WrongKind.
    Audience audience_of(const Identifier& id) const;

    /// Accounts belonging to a persona or community, and what they publish.
    /// Throws NotFound, WrongKind.
    Footprint footprint_of(const Identifier& id) const;

    GraphStats stats() const;

    /// Equality over objects and edges; indexes are derived state.
    friend bool operator==(const KnowledgeGraph& a, const KnowledgeGraph& b) {
        return a.objects_ == b.objects_ && a.edges_ == b.edges_;
    }

private:
    using EdgeIds = std::set<Identifier>;

    const IooObject& require(const Identifier& id) const;
    ObjectKind require_kind(const Identifier& id, std::initializer_list<ObjectKind> allowed,
                            std::string_view what) const;
    void index_edge(const Relationship& rel);
    void unindex_edge(const Relationship& rel);
    const EdgeIds& out_edges(const Identifier& id) const;
    const EdgeIds& in_edges(const Identifier& id) const;

    /// Sources of in-edges of the given kind.
    std::set<Identifier> sources_into(const Identifier& id, RelationshipKind kind) const;
    /// Targets of out-edges of the given kind.
    std::set<Identifier> targets_from(const Identifier& id, RelationshipKind kind) const;

    const vocab::Registry* registry_ = &vocab::Registry::builtin();
    std::map<Identifier, IooObject> objects_;
    std::map<Identifier, Relationship> edges_;
    std::map<Identifier, EdgeIds> out_;
    std::map<Identifier, EdgeIds> in_;
};

}  // namespace ioo
