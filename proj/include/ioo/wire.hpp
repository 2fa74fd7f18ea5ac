#pragma once

#include "ioo/errors.hpp"
#include "ioo/graph.hpp"
#include "ioo/objects.hpp"

#include <json.hpp>

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ioo::wire {

struct BundleObject {
    Identifier id;
    IooObject body;

    friend bool operator==(const BundleObject&, const BundleObject&) = default;
};

/// STIX 2.1 style bundle. Relationships travel as "relationship" objects in
/// the same objects array; unrecognized object types are kept verbatim.
struct Bundle {
    Identifier id;
    std::vector<BundleObject> objects;
    std::vector<Relationship> relationships;
    std::vector<nlohmann::json> unknown_passthrough;
    /// Only set on store snapshots; emitted as "x_ioo_store_version".
    std::optional<int> store_format_version;

    friend bool operator==(const Bundle&, const Bundle&) = default;
};

struct Diagnostic {
    Severity severity = Severity::Warning;
    std::string path;  // e.g. "objects[3].first_seen" or an object id
    std::string code;
    std::string message;

    friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

struct ParseDiagnostics {
    std::vector<Diagnostic> warnings;
    std::size_t skipped = 0;  // == unknown_passthrough.size()

    bool has_errors() const noexcept;
};

/// Diagnostic codes produced by the wire layer (in addition to validation
/// finding codes, which bundle_to_graph forwards).
namespace diag {
inline constexpr std::string_view kUnknownType = "unknown-type";
inline constexpr std::string_view kUnknownField = "unknown-field";
inline constexpr std::string_view kMalformedObject = "malformed-object";
inline constexpr std::string_view kDuplicateId = "duplicate-id";
inline constexpr std::string_view kDanglingEndpoint = "dangling-endpoint";
inline constexpr std::string_view kIllegalRelationship = "illegal-relationship";
inline constexpr std::string_view kDuplicateEdge = "duplicate-edge";
inline constexpr std::string_view kInvalidObject = "invalid-object";
}  // namespace diag

class SyntaxError : public Error {
public:
    SyntaxError(std::size_t position, const std::string& detail);
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

struct ParseResult {
    Bundle bundle;
    ParseDiagnostics diagnostics;
};

/// Decodes a UTF-8 JSON bundle. Malformed recognized objects are dropped with
/// an error diagnostic; only document-level problems throw (SyntaxError,
/// Error(NotABundle)).
ParseResult parse_bundle(std::string_view data);

/// Canonical bytes: objects sorted by id with sorted keys, absent optionals
/// and empty lists omitted, passthrough records last in original order,
/// two-space indentation, LF line endings, one trailing LF.
std::string emit_bundle(const Bundle& bundle);

/// Bundle of every object and edge. The bundle id is derived from content,
/// so equal graphs produce equal bundles.
Bundle graph_to_bundle(const KnowledgeGraph& graph);

struct GraphLoadResult {
    KnowledgeGraph graph;
    ParseDiagnostics diagnostics;
};

/// Objects first, then relationships; anything the graph refuses becomes a
/// diagnostic. Never throws for content problems.
GraphLoadResult bundle_to_graph(const Bundle& bundle,
                                const vocab::Registry& registry = vocab::Registry::builtin());

/// Merge a bundle into an existing graph (upsert by id).
struct MergeCounts {
    std::size_t inserted = 0;
    std::size_t updated = 0;
    std::size_t unchanged = 0;
    std::size_t skipped = 0;
};

struct MergeResult {
    MergeCounts objects;
    MergeCounts relationships;
    ParseDiagnostics diagnostics;
};

MergeResult merge_into(KnowledgeGraph& graph, const Bundle& bundle);

enum class ExportFormat { Triples, Viz };

/// "triples" or "viz"; throws Error(UnsupportedFormat).
ExportFormat export_format_from_string(std::string_view name);

/// triples: "<source-id> <kind> <target-id>\n" per edge, sorted.
/// viz: Graphviz DOT digraph, nodes labelled by kind, edges by relationship.
std::string export_graph(const KnowledgeGraph& graph, ExportFormat format);

// Single-object codec, exposed for tests and tools.
nlohmann::json encode_object(const Identifier& id, const IooObject& obj);
nlohmann::json encode_relationship(const Relationship& rel);

}  // namespace ioo::wire
