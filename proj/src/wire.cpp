#include "ioo/wire.hpp"

#include "wire_codec.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <utility>

namespace ioo::wire {

namespace {

using nlohmann::json;
using detail::DecodeError;

// STIX common properties we accept without modelling them.
const std::set<std::string, std::less<>> kIgnoredCommonKeys = {
    "spec_version", "created",        "modified",          "created_by_ref",
    "revoked",      "labels",         "confidence",        "lang",
    "external_references", "object_marking_refs", "granular_markings", "extensions",
};

const std::set<std::string, std::less<>> kFramingKeys = {"type", "id"};

const std::set<std::string, std::less<>> kRelationshipKeys = {
    "type", "id", "relationship_type", "source_ref", "target_ref",
    "start_time", "stop_time", "description",
};

std::string at_path(std::size_t index, std::string_view field = {}) {
    std::string p = "objects[" + std::to_string(index) + "]";
    if (!field.empty()) {
        p += ".";
        p += field;
    }
    return p;
}

class Reader {
public:
    explicit Reader(ParseResult& result) : result_(result) {}

    void read_objects(const json& objects) {
        for (std::size_t i = 0; i < objects.size(); ++i) {
            read_one(i, objects[i]);
        }
        result_.diagnostics.skipped = result_.bundle.unknown_passthrough.size();
    }

private:
    void warn(std::string path, std::string_view code, std::string message) {
        result_.diagnostics.warnings.push_back(
            {Severity::Warning, std::move(path), std::string(code), std::move(message)});
    }

    void fail(std::string path, std::string_view code, std::string message) {
        result_.diagnostics.warnings.push_back(
            {Severity::Error, std::move(path), std::string(code), std::move(message)});
    }

    void passthrough(std::size_t index, const json& record, std::string_view code,
                     std::string message) {
        warn(at_path(index), code, std::move(message));
        result_.bundle.unknown_passthrough.push_back(record);
    }

    void read_one(std::size_t index, const json& record) {
        if (!record.is_object()) {
            fail(at_path(index), diag::kMalformedObject, "bundle entry is not a JSON object");
            return;
        }
        auto type_it = record.find("type");
        if (type_it == record.end() || !type_it->is_string()) {
            fail(at_path(index), diag::kMalformedObject, "object has no string 'type'");
            return;
        }
        const auto& type_name = type_it->get_ref<const std::string&>();
        if (type_name == kRelationshipTypeName) {
            read_relationship(index, record);
            return;
        }
        const auto kind = kind_from_type_name(type_name);
        if (!kind) {
            passthrough(index, record, diag::kUnknownType,
                        "type '" + type_name + "' is not part of the ontology; kept verbatim");
            return;
        }
        auto id = read_id(index, record, type_name);
        if (!id) {
            return;
        }
        try {
            auto obj = decode_object(*kind, index, record);
            if (claim(index, *id)) {
                result_.bundle.objects.push_back({std::move(*id), std::move(obj)});
            }
        } catch (const DecodeError& e) {
            fail(at_path(index, e.field), diag::kMalformedObject,
                 id->to_string() + ": " + e.message);
        }
    }

    std::optional<Identifier> read_id(std::size_t index, const json& record,
                                      std::string_view type_name) {
        auto it = record.find("id");
        if (it == record.end() || !it->is_string()) {
            fail(at_path(index, "id"), diag::kMalformedObject, "object has no string 'id'");
            return std::nullopt;
        }
        try {
            auto id = Identifier::parse(it->get_ref<const std::string&>());
            if (id.type_name() != type_name) {
                fail(at_path(index, "id"), diag::kMalformedObject,
                     "id '" + id.to_string() + "' does not match type '" +
                         std::string(type_name) + "'");
                return std::nullopt;
            }
            return id;
        } catch (const Error& e) {
            fail(at_path(index, "id"), diag::kMalformedObject, e.what());
            return std::nullopt;
        }
    }

    bool claim(std::size_t index, const Identifier& id) {
        if (!seen_.insert(id).second) {
            fail(at_path(index, "id"), diag::kDuplicateId,
                 "id '" + id.to_string() + "' already appeared in this bundle; dropped");
            return false;
        }
        return true;
    }

    template <typename T>
    T decode_as(std::size_t index, const json& record) {
        T obj{};
        std::set<std::string, std::less<>> known(kFramingKeys);
        detail::fields(obj, [&](std::string_view key, auto& member) {
            known.emplace(key);
            auto it = record.find(std::string(key));
            if (it != record.end() && !it->is_null()) {
                detail::decode_field(*it, key, member);
            }
        });
        if constexpr (std::is_same_v<T, AttackPattern>) {
            if (!obj.external_reference) {
                obj.external_reference = disarm_reference(record);
            }
        }
        report_unknown_keys(index, record, known);
        return obj;
    }

    /// DISARM technique id from a STIX external_references list, if any.
    static std::optional<std::string> disarm_reference(const json& record) {
        auto it = record.find("external_references");
        if (it == record.end() || !it->is_array()) {
            return std::nullopt;
        }
        for (const auto& ref : *it) {
            if (!ref.is_object()) {
                continue;
            }
            auto source = ref.find("source_name");
            auto ext = ref.find("external_id");
            if (source != ref.end() && source->is_string() && ext != ref.end() &&
                ext->is_string()) {
                auto name = source->get<std::string>();
                std::transform(name.begin(), name.end(), name.begin(),
                               [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
                if (name == "disarm") {
                    return ext->get<std::string>();
                }
            }
        }
        return std::nullopt;
    }

    void report_unknown_keys(std::size_t index, const json& record,
                             const std::set<std::string, std::less<>>& known) {
        for (const auto& [key, value] : record.items()) {
            if (!known.contains(key) && !kIgnoredCommonKeys.contains(key)) {
                warn(at_path(index, key), diag::kUnknownField,
                     "field '" + key + "' is not an attribute of this type; ignored");
            }
        }
    }

    IooObject decode_object(ObjectKind kind, std::size_t index, const json& record) {
        switch (kind) {
        case ObjectKind::Incident: return decode_as<Incident>(index, record);
        case ObjectKind::AttackPattern: return decode_as<AttackPattern>(index, record);
        case ObjectKind::Campaign: return decode_as<Campaign>(index, record);
        case ObjectKind::ThreatActor: return decode_as<ThreatActor>(index, record);
        case ObjectKind::UserAccount: return decode_as<UserAccount>(index, record);
        case ObjectKind::Channel: return decode_as<Channel>(index, record);
        case ObjectKind::Message: return decode_as<Message>(index, record);
        case ObjectKind::CyberPersona: return decode_as<CyberPersona>(index, record);
        case ObjectKind::Community: return decode_as<Community>(index, record);
        case ObjectKind::Narrative: return decode_as<Narrative>(index, record);
        case ObjectKind::Event: return decode_as<Event>(index, record);
        case ObjectKind::Location: return decode_as<Location>(index, record);
        }
        throw DecodeError{"type", "unhandled kind"};
    }

    static std::string required_string(const json& record, std::string_view key) {
        auto it = record.find(std::string(key));
        if (it == record.end() || !it->is_string()) {
            throw DecodeError{std::string(key), "relationship needs a string '" +
                                                    std::string(key) + "'"};
        }
        return it->get<std::string>();
    }

    static Identifier ref(const json& record, std::string_view key) {
        const auto text = required_string(record, key);
        try {
            return Identifier::parse(text);
        } catch (const Error& e) {
            // Unknown prefixes are handled by the caller; only shape errors land here.
            if (e.code() == ErrorCode::UnknownTypeName) {
                throw;
            }
            throw DecodeError{std::string(key), e.what()};
        }
    }

    void read_relationship(std::size_t index, const json& record) {
        auto id = read_id(index, record, kRelationshipTypeName);
        if (!id) {
            return;
        }
        try {
            const auto kind_text = required_string(record, "relationship_type");
            const auto kind = relationship_kind_from_string(kind_text);
            std::optional<Identifier> source;
            std::optional<Identifier> target;
            try {
                source = ref(record, "source_ref");
                target = ref(record, "target_ref");
            } catch (const Error&) {
                passthrough(index, record, diag::kUnknownType,
                            id->to_string() + " connects objects outside the ontology; kept verbatim");
                return;
            }
            if (!kind || !source->kind() || !target->kind()) {
                passthrough(index, record, diag::kUnknownType,
                            id->to_string() + " ('" + kind_text + "' between " +
                                source->type_name() + " and " + target->type_name() +
                                ") is not an ontology relationship; kept verbatim");
                return;
            }
            Relationship rel;
            rel.id = *id;
            rel.kind = *kind;
            rel.source = std::move(*source);
            rel.target = std::move(*target);
            auto field = [&](std::string_view key, auto& member) {
                auto it = record.find(std::string(key));
                if (it != record.end() && !it->is_null()) {
                    detail::decode_field(*it, key, member);
                }
            };
            field("start_time", rel.start_time);
            field("stop_time", rel.stop_time);
            field("description", rel.description);
            report_unknown_keys(index, record, kRelationshipKeys);
            if (claim(index, rel.id)) {
                result_.bundle.relationships.push_back(std::move(rel));
            }
        } catch (const DecodeError& e) {
            fail(at_path(index, e.field), diag::kMalformedObject,
                 id->to_string() + ": " + e.message);
        }
    }

    ParseResult& result_;
    std::set<Identifier> seen_;
};

json objects_array(const Bundle& bundle) {
    std::vector<std::pair<Identifier, json>> recognized;
    recognized.reserve(bundle.objects.size() + bundle.relationships.size());
    for (const auto& o : bundle.objects) {
        recognized.emplace_back(o.id, encode_object(o.id, o.body));
    }
    for (const auto& r : bundle.relationships) {
        recognized.emplace_back(r.id, encode_relationship(r));
    }
    std::stable_sort(recognized.begin(), recognized.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    auto arr = json::array();
    for (auto& [id, j] : recognized) {
        arr.push_back(std::move(j));
    }
    for (const auto& p : bundle.unknown_passthrough) {
        arr.push_back(p);
    }
    return arr;
}

std::string dump(const json& j) {
    return j.dump(2, ' ', false, json::error_handler_t::strict) + "\n";
}

}  // namespace

bool ParseDiagnostics::has_errors() const noexcept {
    return std::any_of(warnings.begin(), warnings.end(),
                       [](const Diagnostic& d) { return d.severity == Severity::Error; });
}

SyntaxError::SyntaxError(std::size_t position, const std::string& detail)
    : Error(ErrorCode::SyntaxError,
            "JSON syntax error at byte " + std::to_string(position) + ": " + detail),
      position_(position) {}

json encode_object(const Identifier& id, const IooObject& obj) {
    auto out = json::object();
    out["type"] = id.type_name();
    out["id"] = id.to_string();
    out["spec_version"] = "2.1";
    std::visit(
        [&](const auto& o) {
            detail::fields(o, [&](std::string_view key, const auto& member) {
                detail::encode_field(out, key, member);
            });
        },
        obj);
    return out;
}

json encode_relationship(const Relationship& rel) {
    auto out = json::object();
    out["type"] = kRelationshipTypeName;
    out["id"] = rel.id.to_string();
    out["spec_version"] = "2.1";
    out["relationship_type"] = to_string(rel.kind);
    out["source_ref"] = rel.source.to_string();
    out["target_ref"] = rel.target.to_string();
    detail::encode_field(out, "start_time", rel.start_time);
    detail::encode_field(out, "stop_time", rel.stop_time);
    detail::encode_field(out, "description", rel.description);
    return out;
}

ParseResult parse_bundle(std::string_view data) {
    json doc;
    try {
        doc = json::parse(data.begin(), data.end());
    } catch (const json::parse_error& e) {
        throw SyntaxError(e.byte, e.what());
    }
    if (!doc.is_object()) {
        throw Error(ErrorCode::NotABundle, "top-level JSON value is not an object");
    }
    auto type_it = doc.find("type");
    if (type_it == doc.end() || *type_it != kBundleTypeName) {
        throw Error(ErrorCode::NotABundle, "document lacks \"type\": \"bundle\"");
    }
    auto id_it = doc.find("id");
    if (id_it == doc.end() || !id_it->is_string()) {
        throw Error(ErrorCode::NotABundle, "bundle has no string 'id'");
    }

    ParseResult result;
    try {
        result.bundle.id = Identifier::parse(id_it->get_ref<const std::string&>());
    } catch (const Error& e) {
        throw Error(ErrorCode::NotABundle, std::string("bundle id: ") + e.what());
    }
    if (result.bundle.id.type_name() != kBundleTypeName) {
        throw Error(ErrorCode::NotABundle, "bundle id must start with 'bundle--'");
    }

    for (const auto& [key, value] : doc.items()) {
        if (key == "x_ioo_store_version") {
            if (!value.is_number_integer()) {
                throw Error(ErrorCode::NotABundle, "x_ioo_store_version must be an integer");
            }
            result.bundle.store_format_version = value.get<int>();
        } else if (key != "type" && key != "id" && key != "objects" && key != "spec_version") {
            result.diagnostics.warnings.push_back({Severity::Warning, key, std::string(diag::kUnknownField),
                                                   "bundle property '" + key + "' ignored"});
        }
    }

    auto objects_it = doc.find("objects");
    if (objects_it != doc.end()) {
        if (!objects_it->is_array()) {
            throw Error(ErrorCode::NotABundle, "bundle 'objects' is not an array");
        }
        Reader(result).read_objects(*objects_it);
    }
    return result;
}

std::string emit_bundle(const Bundle& bundle) {
    auto doc = json::object();
    doc["type"] = kBundleTypeName;
    doc["id"] = bundle.id.to_string();
    doc["objects"] = objects_array(bundle);
    if (bundle.store_format_version) {
        doc["x_ioo_store_version"] = *bundle.store_format_version;
    }
    return dump(doc);
}

Bundle graph_to_bundle(const KnowledgeGraph& graph) {
    Bundle b;
    for (const auto& [id, obj] : graph.objects()) {
        b.objects.push_back({id, obj});
    }
    for (const auto& [id, rel] : graph.edges()) {
        b.relationships.push_back(rel);
    }
    b.id = Identifier(kBundleTypeName, Uuid::from_content(objects_array(b).dump()));
    return b;
}

MergeResult merge_into(KnowledgeGraph& graph, const Bundle& bundle) {
    MergeResult result;
    auto note = [&](Severity sev, std::string path, std::string_view code, std::string msg) {
        result.diagnostics.warnings.push_back(
            {sev, std::move(path), std::string(code), std::move(msg)});
    };
    auto count = [](MergeCounts& c, InsertOutcome outcome) {
        switch (outcome) {
        case InsertOutcome::Inserted: ++c.inserted; break;
        case InsertOutcome::Updated: ++c.updated; break;
        case InsertOutcome::Unchanged: ++c.unchanged; break;
        }
    };
    auto forward = [&](const Identifier& id, const std::vector<Finding>& findings) {
        for (const auto& f : findings) {
            note(f.severity, id.to_string() + (f.field ? "." + *f.field : ""), f.code, f.message);
        }
    };

    for (const auto& o : bundle.objects) {
        try {
            auto r = graph.insert_object(o.id, o.body);
            count(result.objects, r.outcome);
            forward(o.id, r.warnings);
        } catch (const InvalidObjectError& e) {
            ++result.objects.skipped;
            note(Severity::Warning, o.id.to_string(), diag::kInvalidObject, e.what());
            forward(o.id, e.report().findings);
        } catch (const Error& e) {
            ++result.objects.skipped;
            note(Severity::Warning, o.id.to_string(), to_string(e.code()), e.what());
        }
    }
    for (const auto& r : bundle.relationships) {
        try {
            auto res = graph.insert_relationship(r);
            count(result.relationships, res.outcome);
            forward(r.id, res.warnings);
        } catch (const DanglingEndpointError& e) {
            ++result.relationships.skipped;
            note(Severity::Warning, r.id.to_string(), diag::kDanglingEndpoint, e.what());
        } catch (const IllegalRelationshipError& e) {
            ++result.relationships.skipped;
            note(Severity::Warning, r.id.to_string(), diag::kIllegalRelationship, e.what());
        } catch (const Error& e) {
            ++result.relationships.skipped;
            note(Severity::Warning, r.id.to_string(), to_string(e.code()), e.what());
        }
    }
    result.diagnostics.skipped = bundle.unknown_passthrough.size();
    return result;
}

GraphLoadResult bundle_to_graph(const Bundle& bundle, const vocab::Registry& registry) {
    GraphLoadResult out{KnowledgeGraph(registry), {}};
    out.diagnostics = merge_into(out.graph, bundle).diagnostics;
    return out;
}

ExportFormat export_format_from_string(std::string_view name) {
    if (name == "triples") {
        return ExportFormat::Triples;
    }
    if (name == "viz") {
        return ExportFormat::Viz;
    }
    throw Error(ErrorCode::UnsupportedFormat,
                "unsupported export format '" + std::string(name) + "' (use triples or viz)");
}

std::string export_graph(const KnowledgeGraph& graph, ExportFormat format) {
    std::vector<std::string> lines;
    lines.reserve(graph.edge_count());
    if (format == ExportFormat::Triples) {
        for (const auto& [id, e] : graph.edges()) {
            lines.push_back(e.source.to_string() + " " + std::string(to_string(e.kind)) + " " +
                            e.target.to_string() + "\n");
        }
        std::sort(lines.begin(), lines.end());
        std::string out;
        for (const auto& l : lines) {
            out += l;
        }
        return out;
    }

    std::ostringstream out;
    out << "digraph ioo {\n";
    for (const auto& [id, obj] : graph.objects()) {
        out << "  \"" << id.to_string() << "\" [label=\"" << kind_name(kind_of(obj)) << "\"];\n";
    }
    for (const auto& [id, e] : graph.edges()) {
        lines.push_back("  \"" + e.source.to_string() + "\" -> \"" + e.target.to_string() +
                        "\" [label=\"" + std::string(to_string(e.kind)) + "\"];\n");
    }
    std::sort(lines.begin(), lines.end());
    for (const auto& l : lines) {
        out << l;
    }
    out << "}\n";
    return out.str();
}

}  // namespace ioo::wire
