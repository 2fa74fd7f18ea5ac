#include "ioo/cli.hpp"

#include "ioo/store.hpp"
#include "ioo/validation.hpp"
#include "ioo/wire.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

namespace ioo::cli {

namespace {

using nlohmann::json;

/// Carries an exit status out of a command body.
struct Exit {
    int status;
    std::string message;
};

enum class OutputMode { Text, Machine };

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Exit{kEnvironmentFailure, "cannot read " + path};
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) {
        throw Exit{kEnvironmentFailure, "error reading " + path};
    }
    return buf.str();
}

wire::ParseResult parse_file(const std::string& path) {
    const auto bytes = read_file(path);
    try {
        return wire::parse_bundle(bytes);
    } catch (const Error& e) {
        throw Exit{kEnvironmentFailure, path + ": " + e.what()};
    }
}

int environment_status(const Error& e) {
    switch (e.code()) {
    case ErrorCode::NotFound:
    case ErrorCode::WrongKind:
    case ErrorCode::MalformedIdentifier:
    case ErrorCode::UnknownTypeName:
    case ErrorCode::UnsupportedFormat:
        return kDomainFailure;
    default:
        return kEnvironmentFailure;
    }
}

json finding_json(const Finding& f, bool promoted) {
    json j = {{"severity", promoted ? "error" : std::string(to_string(f.severity))},
              {"code", f.code},
              {"message", f.message}};
    if (f.field) {
        j["field"] = *f.field;
    }
    if (promoted) {
        j["promoted"] = true;
    }
    return j;
}

json diagnostic_json(const wire::Diagnostic& d, bool promoted) {
    return {{"severity", promoted ? "error" : std::string(to_string(d.severity))},
            {"path", d.path},
            {"code", d.code},
            {"message", d.message}};
}

const vocab::Registry& registry_for(const std::optional<std::string>& vocab_path,
                                    std::optional<vocab::Registry>& storage) {
    if (!vocab_path) {
        return vocab::Registry::builtin();
    }
    try {
        storage = vocab::Registry::with_overrides_from_file(*vocab_path);
    } catch (const Error& e) {
        throw Exit{kEnvironmentFailure, e.what()};
    }
    return *storage;
}

// validate -----------------------------------------------------------------

struct ValidateOptions {
    std::vector<std::string> paths;
    bool strict = false;
    std::optional<std::string> vocab_path;
};

int cmd_validate(const ValidateOptions& opt, OutputMode mode, std::ostream& out) {
    std::optional<vocab::Registry> storage;
    const auto& registry = registry_for(opt.vocab_path, storage);

    // Read everything first so I/O and syntax failures win over findings.
    std::vector<wire::ParseResult> parsed;
    for (const auto& path : opt.paths) {
        parsed.push_back(parse_file(path));
    }
    std::set<Identifier> known_ids;
    for (const auto& p : parsed) {
        for (const auto& o : p.bundle.objects) {
            known_ids.insert(o.id);
        }
    }

    std::size_t errors = 0;
    std::size_t warnings = 0;
    auto tally = [&](Severity s) {
        if (s == Severity::Error || opt.strict) {
            ++errors;
        } else {
            ++warnings;
        }
    };

    json files = json::array();
    std::ostringstream text;
    for (std::size_t i = 0; i < parsed.size(); ++i) {
        const auto& bundle = parsed[i].bundle;
        std::map<Identifier, ValidationReport> reports;
        for (const auto& o : bundle.objects) {
            reports[o.id] = validate_object(o.body, o.id, registry);
        }
        for (const auto& r : bundle.relationships) {
            auto report = validate_relationship(r, *r.source.kind(), *r.target.kind());
            for (const auto* end : {&r.source, &r.target}) {
                if (!known_ids.contains(*end)) {
                    report.findings.push_back(
                        {Severity::Warning, std::string(wire::diag::kDanglingEndpoint),
                         "'" + end->to_string() + "' is not defined in the validated files",
                         end == &r.source ? "source_ref" : "target_ref"});
                }
            }
            reports[r.id] = std::move(report);
        }

        text << opt.paths[i] << ": " << bundle.objects.size() << " objects, "
             << bundle.relationships.size() << " relationships, "
             << bundle.unknown_passthrough.size() << " passthrough\n";

        json diagnostics = json::array();
        for (const auto& d : parsed[i].diagnostics.warnings) {
            tally(d.severity);
            const bool promoted = opt.strict && d.severity == Severity::Warning;
            diagnostics.push_back(diagnostic_json(d, promoted));
            text << "  " << (promoted ? "error" : to_string(d.severity)) << " " << d.path << " "
                 << d.code << ": " << d.message << "\n";
        }

        json subjects = json::array();
        for (const auto& [id, report] : reports) {
            json findings = json::array();
            for (const auto& f : report.findings) {
                tally(f.severity);
                const bool promoted = opt.strict && f.severity == Severity::Warning;
                findings.push_back(finding_json(f, promoted));
                text << "  " << (promoted ? "error" : to_string(f.severity)) << " "
                     << id.to_string() << (f.field ? "." + *f.field : "") << " " << f.code
                     << ": " << f.message << "\n";
            }
            auto verdict = report.verdict();
            if (opt.strict && verdict == Verdict::ValidWithWarnings) {
                verdict = Verdict::Invalid;
            }
            subjects.push_back(
                {{"id", id.to_string()}, {"verdict", to_string(verdict)}, {"findings", findings}});
        }
        files.push_back({{"path", opt.paths[i]},
                         {"subjects", std::move(subjects)},
                         {"diagnostics", std::move(diagnostics)},
                         {"passthrough", bundle.unknown_passthrough.size()}});
    }

    const int status = errors > 0 ? kDomainFailure : kSuccess;
    if (mode == OutputMode::Machine) {
        out << json{{"files", files},
                    {"errors", errors},
                    {"warnings", warnings},
                    {"strict", opt.strict},
                    {"status", status}}
                   .dump(2)
            << "\n";
    } else {
        out << text.str();
        out << (status == kSuccess ? "valid" : "invalid") << ": " << errors << " error(s), "
            << warnings << " warning(s)\n";
    }
    return status;
}

// ingest -------------------------------------------------------------------

int cmd_ingest(const std::vector<std::string>& paths, const std::filesystem::path& store_path,
               const std::optional<std::string>& vocab_path, OutputMode mode, std::ostream& out) {
    std::optional<vocab::Registry> storage;
    const auto& registry = registry_for(vocab_path, storage);

    wire::Bundle combined;
    std::vector<wire::Diagnostic> diagnostics;
    for (const auto& path : paths) {
        auto parsed = parse_file(path);
        for (auto& d : parsed.diagnostics.warnings) {
            d.path = path + ":" + d.path;
            diagnostics.push_back(std::move(d));
        }
        std::move(parsed.bundle.objects.begin(), parsed.bundle.objects.end(),
                  std::back_inserter(combined.objects));
        std::move(parsed.bundle.relationships.begin(), parsed.bundle.relationships.end(),
                  std::back_inserter(combined.relationships));
        std::move(parsed.bundle.unknown_passthrough.begin(),
                  parsed.bundle.unknown_passthrough.end(),
                  std::back_inserter(combined.unknown_passthrough));
    }

    std::optional<store::Lock> lock;
    try {
        lock.emplace(store_path);
    } catch (const Error& e) {
        throw Exit{kEnvironmentFailure, e.what()};
    }
    KnowledgeGraph graph(registry);
    try {
        graph = store::load(store_path, registry);
    } catch (const Error& e) {
        throw Exit{kEnvironmentFailure, store_path.string() + ": " + e.what()};
    }

    auto merged = wire::merge_into(graph, combined);
    for (auto& d : merged.diagnostics.warnings) {
        diagnostics.push_back(std::move(d));
    }
    try {
        store::save(store_path, graph);
    } catch (const Error& e) {
        throw Exit{kEnvironmentFailure, e.what()};
    }

    auto counts_json = [](const wire::MergeCounts& c) {
        return json{{"inserted", c.inserted},
                    {"updated", c.updated},
                    {"unchanged", c.unchanged},
                    {"skipped", c.skipped}};
    };
    if (mode == OutputMode::Machine) {
        json diags = json::array();
        for (const auto& d : diagnostics) {
            diags.push_back(diagnostic_json(d, false));
        }
        out << json{{"store", store_path.string()},
                    {"objects", counts_json(merged.objects)},
                    {"relationships", counts_json(merged.relationships)},
                    {"passthrough_dropped", combined.unknown_passthrough.size()},
                    {"diagnostics", diags}}
                   .dump(2)
            << "\n";
    } else {
        for (const auto& d : diagnostics) {
            out << to_string(d.severity) << " " << d.path << " " << d.code << ": " << d.message
                << "\n";
        }
        auto line = [&](std::string_view label, const wire::MergeCounts& c) {
            out << label << ": " << c.inserted << " inserted, " << c.updated << " updated, "
                << c.unchanged << " unchanged, " << c.skipped << " skipped\n";
        };
        line("objects", merged.objects);
        line("relationships", merged.relationships);
        if (!combined.unknown_passthrough.empty()) {
            out << "passthrough: " << combined.unknown_passthrough.size()
                << " unrecognized record(s) not stored\n";
        }
    }
    return kSuccess;
}

// query --------------------------------------------------------------------

struct QueryOptions {
    std::string name;
    std::string subject;
    std::string direction = "both";
    std::optional<std::string> kind;
    bool transitive = false;
};

json ids_json(const std::vector<Identifier>& ids) {
    json arr = json::array();
    for (const auto& id : ids) {
        arr.push_back(id.to_string());
    }
    return arr;
}

int cmd_query(const QueryOptions& opt, const std::filesystem::path& store_path, OutputMode mode,
              std::ostream& out) {
    static const std::set<std::string, std::less<>> kQueries = {
        "neighbors", "attribution", "targets", "amplification", "audience", "footprint"};
    if (!kQueries.contains(opt.name)) {
        throw Exit{kDomainFailure, "unknown query '" + opt.name +
                                       "' (neighbors, attribution, targets, amplification, "
                                       "audience, footprint)"};
    }
    Identifier subject;
    try {
        subject = Identifier::parse(opt.subject);
    } catch (const Error& e) {
        throw Exit{kDomainFailure, std::string("cannot parse subject id: ") + e.what()};
    }
    Direction direction = Direction::Both;
    if (opt.direction == "out") {
        direction = Direction::Out;
    } else if (opt.direction == "in") {
        direction = Direction::In;
    } else if (opt.direction != "both") {
        throw Exit{kDomainFailure, "direction must be out, in or both"};
    }
    std::optional<RelationshipKind> kind;
    if (opt.kind) {
        kind = relationship_kind_from_string(*opt.kind);
        if (!kind) {
            throw Exit{kDomainFailure, "unknown relationship kind '" + *opt.kind + "'"};
        }
    }

    KnowledgeGraph graph;
    try {
        graph = store::load(store_path);
    } catch (const Error& e) {
        throw Exit{kEnvironmentFailure, store_path.string() + ": " + e.what()};
    }

    json result;
    std::ostringstream text;
    auto list = [&](std::string_view label, const std::vector<Identifier>& ids) {
        for (const auto& id : ids) {
            text << label << id.to_string() << "\n";
        }
    };
    if (opt.name == "neighbors") {
        result = json::array();
        for (const auto& n : graph.neighbors(subject, direction, kind)) {
            const bool outgoing = n.edge.source == subject;
            result.push_back({{"edge", n.edge.id.to_string()},
                              {"kind", to_string(n.edge.kind)},
                              {"direction", outgoing ? "out" : "in"},
                              {"other", n.other.to_string()}});
            text << n.edge.id.to_string() << " " << (outgoing ? "-" : "<-")
                 << to_string(n.edge.kind) << (outgoing ? "-> " : "- ") << n.other.to_string()
                 << "\n";
        }
    } else if (opt.name == "attribution") {
        const auto ids = graph.attribution_of(subject);
        result = ids_json(ids);
        list("", ids);
    } else if (opt.name == "targets") {
        const auto ids = graph.targets_of(subject, opt.transitive);
        result = ids_json(ids);
        list("", ids);
    } else if (opt.name == "amplification") {
        const auto ids = graph.amplification_closure(subject);
        result = ids_json(ids);
        list("", ids);
    } else if (opt.name == "audience") {
        const auto a = graph.audience_of(subject);
        result = {{"communities", ids_json(a.communities)}, {"personas", ids_json(a.personas)}};
        list("community ", a.communities);
        list("persona ", a.personas);
    } else {
        const auto f = graph.footprint_of(subject);
        result = {{"accounts", ids_json(f.accounts)}, {"messages", ids_json(f.messages)}};
        list("account ", f.accounts);
        list("message ", f.messages);
    }

    if (mode == OutputMode::Machine) {
        out << json{{"query", opt.name}, {"subject", subject.to_string()}, {"result", result}}
                   .dump(2)
            << "\n";
    } else {
        out << text.str();
    }
    return kSuccess;
}

// export -------------------------------------------------------------------

int cmd_export(const std::filesystem::path& store_path, const std::string& format_name,
               const std::optional<std::string>& out_path, std::ostream& out) {
    wire::ExportFormat format{};
    try {
        format = wire::export_format_from_string(format_name);
    } catch (const Error& e) {
        throw Exit{kDomainFailure, e.what()};
    }
    KnowledgeGraph graph;
    try {
        graph = store::load(store_path);
    } catch (const Error& e) {
        throw Exit{kEnvironmentFailure, store_path.string() + ": " + e.what()};
    }
    const auto bytes = wire::export_graph(graph, format);
    if (!out_path) {
        out << bytes;
        return kSuccess;
    }
    std::ofstream file(*out_path, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw Exit{kEnvironmentFailure, "cannot write " + *out_path};
    }
    file << bytes;
    file.flush();
    if (!file) {
        throw Exit{kEnvironmentFailure, "short write to " + *out_path};
    }
    return kSuccess;
}

// stats --------------------------------------------------------------------

int cmd_stats(const std::filesystem::path& store_path, OutputMode mode, std::ostream& out) {
    KnowledgeGraph graph;
    try {
        graph = store::load(store_path);
    } catch (const Error& e) {
        throw Exit{kEnvironmentFailure, store_path.string() + ": " + e.what()};
    }
    const auto s = graph.stats();
    if (mode == OutputMode::Machine) {
        json objects = json::object();
        json edges = json::object();
        for (auto k : kAllObjectKinds) {
            objects[std::string(kind_name(k))] = s.objects_by_kind.at(k);
        }
        for (auto k : kAllRelationshipKinds) {
            edges[std::string(to_string(k))] = s.edges_by_kind.at(k);
        }
        out << json{{"objects", objects},
                    {"relationships", edges},
                    {"total_objects", s.total_objects},
                    {"total_relationships", s.total_edges}}
                   .dump(2)
            << "\n";
        return kSuccess;
    }
    auto row = [&](std::string_view section, std::string_view name, std::size_t n) {
        out << std::left << std::setw(14) << section << std::setw(22) << name << std::right
            << std::setw(8) << n << "\n";
    };
    out << std::left << std::setw(14) << "section" << std::setw(22) << "kind" << std::right
        << std::setw(8) << "count" << "\n";
    for (auto k : kAllObjectKinds) {
        row("object", kind_name(k), s.objects_by_kind.at(k));
    }
    for (auto k : kAllRelationshipKinds) {
        row("relationship", to_string(k), s.edges_by_kind.at(k));
    }
    row("total", "objects", s.total_objects);
    row("total", "relationships", s.total_edges);
    return kSuccess;
}

OutputMode output_mode(const std::string& value) {
    return value == "machine" ? OutputMode::Machine : OutputMode::Text;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const Environment& env) {
    CLI::App app{"Influence operation ontology toolkit: validate, ingest, query and export "
                 "STIX-compatible bundles"};
    app.name("ioo");
    app.require_subcommand(1);

    std::optional<std::string> store_flag;
    std::string output = "text";
    std::optional<std::string> vocab_path;

    auto add_store = [&](CLI::App* sub) {
        sub->add_option("--store", store_flag,
                        std::string("store snapshot path (default: $") + store::kStoreEnvVar +
                            " or " + store::kDefaultStorePath + ")");
    };
    auto add_output = [&](CLI::App* sub) {
        sub->add_option("--output", output, "text or machine (JSON)")
            ->check(CLI::IsMember({"text", "machine"}));
    };

    ValidateOptions vopt;
    auto* validate = app.add_subcommand("validate", "check bundles against the ontology");
    validate->add_option("paths", vopt.paths, "bundle files")->required();
    validate->add_flag("--strict", vopt.strict, "treat warnings as errors");
    validate->add_option("--vocab", vocab_path, "vocabulary override file (JSON)");
    add_output(validate);

    std::vector<std::string> ingest_paths;
    auto* ingest = app.add_subcommand("ingest", "merge bundles into the store (upsert by id)");
    ingest->add_option("paths", ingest_paths, "bundle files")->required();
    ingest->add_option("--vocab", vocab_path, "vocabulary override file (JSON)");
    add_store(ingest);
    add_output(ingest);

    QueryOptions qopt;
    auto* query = app.add_subcommand("query", "run an analyst query against the store");
    query->add_option("query", qopt.name,
                      "neighbors | attribution | targets | amplification | audience | footprint")
        ->required();
    query->add_option("subject", qopt.subject, "subject identifier")->required();
    query->add_option("--direction", qopt.direction, "neighbors: out, in or both");
    query->add_option("--kind", qopt.kind, "neighbors: relationship kind filter");
    query->add_flag("--transitive", qopt.transitive, "targets: include owned campaigns/incidents");
    add_store(query);
    add_output(query);

    std::string format = "triples";
    std::optional<std::string> out_path;
    auto* exp = app.add_subcommand("export", "export the store as triples or Graphviz DOT");
    exp->add_option("--format", format, "triples or viz");
    exp->add_option("--out", out_path, "output file (default: stdout)");
    add_store(exp);

    auto* stats = app.add_subcommand("stats", "count objects and relationships per kind");
    add_store(stats);
    add_output(stats);

    std::vector<std::string> argv_storage;
    argv_storage.reserve(args.size() + 1);
    argv_storage.push_back("ioo");
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : argv_storage) {
        argv.push_back(a.c_str());
    }

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << "ioo: " << e.what() << "\n";
        return kEnvironmentFailure;
    }

    const auto store_path = store::resolve_store_path(store_flag, env.store_path);
    const auto mode = output_mode(output);
    try {
        if (*validate) {
            return cmd_validate({vopt.paths, vopt.strict, vocab_path}, mode, out);
        }
        if (*ingest) {
            return cmd_ingest(ingest_paths, store_path, vocab_path, mode, out);
        }
        if (*query) {
            return cmd_query(qopt, store_path, mode, out);
        }
        if (*exp) {
            return cmd_export(store_path, format, out_path, out);
        }
        if (*stats) {
            return cmd_stats(store_path, mode, out);
        }
    } catch (const Exit& e) {
        err << "ioo: " << e.message << "\n";
        return e.status;
    } catch (const Error& e) {
        err << "ioo: " << e.what() << "\n";
        return environment_status(e);
    } catch (const std::exception& e) {
        err << "ioo: " << e.what() << "\n";
        return kEnvironmentFailure;
    }
    return kEnvironmentFailure;
}

}  // namespace ioo::cli
