#include "ioo/wire.hpp"

#include "../support/generators.hpp"
#include "../support/roundtrip.hpp"

#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <sstream>

using namespace ioo;
using nlohmann::json;

namespace {

const char* const kActorCampaign = R"({
  "type": "bundle",
  "id": "bundle--6f9a1c52-1d2e-4c4e-9a36-0b2f3a4d5e60",
  "objects": [
    {"type": "threat-actor", "id": "threat-actor--9a3c7f0e-2b6d-4c1a-8e5f-1d2c3b4a5f60",
     "spec_version": "2.1", "created": "2024-01-01T00:00:00Z", "name": "APT-X",
     "sophistication": "advanced"},
    {"type": "campaign", "id": "campaign--1b2c3d4e-5f60-4a1b-9c2d-3e4f5a6b7c8d",
     "name": "Ballot Doubt", "first_seen": "2024-02-01T00:00:00Z"},
    {"type": "relationship", "id": "relationship--0a1b2c3d-4e5f-4a6b-8c7d-9e0f1a2b3c4d",
     "relationship_type": "attributed-to",
     "source_ref": "campaign--1b2c3d4e-5f60-4a1b-9c2d-3e4f5a6b7c8d",
     "target_ref": "threat-actor--9a3c7f0e-2b6d-4c1a-8e5f-1d2c3b4a5f60"}
  ]
})";

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string fixture() {
    return read_file(std::string(IOO_FIXTURE_DIR) + "/synthetic_campaign.json");
}

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an ioo::Error");
    return ErrorCode::NotFound;
}

bool has_diag(const std::vector<wire::Diagnostic>& ds, std::string_view code) {
    return std::any_of(ds.begin(), ds.end(), [&](const auto& d) { return d.code == code; });
}

json bundle_with(json objects) {
    return {{"type", "bundle"},
            {"id", "bundle--00000000-0000-4000-8000-000000000000"},
            {"objects", std::move(objects)}};
}

}  // namespace

TEST_CASE("parse_bundle: actor, campaign and attribution") {
    const auto r = wire::parse_bundle(kActorCampaign);
    CHECK(r.bundle.objects.size() == 2);
    CHECK(r.bundle.relationships.size() == 1);
    CHECK(r.diagnostics.warnings.empty());
    CHECK(r.diagnostics.skipped == 0);
    CHECK(r.bundle.relationships[0].kind == RelationshipKind::AttributedTo);
    const auto& actor = std::get<ThreatActor>(r.bundle.objects[0].body);
    CHECK(actor.name == "APT-X");
    CHECK(actor.sophistication == "advanced");
}

TEST_CASE("parse_bundle: empty bundle") {
    const auto r = wire::parse_bundle(
        R"({"type":"bundle","id":"bundle--00000000-0000-4000-8000-000000000000","objects":[]})");
    CHECK(r.bundle.objects.empty());
    CHECK(r.bundle.relationships.empty());
    CHECK(r.diagnostics.warnings.empty());
}

TEST_CASE("parse_bundle: unknown types pass through") {
    json malware = {{"type", "malware"},
                    {"id", "malware--00000000-0000-4000-8000-0000000000aa"},
                    {"name", "Loader"},
                    {"is_family", false}};
    const auto r = wire::parse_bundle(bundle_with({malware}).dump());
    CHECK(r.diagnostics.skipped == 1);
    REQUIRE(r.bundle.unknown_passthrough.size() == 1);
    CHECK(r.bundle.unknown_passthrough[0] == malware);
    CHECK(has_diag(r.diagnostics.warnings, wire::diag::kUnknownType));
    CHECK_FALSE(r.diagnostics.has_errors());
}

TEST_CASE("parse_bundle: document-level failures") {
    const std::string whole = kActorCampaign;
    for (std::size_t cut : {std::size_t{1}, whole.size() / 2, whole.size() - 2}) {
        try {
            wire::parse_bundle(whole.substr(0, cut));
            FAIL("expected SyntaxError");
        } catch (const wire::SyntaxError& e) {
            CHECK(e.code() == ErrorCode::SyntaxError);
            CHECK(e.position() <= cut + 1);
        }
    }
    CHECK(code_of([] { wire::parse_bundle(""); }) == ErrorCode::SyntaxError);
    CHECK(code_of([] { wire::parse_bundle("[]"); }) == ErrorCode::NotABundle);
    CHECK(code_of([] { wire::parse_bundle(R"({"objects":[]})"); }) == ErrorCode::NotABundle);
    CHECK(code_of([] {
              wire::parse_bundle(
                  R"({"type":"report","id":"bundle--00000000-0000-4000-8000-000000000000"})");
          }) == ErrorCode::NotABundle);
    CHECK(code_of([] {
              wire::parse_bundle(
                  R"({"type":"bundle","id":"bundle--00000000-0000-4000-8000-000000000000","objects":{}})");
          }) == ErrorCode::NotABundle);
}

TEST_CASE("parse_bundle: malformed objects are dropped, not fatal") {
    json good = {{"type", "narrative"},
                 {"id", "narrative--00000000-0000-4000-8000-000000000001"},
                 {"name", "N"}};
    json wrong_type = {{"type", "narrative"},
                       {"id", "narrative--00000000-0000-4000-8000-000000000002"},
                       {"name", 42}};
    json bad_time = {{"type", "incident"},
                     {"id", "incident--00000000-0000-4000-8000-000000000003"},
                     {"name", "I"},
                     {"first_seen", "yesterday"}};
    json no_id = {{"type", "event"}, {"name", "E"}};
    json mismatched = {{"type", "event"},
                       {"id", "narrative--00000000-0000-4000-8000-000000000004"},
                       {"name", "E"}};
    json dup = good;
    const auto r =
        wire::parse_bundle(bundle_with({good, wrong_type, bad_time, no_id, mismatched, dup}).dump());
    CHECK(r.bundle.objects.size() == 1);
    CHECK(r.diagnostics.has_errors());
    CHECK(has_diag(r.diagnostics.warnings, wire::diag::kMalformedObject));
    CHECK(has_diag(r.diagnostics.warnings, wire::diag::kDuplicateId));
}

TEST_CASE("parse_bundle: unknown fields warn, STIX common fields are quiet") {
    json obj = {{"type", "channel"},
                {"id", "channel--00000000-0000-4000-8000-000000000001"},
                {"name", "C"},
                {"created", "2024-01-01T00:00:00Z"},
                {"x_vendor_score", 3}};
    const auto r = wire::parse_bundle(bundle_with({obj}).dump());
    REQUIRE(r.bundle.objects.size() == 1);
    REQUIRE(r.diagnostics.warnings.size() == 1);
    CHECK(r.diagnostics.warnings[0].code == wire::diag::kUnknownField);
    CHECK(r.diagnostics.warnings[0].severity == Severity::Warning);
}

TEST_CASE("parse_bundle: DISARM id from external_references") {
    json ap = {{"type", "attack-pattern"},
               {"id", "attack-pattern--00000000-0000-4000-8000-000000000001"},
               {"name", "Flood"},
               {"external_references",
                {{{"source_name", "mitre-attack"}, {"external_id", "T1566"}},
                 {{"source_name", "DISARM"}, {"external_id", "T0049"}}}}};
    const auto r = wire::parse_bundle(bundle_with({ap}).dump());
    REQUIRE(r.bundle.objects.size() == 1);
    CHECK(std::get<AttackPattern>(r.bundle.objects[0].body).external_reference == "T0049");
}

TEST_CASE("every recognized field survives a decode") {
    testing::Rng rng(17);
    for (auto kind : kAllObjectKinds) {
        for (int i = 0; i < 30; ++i) {
            const auto id = testing::fresh_id(rng, kind);
            const auto obj = testing::random_object(rng, kind);
            const auto encoded = wire::encode_object(id, obj);
            const auto r = wire::parse_bundle(bundle_with({encoded}).dump());
            CHECK(r.diagnostics.warnings.empty());
            REQUIRE(r.bundle.objects.size() == 1);
            CHECK(r.bundle.objects[0].id == id);
            CHECK(r.bundle.objects[0].body == obj);
            for (const auto& [key, value] : encoded.items()) {
                CHECK_FALSE(value.is_null());
                if (value.is_array()) {
                    CHECK_FALSE(value.empty());
                }
            }
        }
    }
}

TEST_CASE("wire keys follow attribute names") {
    UserAccount u{"@handle"};
    u.account_created = Timestamp::parse("2024-01-01");
    u.icon = MediaReference{"https://example.org/a.png", "image/png", std::nullopt};
    const auto j = wire::encode_object(make_identifier("user-account"), u);
    CHECK(j.at("type") == "user-account");
    CHECK(j.at("display_name") == "@handle");
    CHECK(j.at("account_created") == "2024-01-01T00:00:00.000Z");
    CHECK(j.at("icon").at("mime_type") == "image/png");
    CHECK_FALSE(j.at("icon").contains("caption"));
    CHECK_FALSE(j.contains("followers"));
    CHECK_FALSE(j.contains("external_links"));

    Community k{"K"};
    k.community_type = "forum-group";
    CHECK(wire::encode_object(make_identifier("x-ioo-community"), k).at("community_type") ==
          "forum-group");
}

TEST_CASE("emit_bundle: canonical layout") {
    wire::Bundle empty;
    empty.id = Identifier("bundle", *Uuid::parse("00000000-0000-4000-8000-000000000000"));
    const auto bytes = wire::emit_bundle(empty);
    CHECK(bytes ==
          "{\n  \"id\": \"bundle--00000000-0000-4000-8000-000000000000\",\n  \"objects\": [],\n"
          "  \"type\": \"bundle\"\n}\n");
    CHECK(wire::emit_bundle(wire::parse_bundle(bytes).bundle) == bytes);

    const auto text = wire::emit_bundle(wire::parse_bundle(fixture()).bundle);
    CHECK(text.back() == '\n');
    CHECK(text.find("\r") == std::string::npos);
    CHECK(text.find("null") == std::string::npos);
    CHECK(text.find(" \n") == std::string::npos);
}

TEST_CASE("emit_bundle: input order does not matter") {
    testing::Rng rng(23);
    for (int round = 0; round < 50; ++round) {
        auto b = wire::graph_to_bundle(testing::random_graph(rng, 12, 12));
        const auto expected = wire::emit_bundle(b);
        std::shuffle(b.objects.begin(), b.objects.end(), rng);
        std::shuffle(b.relationships.begin(), b.relationships.end(), rng);
        CHECK(wire::emit_bundle(b) == expected);
    }
}

TEST_CASE("emit_bundle: passthrough last, original relative order") {
    auto parsed = wire::parse_bundle(fixture());
    json z = {{"type", "malware"}, {"id", "malware--00000000-0000-4000-8000-0000000000ff"}};
    json a = {{"type", "indicator"}, {"id", "indicator--00000000-0000-4000-8000-000000000001"}};
    parsed.bundle.unknown_passthrough = {z, a};
    const auto out = json::parse(wire::emit_bundle(parsed.bundle));
    const auto& objs = out.at("objects");
    CHECK(objs[objs.size() - 2] == z);
    CHECK(objs[objs.size() - 1] == a);
    const auto again = wire::parse_bundle(out.dump());
    CHECK(again.bundle.unknown_passthrough == parsed.bundle.unknown_passthrough);
}

TEST_CASE("graph_to_bundle preserves cardinality and is content-addressed") {
    KnowledgeGraph empty;
    const auto eb = wire::graph_to_bundle(empty);
    CHECK(eb.objects.empty());
    CHECK(eb.relationships.empty());
    CHECK(eb.id.type_name() == "bundle");

    testing::Rng rng(4);
    KnowledgeGraph g;
    std::vector<Identifier> channels;
    for (int i = 0; i < 5; ++i) {
        channels.push_back(testing::fresh_id(rng, ObjectKind::Channel));
        g.insert_object(channels.back(), Channel{"c" + std::to_string(i)});
    }
    for (int i = 0; i < 4; ++i) {
        Relationship r;
        r.id = testing::fresh_id(rng, kRelationshipTypeName);
        r.source = channels[static_cast<std::size_t>(i)];
        r.kind = RelationshipKind::Amplifies;
        r.target = channels[static_cast<std::size_t>(i + 1)];
        g.insert_relationship(r);
    }
    const auto b = wire::graph_to_bundle(g);
    CHECK(b.objects.size() == 5);
    CHECK(b.relationships.size() == 4);
    CHECK(wire::graph_to_bundle(g).id == b.id);
    CHECK_FALSE(b.id == eb.id);
}

TEST_CASE("graph round-trip and byte fixed point on random graphs") {
    testing::Rng rng(1);
    for (int round = 0; round < 200; ++round) {
        const auto g = testing::random_graph(rng, 50, 100);
        CHECK(testing::roundtrip_problem(g) == "");
    }
}

TEST_CASE("bundle_to_graph diagnostics") {
    const auto clean = wire::bundle_to_graph(wire::parse_bundle(fixture()).bundle);
    CHECK(clean.diagnostics.warnings.empty());
    CHECK(clean.graph.object_count() == 25);
    CHECK(clean.graph.edge_count() == 29);

    json loc = {{"type", "location"},
                {"id", "location--00000000-0000-4000-8000-000000000001"},
                {"name", "L"}};
    json nar = {{"type", "narrative"},
                {"id", "narrative--00000000-0000-4000-8000-000000000002"},
                {"name", "N"}};
    json illegal = {{"type", "relationship"},
                    {"id", "relationship--00000000-0000-4000-8000-000000000003"},
                    {"relationship_type", "amplifies"},
                    {"source_ref", loc["id"]},
                    {"target_ref", nar["id"]}};
    json dangling = {{"type", "relationship"},
                     {"id", "relationship--00000000-0000-4000-8000-000000000004"},
                     {"relationship_type", "located-at"},
                     {"source_ref", "event--00000000-0000-4000-8000-000000000009"},
                     {"target_ref", loc["id"]}};
    const auto parsed = wire::parse_bundle(bundle_with({loc, nar, illegal, dangling}).dump());
    const auto r = wire::bundle_to_graph(parsed.bundle);
    CHECK(r.graph.object_count() == 2);
    CHECK(r.graph.edge_count() == 0);
    CHECK(has_diag(r.diagnostics.warnings, wire::diag::kIllegalRelationship));
    CHECK(has_diag(r.diagnostics.warnings, wire::diag::kDanglingEndpoint));
    CHECK_FALSE(r.diagnostics.has_errors());
}

TEST_CASE("merge_into counts and idempotence") {
    const auto b = wire::parse_bundle(fixture()).bundle;
    KnowledgeGraph g;
    auto first = wire::merge_into(g, b);
    CHECK(first.objects.inserted == 25);
    CHECK(first.relationships.inserted == 29);
    const auto snapshot = g;
    auto second = wire::merge_into(g, b);
    CHECK(second.objects.unchanged == 25);
    CHECK(second.relationships.unchanged == 29);
    CHECK(g == snapshot);
}

TEST_CASE("export formats") {
    KnowledgeGraph empty;
    CHECK(wire::export_graph(empty, wire::ExportFormat::Triples).empty());

    KnowledgeGraph g;
    const auto a = Identifier::parse("channel--00000000-0000-4000-8000-00000000000a");
    const auto b = Identifier::parse("channel--00000000-0000-4000-8000-00000000000b");
    g.insert_object(a, Channel{"A"});
    g.insert_object(b, Channel{"B"});
    Relationship r;
    r.id = make_identifier("relationship");
    r.source = a;
    r.kind = RelationshipKind::Amplifies;
    r.target = b;
    g.insert_relationship(r);
    CHECK(wire::export_graph(g, wire::ExportFormat::Triples) ==
          a.to_string() + " amplifies " + b.to_string() + "\n");

    const auto viz = wire::export_graph(g, wire::ExportFormat::Viz);
    CHECK(viz.starts_with("digraph"));
    CHECK(viz.find("label=\"channel\"") != std::string::npos);
    CHECK(viz.find("label=\"amplifies\"") != std::string::npos);

    CHECK(wire::export_format_from_string("triples") == wire::ExportFormat::Triples);
    CHECK(wire::export_format_from_string("viz") == wire::ExportFormat::Viz);
    CHECK(code_of([] { wire::export_format_from_string("rdf"); }) ==
          ErrorCode::UnsupportedFormat);

    testing::Rng rng(12);
    for (int round = 0; round < 50; ++round) {
        const auto rg = testing::random_graph(rng, 20, 40);
        const auto text = wire::export_graph(rg, wire::ExportFormat::Triples);
        CHECK(static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')) ==
              rg.edge_count());
        std::vector<std::string> lines;
        std::istringstream in(text);
        for (std::string line; std::getline(in, line);) {
            lines.push_back(line);
        }
        CHECK(std::is_sorted(lines.begin(), lines.end()));
        CHECK(wire::export_graph(rg, wire::ExportFormat::Viz) ==
              wire::export_graph(rg, wire::ExportFormat::Viz));
    }
}
