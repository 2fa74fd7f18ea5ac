#include "ioo/graph.hpp"

#include "../support/churn.hpp"
#include "../support/generators.hpp"
#include "../support/oracles.hpp"

#include <doctest.h>

using namespace ioo;
using testing::fresh_id;

namespace {

struct Fixture {
    testing::Rng rng{42};
    KnowledgeGraph g;

    template <typename T>
    Identifier add(T obj) {
        const auto id = fresh_id(rng, kind_of(IooObject{obj}));
        g.insert_object(id, std::move(obj));
        return id;
    }

    Identifier link(const Identifier& s, RelationshipKind k, const Identifier& t) {
        Relationship r;
        r.id = fresh_id(rng, kRelationshipTypeName);
        r.source = s;
        r.kind = k;
        r.target = t;
        g.insert_relationship(r);
        return r.id;
    }
};

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an ioo::Error");
    return ErrorCode::NotFound;
}

using R = RelationshipKind;

}  // namespace

TEST_CASE("insert_object") {
    Fixture f;
    const auto id = make_identifier("narrative");
    const Narrative n{"The elections are rigged"};
    CHECK(f.g.insert_object(id, n).outcome == InsertOutcome::Inserted);
    CHECK(f.g.object_count() == 1);
    const auto once = f.g;
    CHECK(f.g.insert_object(id, n).outcome == InsertOutcome::Unchanged);
    CHECK(f.g == once);

    Narrative changed = n;
    changed.description = "variant";
    CHECK(f.g.insert_object(id, changed).outcome == InsertOutcome::Updated);
    CHECK(std::get<Narrative>(*f.g.find(id)) == changed);
    CHECK(f.g.object_count() == 1);

    try {
        f.g.insert_object(make_identifier("incident"), Incident{""});
        FAIL("expected InvalidObjectError");
    } catch (const InvalidObjectError& e) {
        CHECK(e.code() == ErrorCode::InvalidObject);
        CHECK(e.report().findings.at(0).code == finding::kMissingMandatoryField);
    }
    CHECK(code_of([&] { f.g.insert_object(make_identifier("event"), Narrative{"x"}); }) ==
          ErrorCode::TypeNameMismatch);
    CHECK(f.g.object_count() == 1);
}

TEST_CASE("insert_relationship") {
    Fixture f;
    const auto a = f.add(Channel{"A"});
    const auto b = f.add(Channel{"B"});
    const auto e = f.link(a, R::Amplifies, b);
    CHECK(f.g.find_edge(e) != nullptr);

    const auto c = f.add(Campaign{"C"});
    Relationship dangling;
    dangling.id = make_identifier("relationship");
    dangling.source = c;
    dangling.kind = R::AttributedTo;
    dangling.target = make_identifier("threat-actor");
    try {
        f.g.insert_relationship(dangling);
        FAIL("expected DanglingEndpointError");
    } catch (const DanglingEndpointError& err) {
        CHECK(err.side() == EdgeEnd::Target);
        CHECK(err.code() == ErrorCode::DanglingEndpoint);
    }
    std::swap(dangling.source, dangling.target);
    try {
        f.g.insert_relationship(dangling);
        FAIL("expected DanglingEndpointError");
    } catch (const DanglingEndpointError& err) {
        CHECK(err.side() == EdgeEnd::Source);
    }

    const auto k = f.add(Community{"K"});
    const auto m = f.add(Message{"M"});
    CHECK(code_of([&] { f.link(k, R::Publishes, m); }) == ErrorCode::IllegalRelationship);
    try {
        f.link(k, R::Publishes, m);
    } catch (const IllegalRelationshipError& err) {
        CHECK(err.report().has_errors());
    }

    Relationship generic;
    generic.id = make_identifier("relationship");
    generic.source = k;
    generic.kind = R::RelatedTo;
    generic.target = m;
    const auto res = f.g.insert_relationship(generic);
    CHECK(res.outcome == InsertOutcome::Inserted);
    REQUIRE(res.warnings.size() == 1);
    CHECK(res.warnings[0].code == finding::kGenericRelationship);
    CHECK(f.g.insert_relationship(generic).outcome == InsertOutcome::Unchanged);

    // same triple and window under a different id
    Relationship twin = *f.g.find_edge(e);
    twin.id = make_identifier("relationship");
    CHECK(code_of([&] { f.g.insert_relationship(twin); }) == ErrorCode::DuplicateEdge);
    // a different window is a different assertion
    twin.start_time = Timestamp::parse("2024-01-01");
    CHECK(f.g.insert_relationship(twin).outcome == InsertOutcome::Inserted);
    CHECK(f.g.edge_count() == 3);
}

TEST_CASE("remove_object") {
    Fixture f;
    const auto lonely = f.add(Event{"E"});
    CHECK(f.g.remove_object(lonely, false) == 0);
    CHECK_FALSE(f.g.contains(lonely));
    CHECK(code_of([&] { f.g.remove_object(lonely, false); }) == ErrorCode::NotFound);

    const auto p = f.add(CyberPersona{"P"});
    const auto u1 = f.add(UserAccount{"u1"});
    const auto u2 = f.add(UserAccount{"u2"});
    const auto n = f.add(Narrative{"N"});
    const auto k = f.add(Community{"K"});
    f.link(u1, R::BelongsTo, p);
    f.link(u2, R::BelongsTo, p);
    f.link(p, R::Supports, n);
    f.link(k, R::Has, n);
    CHECK(code_of([&] { f.g.remove_object(p, false); }) == ErrorCode::WouldDangle);
    CHECK(f.g.contains(p));
    CHECK(f.g.edge_count() == 4);

    const auto before = testing::scan_degree(f.g, p);
    CHECK(before == 3);
    CHECK(f.g.remove_object(p, true) == 3);
    CHECK(f.g.edge_count() == 1);
    CHECK(testing::no_dangling_edges(f.g));
    CHECK(testing::integrity_problem(f.g).empty());
}

TEST_CASE("remove_relationship") {
    Fixture f;
    const auto a = f.add(Channel{"A"});
    const auto b = f.add(Channel{"B"});
    const auto e = f.link(a, R::Amplifies, b);
    f.g.remove_relationship(e);
    CHECK(f.g.edge_count() == 0);
    CHECK(f.g.neighbors(a, Direction::Both).empty());
    CHECK(code_of([&] { f.g.remove_relationship(e); }) == ErrorCode::NotFound);
    CHECK(f.g.remove_object(a, false) == 0);
}

TEST_CASE("neighbors") {
    Fixture f;
    const auto p = f.add(CyberPersona{"P"});
    const auto u1 = f.add(UserAccount{"u1"});
    const auto u2 = f.add(UserAccount{"u2"});
    f.link(u1, R::BelongsTo, p);
    f.link(u2, R::BelongsTo, p);
    const auto in = f.g.neighbors(p, Direction::In, R::BelongsTo);
    REQUIRE(in.size() == 2);
    std::set<Identifier> others{in[0].other, in[1].other};
    CHECK(others == std::set<Identifier>{u1, u2});
    CHECK(in[0].edge.id < in[1].edge.id);
    CHECK(f.g.neighbors(p, Direction::Out).empty());

    const auto lonely = f.add(Location{"L"});
    CHECK(f.g.neighbors(lonely, Direction::Both).empty());
    CHECK(code_of([&] { f.g.neighbors(make_identifier("location"), Direction::Both); }) ==
          ErrorCode::NotFound);

    const auto i = f.add(Incident{"I"});
    const auto ap = f.add(AttackPattern{"AP"});
    const auto k = f.add(Community{"K"});
    const auto n = f.add(Narrative{"N"});
    f.link(i, R::Uses, ap);
    f.link(i, R::Targets, k);
    f.link(i, R::Targets, n);
    const auto filtered = f.g.neighbors(i, Direction::Both, R::Targets);
    std::vector<Identifier> expected;
    for (const auto& [eid, e] : f.g.edges()) {
        if ((e.source == i || e.target == i) && e.kind == R::Targets) {
            expected.push_back(eid);
        }
    }
    REQUIRE(filtered.size() == expected.size());
    for (std::size_t x = 0; x < expected.size(); ++x) {
        CHECK(filtered[x].edge.id == expected[x]);
        CHECK(filtered[x].edge.kind == R::Targets);
    }
}

TEST_CASE("neighbors equals a linear scan on random graphs") {
    testing::Rng rng(5);
    for (int round = 0; round < 50; ++round) {
        const auto g = testing::random_graph(rng, 20, 40);
        for (const auto& [id, obj] : g.objects()) {
            for (auto dir : {Direction::Out, Direction::In, Direction::Both}) {
                for (std::optional<RelationshipKind> k :
                     {std::optional<RelationshipKind>{}, std::optional{R::RelatedTo},
                      std::optional{R::Targets}}) {
                    std::vector<Neighbor> expected;
                    for (const auto& [eid, e] : g.edges()) {
                        if (k && e.kind != *k) {
                            continue;
                        }
                        const bool out = e.source == id && dir != Direction::In;
                        const bool in = e.target == id && dir != Direction::Out;
                        if (out || in) {
                            expected.push_back({e, out ? e.target : e.source});
                        }
                    }
                    CHECK(g.neighbors(id, dir, k) == expected);
                }
            }
        }
    }
}

TEST_CASE("attribution_of") {
    Fixture f;
    const auto t = f.add(ThreatActor{"T"});
    const auto c = f.add(Campaign{"C"});
    const auto i = f.add(Incident{"I"});
    const auto orphan = f.add(Incident{"orphan"});
    f.link(c, R::AttributedTo, t);
    f.link(i, R::PartOf, c);
    CHECK(f.g.attribution_of(c) == std::vector{t});
    CHECK(f.g.attribution_of(i) == std::vector{t});
    CHECK(f.g.attribution_of(orphan).empty());
    CHECK(code_of([&] { f.g.attribution_of(t); }) == ErrorCode::WrongKind);
    CHECK(code_of([&] { f.g.attribution_of(make_identifier("campaign")); }) ==
          ErrorCode::NotFound);

    const auto t2 = f.add(ThreatActor{"T2"});
    f.link(i, R::AttributedTo, t2);
    CHECK(f.g.attribution_of(i) == testing::sorted({t, t2}));
}

TEST_CASE("targets_of") {
    Fixture f;
    const auto i = f.add(Incident{"I"});
    const auto k = f.add(Community{"K"});
    f.link(i, R::Targets, k);
    CHECK(f.g.targets_of(i, false) == std::vector{k});

    const auto t = f.add(ThreatActor{"T"});
    const auto c = f.add(Campaign{"C"});
    const auto i2 = f.add(Incident{"I2"});
    const auto n = f.add(Narrative{"N"});
    f.link(c, R::AttributedTo, t);
    f.link(i2, R::PartOf, c);
    f.link(i2, R::Targets, n);
    CHECK(f.g.targets_of(t, false).empty());
    CHECK(f.g.targets_of(t, true) == std::vector{n});
    CHECK(f.g.targets_of(c, true) == std::vector{n});

    const auto lone = f.add(ThreatActor{"lone"});
    CHECK(f.g.targets_of(lone, true).empty());
    CHECK(code_of([&] { f.g.targets_of(k, false); }) == ErrorCode::WrongKind);
}

TEST_CASE("amplification_closure") {
    Fixture f;
    const auto a = f.add(Channel{"A"});
    const auto b = f.add(Channel{"B"});
    const auto c = f.add(Channel{"C"});
    f.link(a, R::Amplifies, b);
    f.link(b, R::Amplifies, c);
    CHECK(f.g.amplification_closure(a) == testing::sorted({b, c}));
    CHECK(f.g.amplification_closure(c).empty());

    Fixture cyc;
    const auto x = cyc.add(Channel{"X"});
    const auto y = cyc.add(Channel{"Y"});
    cyc.link(x, R::Amplifies, y);
    cyc.link(y, R::Amplifies, x);
    CHECK(cyc.g.amplification_closure(x) == testing::sorted({x, y}));

    const auto m = f.add(Message{"M"});
    f.link(c, R::Amplifies, m);
    CHECK(f.g.amplification_closure(a) == testing::sorted({b, c, m}));
    CHECK(code_of([&] { f.g.amplification_closure(m); }) == ErrorCode::WrongKind);
}

TEST_CASE("audience_of") {
    Fixture f;
    const auto n = f.add(Narrative{"N"});
    const auto p = f.add(CyberPersona{"P"});
    f.link(p, R::Supports, n);
    auto aud = f.g.audience_of(n);
    CHECK(aud.communities.empty());
    CHECK(aud.personas == std::vector{p});

    const auto c = f.add(Community{"C"});
    const auto q = f.add(CyberPersona{"Q"});
    f.link(c, R::Has, n);
    f.link(q, R::MemberOf, c);
    aud = f.g.audience_of(n);
    CHECK(aud.communities == std::vector{c});
    CHECK(aud.personas == testing::sorted({p, q}));

    const auto fresh = f.add(Narrative{"fresh"});
    aud = f.g.audience_of(fresh);
    CHECK(aud.communities.empty());
    CHECK(aud.personas.empty());
    CHECK(code_of([&] { f.g.audience_of(p); }) == ErrorCode::WrongKind);
}

TEST_CASE("footprint_of") {
    Fixture f;
    const auto p = f.add(CyberPersona{"P"});
    const auto u = f.add(UserAccount{"u"});
    const auto v = f.add(UserAccount{"v"});
    const auto m = f.add(Message{"M"});
    f.link(u, R::BelongsTo, p);
    f.link(u, R::Publishes, m);
    auto fp = f.g.footprint_of(p);
    CHECK(fp.accounts == std::vector{u});
    CHECK(fp.messages == std::vector{m});

    f.link(v, R::BelongsTo, p);
    f.link(v, R::Publishes, m);
    fp = f.g.footprint_of(p);
    CHECK(fp.accounts.size() == 2);
    CHECK(fp.messages == std::vector{m});

    const auto empty = f.add(CyberPersona{"empty"});
    fp = f.g.footprint_of(empty);
    CHECK(fp.accounts.empty());
    CHECK(fp.messages.empty());
    CHECK(code_of([&] { f.g.footprint_of(m); }) == ErrorCode::WrongKind);
}

TEST_CASE("stats") {
    KnowledgeGraph empty;
    const auto s0 = empty.stats();
    CHECK(s0.total_objects == 0);
    CHECK(s0.total_edges == 0);
    CHECK(s0.objects_by_kind.size() == 12);
    CHECK(s0.edges_by_kind.size() == 12);
    for (const auto& [k, n] : s0.objects_by_kind) {
        CHECK(n == 0);
    }

    Fixture f;
    const auto a = f.add(Channel{"A"});
    const auto b = f.add(Channel{"B"});
    const auto c = f.add(Channel{"C"});
    f.link(a, R::Amplifies, b);
    f.link(b, R::Amplifies, c);
    const auto s = f.g.stats();
    CHECK(s.objects_by_kind.at(ObjectKind::Channel) == 3);
    CHECK(s.edges_by_kind.at(R::Amplifies) == 2);

    testing::Rng rng(9);
    for (int round = 0; round < 50; ++round) {
        const auto g = testing::random_graph(rng, 30, 60);
        const auto st = g.stats();
        std::size_t objs = 0;
        std::size_t edges = 0;
        for (const auto& [k, n] : st.objects_by_kind) {
            objs += n;
        }
        for (const auto& [k, n] : st.edges_by_kind) {
            edges += n;
        }
        CHECK(objs == st.total_objects);
        CHECK(edges == st.total_edges);
        CHECK(st.total_objects == g.object_count());
        CHECK(st.total_edges == g.edge_count());
    }
}

TEST_CASE("queries match brute-force oracles, cycles included") {
    testing::Rng rng(2024);
    int cyclic = 0;
    for (int round = 0; round < 100; ++round) {
        const auto g = testing::random_query_graph(rng, 30);
        CHECK(testing::oracle_mismatch(g) == "");
        for (const auto& [id, obj] : g.objects()) {
            if (kind_of(obj) == ObjectKind::Channel) {
                const auto closure = g.amplification_closure(id);
                cyclic += std::binary_search(closure.begin(), closure.end(), id) ? 1 : 0;
            }
        }
    }
    CHECK(cyclic > 0);
}

TEST_CASE("queries are read-only") {
    testing::Rng rng(77);
    for (int round = 0; round < 30; ++round) {
        const auto g = testing::random_query_graph(rng, 25);
        auto copy = g;
        for (const auto& [id, obj] : copy.objects()) {
            const auto k = kind_of(obj);
            copy.neighbors(id, Direction::Both);
            if (k == ObjectKind::Channel) copy.amplification_closure(id);
            if (k == ObjectKind::Incident || k == ObjectKind::Campaign) copy.attribution_of(id);
            if (k == ObjectKind::Narrative) copy.audience_of(id);
            if (k == ObjectKind::CyberPersona || k == ObjectKind::Community) copy.footprint_of(id);
        }
        copy.stats();
        CHECK(copy == g);
    }
}

TEST_CASE("insert_object is idempotent") {
    testing::Rng rng(31);
    for (int round = 0; round < 200; ++round) {
        auto g = testing::random_graph(rng, 10, 10);
        const auto kind = kAllObjectKinds[testing::pick(rng, 12)];
        const auto id = fresh_id(rng, kind);
        const auto obj = testing::random_object(rng, kind);
        g.insert_object(id, obj);
        const auto once = g;
        g.insert_object(id, obj);
        CHECK(g == once);
    }
}

TEST_CASE("referential integrity under random churn") {
    testing::Rng rng(8);
    for (int round = 0; round < 100; ++round) {
        CHECK(testing::run_churn(rng, 40, 60) == "");
    }
}
