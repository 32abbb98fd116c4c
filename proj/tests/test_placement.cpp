#include "doctest.h"

#include "qirm/placement.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

using namespace qirm;
using namespace qirm::placement;

namespace {

Query q_for(ContentId c)
{
    Query q;
    q.ckwd = keyword_for(c);
    return q;
}

struct World {
    std::vector<NodeSpec> nodes;
    std::vector<ContentItem> catalog;
    clustering::Partition clusters;
};

// Nodes with the given weights and strong flags; content c originates at
// node `origins[c]`.
World world(std::vector<std::pair<double, bool>> spec, std::vector<NodeId> origins, std::size_t k = 2)
{
    World w;
    for (std::size_t i = 0; i < spec.size(); ++i) {
        NodeSpec n;
        n.id = static_cast<NodeId>(i);
        n.weight = spec[i].first;
        n.cluster = spec[i].second ? ClusterTag::Strong : ClusterTag::Weak;
        n.cache = ReplicaCache(k);
        n.owned_content = 1000;
        (spec[i].second ? w.clusters.strong : w.clusters.weak).push_back(n.id);
        w.nodes.push_back(n);
    }
    for (std::size_t c = 0; c < origins.size(); ++c) {
        w.catalog.push_back({static_cast<ContentId>(c), keyword_for(static_cast<ContentId>(c)), 1.0, origins[c],
                             ContentClass::Unclassified});
        w.nodes[origins[c]].owned_content = static_cast<ContentId>(c);
    }
    return w;
}

}  // namespace

TEST_CASE("access counter")
{
    AccessCounter counter(5);
    CHECK(counter.register_query(q_for(3)));
    CHECK(counter.count(3) == 1);
    counter.register_query(q_for(3));
    counter.register_query(q_for(3));
    CHECK(counter.count("kw3") == 3);

    AccessCounter mixed(5);
    for (ContentId c : {1u, 2u, 1u}) mixed.register_query(q_for(c));
    CHECK(mixed.count(1) == 2);
    CHECK(mixed.count(2) == 1);

    Query unknown;
    unknown.ckwd = "kw99";
    CHECK_FALSE(mixed.register_query(unknown));
    CHECK(mixed.unknown() == 1);
    CHECK(mixed.count(1) == 2);

    mixed.reset();
    CHECK(mixed.count(1) == 0);
    CHECK(mixed.unknown() == 0);
}

TEST_CASE("classify threshold")
{
    AccessCounter counter(3);
    for (int i = 0; i < 7; ++i) counter.register_query(q_for(1));
    for (int i = 0; i < 4; ++i) counter.register_query(q_for(2));
    for (int i = 0; i < 5; ++i) counter.register_query(q_for(0));
    const auto cls = classify(counter, 5);
    CHECK(cls[0] == ContentClass::Class1);
    CHECK(cls[1] == ContentClass::Class1);
    CHECK(cls[2] == ContentClass::Class2);
    CHECK(classify(AccessCounter(1), 5)[0] == ContentClass::Class2);
    CHECK_THROWS_AS(classify(counter, 0), std::domain_error);
}

TEST_CASE("classify is monotone in the count")
{
    for (std::uint32_t a_min = 1; a_min < 8; ++a_min) {
        AccessCounter counter(1);
        bool was_class1 = false;
        for (std::uint32_t n = 0; n < 20; ++n) {
            const bool class1 = classify(counter, a_min)[0] == ContentClass::Class1;
            CHECK(class1 == (n >= a_min));
            CHECK((!was_class1 || class1));
            was_class1 = class1;
            counter.register_query(q_for(0));
        }
    }
}

TEST_CASE("class1 replica count")
{
    CHECK(class1_replicas(5, 5, 3) == 1);
    CHECK(class1_replicas(6, 5, 3) == 2);
    CHECK(class1_replicas(15, 5, 2) == 2);
    CHECK(class1_replicas(0, 5, 3) == 1);
    CHECK(class1_replicas(50, 5, 0) == 0);
}

TEST_CASE("build_plan")
{
    SUBCASE("one Class1 content goes to the heaviest strong node")
    {
        auto w = world({{5, true}, {9, true}, {7, true}, {1, false}}, {3});
        AccessCounter counter(1);
        for (int i = 0; i < 5; ++i) counter.register_query(q_for(0));
        const auto plan = build_plan(classify(counter, 5), w.clusters, w.nodes, w.catalog, counter, 5, 10.0);
        CHECK(plan.assignments.at(0) == std::vector<NodeId>{1});
        CHECK(plan.classes.at(0) == ContentClass::Class1);
        CHECK(plan.epoch == 10.0);
    }
    SUBCASE("one Class2 content goes to exactly one weak node")
    {
        auto w = world({{5, true}, {2, false}, {3, false}}, {0});
        AccessCounter counter(1);
        const auto plan = build_plan(classify(counter, 5), w.clusters, w.nodes, w.catalog, counter, 5, 0.0);
        CHECK(plan.assignments.at(0) == std::vector<NodeId>{2});
    }
    SUBCASE("replica count is clamped to the strong cluster")
    {
        auto w = world({{5, true}, {9, true}, {1, false}}, {2});
        AccessCounter counter(1);
        for (int i = 0; i < 15; ++i) counter.register_query(q_for(0));
        const auto plan = build_plan(classify(counter, 5), w.clusters, w.nodes, w.catalog, counter, 5, 0.0);
        CHECK(plan.assignments.at(0) == std::vector<NodeId>{1, 0});
    }
    SUBCASE("origin does not host its own replica")
    {
        auto w = world({{9, true}, {5, true}, {1, false}}, {0});
        AccessCounter counter(1);
        for (int i = 0; i < 5; ++i) counter.register_query(q_for(0));
        const auto plan = build_plan(classify(counter, 5), w.clusters, w.nodes, w.catalog, counter, 5, 0.0);
        CHECK(plan.assignments.at(0) == std::vector<NodeId>{1});
    }
    SUBCASE("full caches are skipped")
    {
        auto w = world({{9, true}, {5, true}, {1, false}}, {2});
        w.nodes[0].cache.insert(50, 0.0);
        w.nodes[0].cache.insert(51, 0.0);
        AccessCounter counter(1);
        for (int i = 0; i < 5; ++i) counter.register_query(q_for(0));
        const auto plan = build_plan(classify(counter, 5), w.clusters, w.nodes, w.catalog, counter, 5, 0.0);
        CHECK(plan.assignments.at(0) == std::vector<NodeId>{1});
    }
    SUBCASE("empty strong set degrades with a warning")
    {
        auto w = world({{1, false}, {2, false}}, {0});
        AccessCounter counter(1);
        for (int i = 0; i < 5; ++i) counter.register_query(q_for(0));
        const auto plan = build_plan(classify(counter, 5), w.clusters, w.nodes, w.catalog, counter, 5, 0.0);
        CHECK(plan.empty());
        CHECK(plan.warnings.size() == 1);
    }
    SUBCASE("hotter content claims slots first")
    {
        auto w = world({{9, true}, {1, false}, {1, false}}, {1, 2}, 1);
        AccessCounter counter(2);
        for (int i = 0; i < 5; ++i) counter.register_query(q_for(0));
        for (int i = 0; i < 9; ++i) counter.register_query(q_for(1));
        const auto plan = build_plan(classify(counter, 5), w.clusters, w.nodes, w.catalog, counter, 5, 0.0);
        CHECK(plan.assignments.at(1) == std::vector<NodeId>{0});
        CHECK_FALSE(plan.assignments.contains(0));
    }
}

TEST_CASE("apply_plan")
{
    auto w = world({{1, false}, {9, true}, {8, true}}, {0, 1}, 1);
    std::vector<DirectoryRecord> directory;

    SUBCASE("empty plan changes nothing")
    {
        CHECK(apply_plan({}, w.nodes, w.catalog, directory, nullptr, 4.0).empty());
        CHECK(directory.empty());
        CHECK(w.nodes[2].cache.size() == 0);
    }
    SUBCASE("single assignment")
    {
        PlacementPlan plan;
        plan.assignments[0] = {2};
        plan.classes[0] = ContentClass::Class1;
        const auto events = apply_plan(plan, w.nodes, w.catalog, directory, nullptr, 4.0);
        REQUIRE(events.size() == 1);
        CHECK(events[0].kind == PlacementEventKind::Place);
        CHECK(w.nodes[2].cache.contains(0));
        CHECK(w.nodes[2].cache.stored_at(0) == 4.0);
        CHECK(directory == std::vector<DirectoryRecord>{{0, 2, 8.0, 4.0}});
    }
    SUBCASE("eviction precedes insertion into a full cache")
    {
        w.nodes[2].cache.insert(7, 1.0);
        PlacementPlan plan;
        plan.assignments[0] = {2};
        const auto events = apply_plan(plan, w.nodes, w.catalog, directory, nullptr, 4.0);
        REQUIRE(events.size() == 2);
        CHECK(events[0].kind == PlacementEventKind::Evict);
        CHECK(events[0].content == 7);
        CHECK(events[1].kind == PlacementEventKind::Place);
        CHECK(w.nodes[2].cache.size() == 1);
    }
    SUBCASE("copies are charged to the network")
    {
        simnet::Network net({{0, 8, 8, 0}, {1, 8, 8, 0}, {2, 8, 8, 0}}, 1.0, 1.0);
        PlacementPlan plan;
        plan.assignments[0] = {2};
        apply_plan(plan, w.nodes, w.catalog, directory, &net, 0.0);
        CHECK(net.ledger().total(simnet::Direction::Received) == doctest::Approx(1e6));
        CHECK(net.ledger().bytes(2, simnet::Direction::Received, 0) == doctest::Approx(1e6));
    }
}

TEST_CASE("broadcast_placement")
{
    auto w = world({{1, false}, {9, true}, {8, true}}, {0, 1});
    CHECK(broadcast_placement({}, w.nodes).empty());

    PlacementPlan one;
    one.assignments[1] = {2};
    CHECK(broadcast_placement(one, w.nodes) == std::vector<PlacementMessage>{{2, 'S', {1}}});

    PlacementPlan grouped;
    grouped.assignments[1] = {2};
    grouped.assignments[0] = {2};
    const auto msgs = broadcast_placement(grouped, w.nodes);
    REQUIRE(msgs.size() == 1);
    CHECK(msgs[0].nid == 2);
    CHECK(msgs[0].content_ids == std::vector<ContentId>{0, 1});
}

TEST_CASE("baseline_place")
{
    auto w = world({{1, false}, {1, false}, {1, false}, {1, false}}, {0, 1, 2, 3});
    CHECK(baseline_place(Strategy::OriginOnly, w.catalog, w.nodes, 1u).empty());
    CHECK_THROWS_AS(baseline_place(Strategy::Qirm, w.catalog, w.nodes, 1u), std::domain_error);

    const auto a = baseline_place(Strategy::RandomFlood, w.catalog, w.nodes, 42u);
    const auto b = baseline_place(Strategy::RandomFlood, w.catalog, w.nodes, 42u);
    CHECK(a.assignments == b.assignments);
    for (const auto& [c, hosts] : a.assignments) {
        REQUIRE(hosts.size() == 1);
        CHECK(hosts[0] != w.catalog[c].origin);
    }

    auto pair = world({{1, false}, {1, false}}, {0});
    CHECK(baseline_place(Strategy::RandomFlood, pair.catalog, pair.nodes, 3u).assignments.at(0) ==
          std::vector<NodeId>{1});
}

TEST_CASE("plans respect cache capacity and cluster size")
{
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + trial % 12;
        const std::size_t k = trial % 4;
        std::vector<std::pair<double, bool>> spec;
        std::vector<NodeId> origins;
        for (std::size_t i = 0; i < n; ++i) {
            spec.emplace_back(static_cast<double>(rng() % 10), rng() % 2 == 0);
            origins.push_back(static_cast<NodeId>(i));
        }
        auto w = world(spec, origins, k);
        AccessCounter counter(n);
        for (int i = 0; i < 60; ++i) counter.register_query(q_for(static_cast<ContentId>(rng() % n)));
        const auto plan = build_plan(classify(counter, 3), w.clusters, w.nodes, w.catalog, counter, 3, 1.0);
        for (const auto& [c, hosts] : plan.assignments) {
            const auto& pool = plan.classes.at(c) == ContentClass::Class1 ? w.clusters.strong : w.clusters.weak;
            CHECK(hosts.size() <= pool.size());
            for (NodeId h : hosts) CHECK(std::count(pool.begin(), pool.end(), h) == 1);
        }
        std::vector<DirectoryRecord> directory;
        apply_plan(plan, w.nodes, w.catalog, directory, nullptr, 1.0);
        for (const auto& node : w.nodes) CHECK(node.cache.size() <= k);
        CHECK(directory.size() == plan.replica_count());
    }
}
