#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "coenroll/centrality.hpp"
#include "coenroll/error.hpp"
#include "coenroll/synthgen.hpp"
#include "equivalence.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace coenroll;
using testing_support::graph;

TEST(Betweenness, P3Center) {
    auto c = betweenness(graph(3, {{0, 1}, {1, 2}}), PathMode::unweighted);
    EXPECT_DOUBLE_EQ(c.raw[1], 1.0);
    EXPECT_DOUBLE_EQ(c.normalized[1], 1.0);
    EXPECT_DOUBLE_EQ(c.raw[0], 0.0);
    EXPECT_EQ(c.ranking.front(), 1u);
}

TEST(Betweenness, StarHubIsMaximal) {
    auto star = graph(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
    for (auto mode : {PathMode::unweighted, PathMode::weighted}) {
        auto c = betweenness(star, mode);
        EXPECT_DOUBLE_EQ(c.raw[0], 6.0);
        EXPECT_DOUBLE_EQ(c.normalized[0], 1.0);
        for (NodeId v = 1; v < 5; ++v) EXPECT_DOUBLE_EQ(c.raw[v], 0.0);
    }
}

TEST(Betweenness, C4SplitsPaths) {
    auto c4 = graph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
    const auto expected = oracle::enumerated_betweenness(oracle::dense(c4));
    auto c = betweenness(c4, PathMode::unweighted);
    for (NodeId v = 0; v < 4; ++v) {
        EXPECT_DOUBLE_EQ(expected[v], 0.5);
        EXPECT_DOUBLE_EQ(c.raw[v], 0.5);
    }
}

TEST(Betweenness, WeightedPrefersLongContact) {
    // 0-1-2 via 1 hour per edge (length 1 each) versus 0-3-4-2 at 9 hours (length 1/9 each).
    std::vector<NodeAttributes> nodes(5);
    auto g = StudentGraph::from_edges(nodes, {{0, 1, {1, 1}}, {1, 2, {1, 1}}, {0, 3, {1, 9}}, {3, 4, {1, 9}},
                                              {2, 4, {1, 9}}});
    auto u = betweenness(g, PathMode::unweighted);
    auto w = betweenness(g, PathMode::weighted);
    EXPECT_GT(u.raw[1], 0.0);
    EXPECT_DOUBLE_EQ(w.raw[1], 0.0);
    EXPECT_GT(w.raw[3], u.raw[3]);
}

TEST(Betweenness, MatchesPathEnumerationOnTinyGraphs) {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        auto g = testing_support::random_graph(seed, 7, 0.4);
        const auto expected = oracle::enumerated_betweenness(oracle::dense(g));
        const auto got = betweenness(g, PathMode::unweighted);
        for (NodeId v = 0; v < g.node_count(); ++v) EXPECT_NEAR(got.raw[v], expected[v], 1e-12);
    }
}

TEST(Betweenness, OracleSweepSample) {
    for (std::uint64_t i = 0; i < 8; ++i) {
        auto bad = equivalence::check_graph(equivalence::sweep_graph(i), "graph " + std::to_string(i));
        EXPECT_TRUE(bad.empty()) << bad.front();
    }
}

TEST(Betweenness, ConstantContactModesCoincide) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto r = testing_support::random_graph(seed, 40, 0.1);
        auto edges = r.edges();
        for (auto& e : edges) e.data.contact_hours = 3;
        auto g = StudentGraph::from_edges(r.nodes(), edges);
        auto u = betweenness(g, PathMode::unweighted);
        auto w = betweenness(g, PathMode::weighted);
        for (NodeId v = 0; v < g.node_count(); ++v) EXPECT_NEAR(u.raw[v], w.raw[v], 1e-9 * (1 + u.raw[v]));
        EXPECT_EQ(u.ranking, w.ranking);
    }
}

TEST(Betweenness, UniformScalingLeavesWeightedUnchanged) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto g = testing_support::random_graph(seed, 40, 0.1, 4);
        auto edges = g.edges();
        for (auto& e : edges) e.data.contact_hours = 1 + e.data.contact_hours;
        auto base = StudentGraph::from_edges(g.nodes(), edges);
        for (auto& e : edges) e.data.contact_hours *= 3;
        auto scaled = StudentGraph::from_edges(g.nodes(), edges);
        auto a = betweenness(base, PathMode::weighted);
        auto b = betweenness(scaled, PathMode::weighted);
        for (NodeId v = 0; v < g.node_count(); ++v) EXPECT_NEAR(a.raw[v], b.raw[v], 1e-9 * (1 + a.raw[v]));
        EXPECT_EQ(a.ranking, b.ranking);
    }
}

TEST(Betweenness, LeavesAndBounds) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto g = testing_support::random_graph(seed, 60, 0.05);
        for (auto mode : {PathMode::unweighted, PathMode::weighted}) {
            auto c = betweenness(g, mode);
            for (NodeId v = 0; v < g.node_count(); ++v) {
                if (g.degree(v) == 1) EXPECT_EQ(c.raw[v], 0.0);
                EXPECT_GE(c.normalized[v], 0.0);
                EXPECT_LE(c.normalized[v], 1.0 + 1e-12);
            }
        }
    }
}

TEST(Betweenness, RankingTiesByIndex) {
    auto c = betweenness(graph(4, {{0, 1}, {2, 3}}), PathMode::unweighted);
    EXPECT_EQ(c.ranking, (std::vector<NodeId>{0, 1, 2, 3}));
}

TEST(Pivotal, BarbellBridge) {
    // Two triangles {0,1,2} and {4,5,6} joined through node 3.
    auto g = graph(7, {{0, 1}, {1, 2}, {0, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {4, 6}});
    auto p = pivotal_students(g, PathMode::unweighted, 1);
    ASSERT_EQ(p.nodes.size(), 1u);
    EXPECT_EQ(p.nodes[0], 3u);
    EXPECT_EQ(p.student_ids[0], g.node(3).id);
}

TEST(Pivotal, KAtLeastNTakesEveryone) {
    auto g = graph(4, {{0, 1}, {1, 2}, {2, 3}});
    EXPECT_EQ(pivotal_students(g, PathMode::unweighted, 4).nodes.size(), 4u);
    EXPECT_EQ(pivotal_students(g, PathMode::unweighted, 10).nodes.size(), 4u);
    EXPECT_THROW(pivotal_students(g, PathMode::unweighted, 0), Error);
}

TEST(Pivotal, TopTenMatchesNaiveOracle) {
    auto g = testing_support::random_graph(77, 150, 0.04);
    const auto b = oracle::naive_betweenness(oracle::dense(g), false);
    std::vector<NodeId> order(g.node_count());
    std::iota(order.begin(), order.end(), NodeId{0});
    std::stable_sort(order.begin(), order.end(), [&](NodeId x, NodeId y) { return b[x] > b[y]; });
    order.resize(10);
    EXPECT_EQ(pivotal_students(g, PathMode::unweighted, 10).nodes, order);
}

TEST(Tally, CountsPerCourse) {
    std::string csv = testing_support::header6();
    // Eight of ten pivotal students share ENTP4340 across two sections.
    for (int i = 0; i < 10; ++i) {
        const auto s = testing_support::id("s", static_cast<std::size_t>(i));
        if (i < 8) csv += s + ",UG,SR," + (i % 2 ? "E.001" : "E.002") + ",ENTP4340,P\n";
        csv += s + ",UG,SR,X" + std::to_string(i) + ".001,CS43" + std::to_string(10 + i) + ",P\n";
    }
    const auto d = testing_support::parse(csv);
    PivotalSet p;
    for (std::uint32_t i = 0; i < 10; ++i) {
        p.nodes.push_back(i);
        p.student_ids.push_back(d.students()[i].id);
    }
    const auto tally = pivotal_course_tally(d, p);
    ASSERT_EQ(tally.size(), 11u);
    EXPECT_EQ(tally[0], (CourseTally{"ENTP4340", 8}));
    EXPECT_EQ(tally[1], (CourseTally{"CS4310", 1}));
    std::uint32_t sum = 0;
    for (const auto& t : tally) sum += t.count;
    EXPECT_EQ(sum, 18u);
}

TEST(Tally, UnknownPivotalStudentThrows) {
    const auto d = testing_support::parse(testing_support::header6() + "a,UG,FR,A.001,CS1301,P\n");
    PivotalSet p{{0}, {"zz"}};
    EXPECT_THROW(pivotal_course_tally(d, p), Error);
}

TEST(Tally, SyntheticSumEqualsPivotalEnrollmentScan) {
    const auto d = subset(filter_in_person(generate(utd_like_2k())), parse_selector("rank=FR"));
    const auto g = build_student_graph(d);
    const auto p = pivotal_students(g, PathMode::unweighted, 100);
    std::uint64_t pairs = 0;
    for (const auto& id : p.student_ids) pairs += d.sections_of(*d.find_student(id)).size();
    std::uint64_t sum = 0;
    for (const auto& t : pivotal_course_tally(d, p)) sum += t.count;
    EXPECT_EQ(sum, pairs);
}
