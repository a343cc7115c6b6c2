#include <random>

#include <gtest/gtest.h>

#include "coenroll/error.hpp"
#include "coenroll/metrics.hpp"
#include "coenroll/synthgen.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace coenroll;
using testing_support::graph;

namespace {

StudentGraph p3() { return graph(3, {{0, 1}, {1, 2}}); }
StudentGraph k4() { return graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}); }
// Triangle a-b-c plus pendant d on a.
StudentGraph triangle_pendant() { return graph(4, {{0, 1}, {1, 2}, {0, 2}, {0, 3}}); }

std::vector<NodeId> all_nodes(const StudentGraph& g) {
    std::vector<NodeId> v(g.node_count());
    for (NodeId i = 0; i < v.size(); ++i) v[i] = i;
    return v;
}

}  // namespace

TEST(Components, EdgePlusIsolated) {
    auto c = connected_components(graph(3, {{0, 1}}));
    ASSERT_EQ(c.size(), 2u);
    EXPECT_EQ(c[0], (std::vector<NodeId>{0, 1}));
    EXPECT_EQ(c[1], (std::vector<NodeId>{2}));
}

TEST(Components, ConnectedIsSingle) { EXPECT_EQ(connected_components(k4()).size(), 1u); }

TEST(Components, MatchUnionFind) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto g = testing_support::random_graph(seed, 60, 0.03);
        EXPECT_EQ(connected_components(g), oracle::components(oracle::dense(g)));
    }
}

TEST(Paths, P3AndK4) {
    auto g = p3();
    auto nodes = all_nodes(g);
    EXPECT_DOUBLE_EQ(average_geodesic(g, nodes), 4.0 / 3.0);
    EXPECT_EQ(diameter(g, nodes), 2u);
    auto k = k4();
    EXPECT_DOUBLE_EQ(average_geodesic(k, all_nodes(k)), 1.0);
    EXPECT_EQ(diameter(k, all_nodes(k)), 1u);
}

TEST(Paths, UndefinedBelowTwoNodes) {
    auto g = graph(1, {});
    std::vector<NodeId> one{0};
    EXPECT_THROW(average_geodesic(g, one), UndefinedMetricError);
    EXPECT_THROW(network_density(g), UndefinedMetricError);
}

TEST(Paths, SampledEstimatorIsSeededAndClose) {
    auto g = testing_support::random_graph(3, 300, 0.03);
    auto comps = connected_components(g);
    const auto exact = path_statistics(g, comps[0]);
    PathOptions options{100, 150, 7};
    const auto a = path_statistics(g, comps[0], options);
    const auto b = path_statistics(g, comps[0], options);
    EXPECT_TRUE(a.sampled);
    EXPECT_FALSE(exact.sampled);
    EXPECT_EQ(a.average_geodesic, b.average_geodesic);
    EXPECT_GT(a.standard_error, 0.0);
    EXPECT_NEAR(a.average_geodesic, exact.average_geodesic, 5 * a.standard_error + 1e-9);
    EXPECT_LE(a.diameter, exact.diameter);
}

TEST(Clustering, TriangleAndStar) {
    auto t = graph(3, {{0, 1}, {1, 2}, {0, 2}});
    for (NodeId v = 0; v < 3; ++v) EXPECT_DOUBLE_EQ(local_clustering(t, v), 1.0);
    EXPECT_DOUBLE_EQ(average_local_clustering(t), 1.0);
    EXPECT_DOUBLE_EQ(global_transitivity(t), 1.0);
    auto star = graph(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
    EXPECT_DOUBLE_EQ(local_clustering(star, 0), 0.0);
}

TEST(Clustering, TrianglePlusPendant) {
    auto g = triangle_pendant();
    EXPECT_DOUBLE_EQ(local_clustering(g, 0), 1.0 / 3.0);
    EXPECT_DOUBLE_EQ(average_local_clustering(g), (1.0 / 3.0 + 1 + 1 + 0) / 4);
    EXPECT_DOUBLE_EQ(global_transitivity(g), 3.0 / 5.0);
    const auto t = oracle::triangles(oracle::dense(g));
    EXPECT_EQ(t.triads[0] + t.triads[1] + t.triads[2] + t.triads[3], 5u);
}

TEST(Clustering, P3HasNoTriangles) { EXPECT_DOUBLE_EQ(global_transitivity(p3()), 0.0); }

TEST(Reachability, P3) {
    auto c = reachability_curve(p3(), 3);
    EXPECT_DOUBLE_EQ(c.rho[0], 7.0 / 9.0);
    EXPECT_DOUBLE_EQ(c.rho[1], 1.0);
    EXPECT_DOUBLE_EQ(c.rho[2], 1.0);
    EXPECT_DOUBLE_EQ(c.limit, 1.0);
}

TEST(Reachability, DisconnectedPlateau) {
    auto c = reachability_curve(graph(3, {{0, 1}}), 5);
    for (double r : c.rho) EXPECT_DOUBLE_EQ(r, 5.0 / 9.0);
    EXPECT_DOUBLE_EQ(c.limit, 5.0 / 9.0);
}

TEST(Reachability, MatchesBooleanPowersOn60Nodes) {
    auto g = testing_support::random_graph(60, 60, 0.04);
    const auto nz = oracle::boolean_power_nonzeros(oracle::dense(g), 6);
    const auto c = reachability_curve(g, 6);
    for (int k = 0; k < 6; ++k) EXPECT_DOUBLE_EQ(c.rho[static_cast<std::size_t>(k)], static_cast<double>(nz[static_cast<std::size_t>(k)]) / 3600.0);
}

TEST(Density, Examples) {
    EXPECT_DOUBLE_EQ(network_density(p3()), 2.0 / 3.0);
    EXPECT_DOUBLE_EQ(network_density(k4()), 1.0);
    EXPECT_DOUBLE_EQ(average_degree(p3()), 4.0 / 3.0);
    auto g = testing_support::parse(testing_support::header6() +
                                    "x,UG,FR,A.001,CS1301,P\ny,UG,FR,A.001,CS1301,P\n"
                                    "x,UG,FR,B.001,CS1101,P\ny,UG,FR,B.001,CS1101,P\n");
    EXPECT_DOUBLE_EQ(average_edge_weight(build_student_graph(g)), 4.0);
}

TEST(PairsWithin, ScopeChangesDenominator) {
    // Component {0,1,2} path plus a separate edge {3,4}.
    auto g = graph(5, {{0, 1}, {1, 2}, {3, 4}});
    // Pairs within 1: (0,1) (1,2) (3,4) of 10 overall; 2 of 3 within the LCC.
    EXPECT_DOUBLE_EQ(pairs_within_percent(g, 1, PairScope::all_nodes), 30.0);
    EXPECT_DOUBLE_EQ(pairs_within_percent(g, 1, PairScope::largest_component), 100.0 * 2 / 3);
    EXPECT_DOUBLE_EQ(pairs_within_percent(g, 4, PairScope::all_nodes), 40.0);
}

TEST(Report, LccFieldsIgnoreSmallComponents) {
    auto joined = graph(6, {{0, 1}, {1, 2}, {2, 3}, {0, 2}, {4, 5}});
    auto alone = graph(4, {{0, 1}, {1, 2}, {2, 3}, {0, 2}});
    auto a = full_report(joined), b = full_report(alone);
    EXPECT_EQ(a.nodes_full, 6u);
    EXPECT_EQ(a.edges_full, 5u);
    EXPECT_EQ(a.nodes_lcc, 4u);
    EXPECT_EQ(a.edges_lcc, 4u);
    EXPECT_DOUBLE_EQ(a.pct_in_largest_component, 100.0 * 4 / 6);
    EXPECT_EQ(a.avg_geodesic, b.avg_geodesic);
    EXPECT_EQ(a.diameter, b.diameter);
    EXPECT_EQ(a.local_clustering, b.local_clustering);
    EXPECT_EQ(a.global_transitivity, b.global_transitivity);
    EXPECT_EQ(a.network_density, b.network_density);
}

// Recomputes the report from the graph's edge list alone.
TEST(Report, SyntheticReportIsInternallyConsistent) {
    const auto d = filter_in_person(generate(utd_like_2k()));
    const auto g = build_student_graph(subset(d, parse_selector("career=GR")));
    const auto r = full_report(g);
    const auto dense = oracle::dense(g);
    const auto comps = oracle::components(dense);
    const auto& lcc = comps.front();
    std::vector<bool> in_lcc(g.node_count(), false);
    for (auto v : lcc) in_lcc[v] = true;
    std::uint64_t m = 0, hours = 0;
    for (const auto& e : g.edges())
        if (in_lcc[e.u]) {
            ++m;
            hours += e.data.contact_hours;
        }
    EXPECT_EQ(r.nodes_lcc, lcc.size());
    EXPECT_EQ(r.edges_lcc, m);
    EXPECT_DOUBLE_EQ(r.avg_degree, 2.0 * static_cast<double>(m) / static_cast<double>(lcc.size()));
    EXPECT_DOUBLE_EQ(r.avg_edge_weight, static_cast<double>(hours) / static_cast<double>(m));
    const double n = static_cast<double>(lcc.size());
    EXPECT_DOUBLE_EQ(r.network_density, 2.0 * static_cast<double>(m) / (n * (n - 1)));
    const auto dist = oracle::floyd_warshall(dense);
    const auto totals = oracle::path_totals(dist, lcc);
    EXPECT_EQ(r.diameter, static_cast<std::uint32_t>(totals.diameter));
    EXPECT_NEAR(r.avg_geodesic, static_cast<double>(totals.sum) / static_cast<double>(totals.pairs), 1e-12);
}

// Property suite over random graphs.
TEST(Properties, PathAndClusteringBounds) {
    for (std::uint64_t seed = 100; seed < 130; ++seed) {
        auto g = testing_support::random_graph(seed, 40, 0.02 + 0.01 * static_cast<double>(seed % 10));
        const auto curve = reachability_curve(g, 12);
        for (std::size_t k = 1; k < curve.rho.size(); ++k) EXPECT_GE(curve.rho[k], curve.rho[k - 1]);
        for (const auto& comp : connected_components(g)) {
            if (comp.size() < 2) continue;
            const auto s = path_statistics(g, comp);
            EXPECT_GE(s.average_geodesic, 1.0);
            EXPECT_LE(s.average_geodesic, static_cast<double>(s.diameter));
        }
        const double c = average_local_clustering(g), t = global_transitivity(g);
        EXPECT_GE(c, 0.0);
        EXPECT_LE(c, 1.0);
        EXPECT_GE(t, 0.0);
        EXPECT_LE(t, 1.0);
    }
}

TEST(Properties, ReachabilityAtDiameterCoversLcc) {
    for (std::uint64_t seed = 200; seed < 220; ++seed) {
        auto g = testing_support::random_graph(seed, 50, 0.04);
        const auto comps = connected_components(g);
        if (comps[0].size() < 2) continue;
        const auto diam = diameter(g, comps[0]);
        const auto curve = reachability_curve(g, diam);
        const double share = static_cast<double>(comps[0].size()) / static_cast<double>(g.node_count());
        EXPECT_GE(curve.rho.back(), share * share - 1e-15);
    }
}

TEST(Properties, EdgeDeletionNeverShortensPaths) {
    std::mt19937_64 rng(5);
    for (std::uint64_t seed = 300; seed < 320; ++seed) {
        auto g = testing_support::random_graph(seed, 30, 0.2);
        auto comps = connected_components(g);
        if (comps[0].size() != g.node_count()) continue;
        const double before = average_geodesic(g, comps[0]);
        auto edges = g.edges();
        edges.erase(edges.begin() + static_cast<std::ptrdiff_t>(rng() % edges.size()));
        auto h = StudentGraph::from_edges(g.nodes(), edges);
        auto hc = connected_components(h);
        if (hc[0].size() != h.node_count()) continue;
        EXPECT_GE(average_geodesic(h, hc[0]), before);
    }
}
