#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "coenroll/projection.hpp"

namespace coenroll {

/// Components ordered by size (desc), then by smallest member; members ascending.
std::vector<std::vector<NodeId>> connected_components(const StudentGraph& g);

/// Tallies of BFS hop distances from a set of sources.
struct DistanceProfile {
    std::size_t sources = 0;
    /// ordered_pairs[d] = number of (source, target) pairs at distance d, d >= 1.
    std::vector<std::uint64_t> ordered_pairs{0};
    std::uint64_t distance_sum = 0;  // over reachable ordered pairs
    std::uint32_t max_distance = 0;  // largest eccentricity among sources

    std::uint64_t reachable_pairs() const;
    std::uint64_t pairs_within(std::uint32_t k) const;
};

/// All-source BFS on the binary view from every node in `sources`.
/// Parallel over sources; the result does not depend on the thread count.
DistanceProfile distance_profile(const StudentGraph& g, std::span<const NodeId> sources);

/// Options for the path-length statistics. Components larger than
/// `exact_node_limit` are estimated from `sample_sources` random BFS roots.
struct PathOptions {
    std::size_t exact_node_limit = 50'000;
    std::size_t sample_sources = 1'000;
    std::uint64_t seed = 1;
};

struct PathStatistics {
    double average_geodesic = 0.0;
    std::uint32_t diameter = 0;
    bool sampled = false;
    /// Standard error of the sampled mean (0 when exact).
    double standard_error = 0.0;
};

/// Exact l_G and diameter of a connected component (or sampled when larger
/// than options.exact_node_limit). Throws UndefinedMetricError below 2 nodes.
PathStatistics path_statistics(const StudentGraph& g, std::span<const NodeId> component,
                               const PathOptions& options = {});
double average_geodesic(const StudentGraph& g, std::span<const NodeId> component);
std::uint32_t diameter(const StudentGraph& g, std::span<const NodeId> component);

/// Triangles through v.
std::uint64_t triangles_at(const StudentGraph& g, NodeId v);
/// c(v) = 2T(v) / (d(d-1)); 0 when d < 2.
double local_clustering(const StudentGraph& g, NodeId v);
/// Mean c(v) over the nodes (all nodes when empty); degree<2 nodes count as 0.
double average_local_clustering(const StudentGraph& g, std::span<const NodeId> nodes = {});
/// 3 * triangles / triads over the nodes (all when empty); 0 when no triads.
double global_transitivity(const StudentGraph& g, std::span<const NodeId> nodes = {});

struct ReachabilityCurve {
    std::vector<double> rho;  // rho[k-1] for k = 1..k_max
    double limit = 0.0;       // sum over components (n_c / n)^2
};

/// Fraction of non-zero entries in A_binary^k (unit diagonal) for k = 1..k_max.
ReachabilityCurve reachability_curve(const StudentGraph& g, std::uint32_t k_max);

/// 2m / (n(n-1)) over the nodes' induced edges. Throws below 2 nodes.
double network_density(const StudentGraph& g, std::span<const NodeId> nodes = {});
/// 2m / n over the nodes' induced edges.
double average_degree(const StudentGraph& g, std::span<const NodeId> nodes = {});
/// Mean contact hours per week over the nodes' induced edges.
double average_edge_weight(const StudentGraph& g, std::span<const NodeId> nodes = {});

enum class PairScope { all_nodes, largest_component };

/// Percentage of unordered pairs at hop distance <= k. Unreachable pairs count
/// as not within; the denominator follows `scope`.
double pairs_within_percent(const StudentGraph& g, std::uint32_t k,
                            PairScope scope = PairScope::all_nodes);

/// One column of the metrics tables. LCC-scoped fields use the largest component.
struct MetricsReport {
    std::size_t nodes_full = 0;
    std::size_t edges_full = 0;
    std::size_t nodes_lcc = 0;
    std::size_t edges_lcc = 0;
    double avg_degree = 0.0;
    double pct_in_largest_component = 0.0;
    double avg_edge_weight = 0.0;
    double avg_geodesic = 0.0;
    std::uint32_t diameter = 0;
    double local_clustering = 0.0;
    double global_transitivity = 0.0;
    double network_density = 0.0;
    bool geodesic_sampled = false;
};

MetricsReport full_report(const StudentGraph& g, const PathOptions& options = {});

/// Report restricted to one component (per-component mode).
MetricsReport component_report(const StudentGraph& g, std::span<const NodeId> component,
                               const PathOptions& options = {});

}  // namespace coenroll
