#include "coenroll/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "coenroll/error.hpp"
#include "coenroll/parallel.hpp"

namespace coenroll {

namespace {

std::vector<NodeId> all_nodes(const StudentGraph& g) {
    std::vector<NodeId> v(g.node_count());
    std::iota(v.begin(), v.end(), NodeId{0});
    return v;
}

std::vector<NodeId> or_all(const StudentGraph& g, std::span<const NodeId> nodes) {
    if (!nodes.empty()) return {nodes.begin(), nodes.end()};
    return all_nodes(g);
}

// Edges with both endpoints in `nodes`: count and contact-hour total.
std::pair<std::uint64_t, std::uint64_t> induced_edges(const StudentGraph& g,
                                                      std::span<const NodeId> nodes) {
    std::vector<bool> in(g.node_count(), false);
    for (NodeId v : nodes) in[v] = true;
    std::uint64_t count = 0, hours = 0;
    for (NodeId u : nodes) {
        auto nb = g.neighbours(u);
        auto data = g.edge_data(u);
        for (std::size_t k = 0; k < nb.size(); ++k) {
            if (u < nb[k] && in[nb[k]]) {
                ++count;
                hours += data[k].contact_hours;
            }
        }
    }
    return {count, hours};
}

struct BfsScratch {
    std::vector<std::int32_t> dist;
    std::vector<NodeId> queue;

    explicit BfsScratch(std::size_t n) : dist(n, -1) { queue.reserve(n); }

    // Runs BFS from s; `visit(d)` is called for every reached node other than s.
    template <typename Visit>
    std::uint32_t run(const StudentGraph& g, NodeId s, Visit visit) {
        queue.clear();
        queue.push_back(s);
        dist[s] = 0;
        std::uint32_t ecc = 0;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const NodeId u = queue[head];
            const auto du = dist[u];
            for (NodeId w : g.neighbours(u)) {
                if (dist[w] >= 0) continue;
                dist[w] = du + 1;
                ecc = static_cast<std::uint32_t>(du + 1);
                visit(static_cast<std::uint32_t>(du + 1));
                queue.push_back(w);
            }
        }
        for (NodeId v : queue) dist[v] = -1;
        return ecc;
    }
};

}  // namespace

std::vector<std::vector<NodeId>> connected_components(const StudentGraph& g) {
    const std::size_t n = g.node_count();
    std::vector<bool> seen(n, false);
    std::vector<std::vector<NodeId>> comps;
    std::vector<NodeId> stack;
    for (NodeId s = 0; s < n; ++s) {
        if (seen[s]) continue;
        std::vector<NodeId> comp;
        stack.assign(1, s);
        seen[s] = true;
        while (!stack.empty()) {
            NodeId u = stack.back();
            stack.pop_back();
            comp.push_back(u);
            for (NodeId w : g.neighbours(u)) {
                if (!seen[w]) {
                    seen[w] = true;
                    stack.push_back(w);
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    // Discovery order already ascends by smallest member; stable sort keeps it for ties.
    std::stable_sort(comps.begin(), comps.end(),
                     [](const auto& a, const auto& b) { return a.size() > b.size(); });
    return comps;
}

std::uint64_t DistanceProfile::reachable_pairs() const {
    return std::accumulate(ordered_pairs.begin(), ordered_pairs.end(), std::uint64_t{0});
}

std::uint64_t DistanceProfile::pairs_within(std::uint32_t k) const {
    std::uint64_t total = 0;
    for (std::size_t d = 1; d < ordered_pairs.size() && d <= k; ++d) total += ordered_pairs[d];
    return total;
}

DistanceProfile distance_profile(const StudentGraph& g, std::span<const NodeId> sources) {
    struct Acc {
        DistanceProfile profile;
        BfsScratch scratch;
    };
    const std::size_t n = g.node_count();
    Acc total{{}, BfsScratch(0)};
    ordered_reduce(
        sources.size(), 64, total, [&] { return Acc{{}, BfsScratch(n)}; },
        [&](Acc& acc, std::size_t item) {
            auto& p = acc.profile;
            const auto ecc = acc.scratch.run(g, sources[item], [&](std::uint32_t d) {
                if (d >= p.ordered_pairs.size()) p.ordered_pairs.resize(d + 1, 0);
                ++p.ordered_pairs[d];
                p.distance_sum += d;
            });
            p.max_distance = std::max(p.max_distance, ecc);
            ++p.sources;
        },
        [](Acc& into, Acc& part) {
            auto& a = into.profile;
            const auto& b = part.profile;
            if (b.ordered_pairs.size() > a.ordered_pairs.size())
                a.ordered_pairs.resize(b.ordered_pairs.size(), 0);
            for (std::size_t d = 0; d < b.ordered_pairs.size(); ++d)
                a.ordered_pairs[d] += b.ordered_pairs[d];
            a.distance_sum += b.distance_sum;
            a.max_distance = std::max(a.max_distance, b.max_distance);
            a.sources += b.sources;
        });
    return total.profile;
}

PathStatistics path_statistics(const StudentGraph& g, std::span<const NodeId> component,
                               const PathOptions& options) {
    const std::size_t n = component.size();
    if (n < 2) throw UndefinedMetricError("path length needs a component of at least 2 nodes");

    PathStatistics stats;
    if (n <= options.exact_node_limit || options.sample_sources >= n) {
        const auto profile = distance_profile(g, component);
        if (profile.reachable_pairs() != static_cast<std::uint64_t>(n) * (n - 1))
            throw UndefinedMetricError("path length requested on a disconnected node set");
        stats.average_geodesic =
            static_cast<double>(profile.distance_sum) / (static_cast<double>(n) * (n - 1));
        stats.diameter = profile.max_distance;
        return stats;
    }

    // Sampled estimator: mean of per-source mean distances over distinct random roots.
    std::vector<NodeId> roots(component.begin(), component.end());
    std::mt19937_64 rng(options.seed);
    const std::size_t s = options.sample_sources;
    for (std::size_t i = 0; i < s; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, n - 1);
        std::swap(roots[i], roots[pick(rng)]);
    }
    std::vector<double> per_source(s);
    std::vector<std::uint32_t> ecc(s);
    parallel_for(s, [&](std::size_t i) {
        BfsScratch scratch(g.node_count());
        std::uint64_t sum = 0;
        ecc[i] = scratch.run(g, roots[i], [&](std::uint32_t d) { sum += d; });
        per_source[i] = static_cast<double>(sum) / static_cast<double>(n - 1);
    });
    double mean = 0.0;
    for (double x : per_source) mean += x;
    mean /= static_cast<double>(s);
    double var = 0.0;
    for (double x : per_source) var += (x - mean) * (x - mean);
    var /= static_cast<double>(s > 1 ? s - 1 : 1);
    stats.average_geodesic = mean;
    stats.diameter = *std::max_element(ecc.begin(), ecc.end());
    stats.sampled = true;
    stats.standard_error = std::sqrt(var / static_cast<double>(s));
    return stats;
}

double average_geodesic(const StudentGraph& g, std::span<const NodeId> component) {
    return path_statistics(g, component).average_geodesic;
}

std::uint32_t diameter(const StudentGraph& g, std::span<const NodeId> component) {
    return path_statistics(g, component).diameter;
}

std::uint64_t triangles_at(const StudentGraph& g, NodeId v) {
    auto nv = g.neighbours(v);
    std::uint64_t twice = 0;
    for (NodeId u : nv) {
        auto nu = g.neighbours(u);
        // |N(u) ∩ N(v)| by sorted merge
        auto a = nv.begin(), b = nu.begin();
        while (a != nv.end() && b != nu.end()) {
            if (*a < *b) {
                ++a;
            } else if (*b < *a) {
                ++b;
            } else {
                ++twice;
                ++a;
                ++b;
            }
        }
    }
    return twice / 2;
}

double local_clustering(const StudentGraph& g, NodeId v) {
    const auto d = static_cast<double>(g.degree(v));
    if (d < 2) return 0.0;
    return 2.0 * static_cast<double>(triangles_at(g, v)) / (d * (d - 1.0));
}

double average_local_clustering(const StudentGraph& g, std::span<const NodeId> nodes) {
    const auto scope = or_all(g, nodes);
    if (scope.empty()) return 0.0;
    std::vector<double> c(scope.size());
    parallel_for(scope.size(), [&](std::size_t i) { c[i] = local_clustering(g, scope[i]); });
    double sum = 0.0;
    for (double x : c) sum += x;
    return sum / static_cast<double>(scope.size());
}

double global_transitivity(const StudentGraph& g, std::span<const NodeId> nodes) {
    const auto scope = or_all(g, nodes);
    std::vector<std::uint64_t> tri(scope.size());
    parallel_for(scope.size(), [&](std::size_t i) { tri[i] = triangles_at(g, scope[i]); });
    std::uint64_t closed = 0, triads = 0;
    for (std::size_t i = 0; i < scope.size(); ++i) {
        const std::uint64_t d = g.degree(scope[i]);
        closed += tri[i];  // each triangle counted once per corner = 3 * triangles
        triads += d < 2 ? 0 : d * (d - 1) / 2;
    }
    if (triads == 0) return 0.0;
    return static_cast<double>(closed) / static_cast<double>(triads);
}

ReachabilityCurve reachability_curve(const StudentGraph& g, std::uint32_t k_max) {
    if (k_max < 1) throw Error("k_max must be at least 1");
    ReachabilityCurve curve;
    const double n = static_cast<double>(g.node_count());
    if (g.node_count() == 0) {
        curve.rho.assign(k_max, 0.0);
        return curve;
    }
    const auto nodes = all_nodes(g);
    const auto profile = distance_profile(g, nodes);
    const double n2 = n * n;
    for (std::uint32_t k = 1; k <= k_max; ++k)
        curve.rho.push_back((n + static_cast<double>(profile.pairs_within(k))) / n2);
    std::uint64_t sq = 0;
    for (const auto& c : connected_components(g)) sq += static_cast<std::uint64_t>(c.size()) * c.size();
    curve.limit = static_cast<double>(sq) / n2;
    return curve;
}

double network_density(const StudentGraph& g, std::span<const NodeId> nodes) {
    const auto scope = or_all(g, nodes);
    const double n = static_cast<double>(scope.size());
    if (scope.size() < 2) throw UndefinedMetricError("density needs at least 2 nodes");
    const auto [m, hours] = induced_edges(g, scope);
    return 2.0 * static_cast<double>(m) / (n * (n - 1.0));
}

double average_degree(const StudentGraph& g, std::span<const NodeId> nodes) {
    const auto scope = or_all(g, nodes);
    if (scope.empty()) return 0.0;
    const auto [m, hours] = induced_edges(g, scope);
    return 2.0 * static_cast<double>(m) / static_cast<double>(scope.size());
}

double average_edge_weight(const StudentGraph& g, std::span<const NodeId> nodes) {
    const auto scope = or_all(g, nodes);
    const auto [m, hours] = induced_edges(g, scope);
    if (m == 0) return 0.0;
    return static_cast<double>(hours) / static_cast<double>(m);
}

double pairs_within_percent(const StudentGraph& g, std::uint32_t k, PairScope scope) {
    std::vector<NodeId> nodes;
    if (scope == PairScope::largest_component) {
        auto comps = connected_components(g);
        if (!comps.empty()) nodes = std::move(comps.front());
    } else {
        nodes = all_nodes(g);
    }
    const double n = static_cast<double>(nodes.size());
    if (nodes.size() < 2) return 0.0;
    const auto profile = distance_profile(g, nodes);
    return 100.0 * static_cast<double>(profile.pairs_within(k)) / (n * (n - 1.0));
}

MetricsReport component_report(const StudentGraph& g, std::span<const NodeId> component,
                               const PathOptions& options) {
    MetricsReport r;
    r.nodes_full = g.node_count();
    r.edges_full = g.edge_count();
    r.nodes_lcc = component.size();
    const auto [m, hours] = induced_edges(g, component);
    r.edges_lcc = m;
    r.avg_degree = average_degree(g, component);
    r.pct_in_largest_component =
        r.nodes_full == 0 ? 0.0
                          : 100.0 * static_cast<double>(r.nodes_lcc) / static_cast<double>(r.nodes_full);
    r.avg_edge_weight = m == 0 ? 0.0 : static_cast<double>(hours) / static_cast<double>(m);
    const auto paths = path_statistics(g, component, options);
    r.avg_geodesic = paths.average_geodesic;
    r.diameter = paths.diameter;
    r.geodesic_sampled = paths.sampled;
    r.local_clustering = average_local_clustering(g, component);
    r.global_transitivity = global_transitivity(g, component);
    r.network_density = network_density(g, component);
    return r;
}

MetricsReport full_report(const StudentGraph& g, const PathOptions& options) {
    const auto comps = connected_components(g);
    if (comps.empty()) throw UndefinedMetricError("metrics of an empty graph are undefined");
    return component_report(g, comps.front(), options);
}

}  // namespace coenroll
