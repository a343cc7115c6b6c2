#pragma once

// Brute-force reference implementations. Everything here works on dense
// matrices and shares no code with the library beyond reading a graph's
// adjacency, so agreement is evidence rather than tautology.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <vector>

#include "coenroll/projection.hpp"

namespace oracle {

using Matrix = std::vector<std::vector<int>>;
using RealMatrix = std::vector<std::vector<double>>;

inline constexpr double inf = std::numeric_limits<double>::infinity();

struct DenseGraph {
    std::size_t n = 0;
    Matrix adj;          // 0/1, zero diagonal
    RealMatrix length;   // weighted edge length, inf when absent
    Matrix contact;      // contact hours per edge
};

inline DenseGraph dense(const coenroll::StudentGraph& g) {
    DenseGraph d;
    d.n = g.node_count();
    d.adj.assign(d.n, std::vector<int>(d.n, 0));
    d.length.assign(d.n, std::vector<double>(d.n, inf));
    d.contact.assign(d.n, std::vector<int>(d.n, 0));
    for (const auto& e : g.edges()) {
        d.adj[e.u][e.v] = d.adj[e.v][e.u] = 1;
        const double w = e.data.contact_hours == 0 ? g.zero_contact_weight() : 1.0 / e.data.contact_hours;
        d.length[e.u][e.v] = d.length[e.v][e.u] = w;
        d.contact[e.u][e.v] = d.contact[e.v][e.u] = static_cast<int>(e.data.contact_hours);
    }
    return d;
}

inline bool same_length(double a, double b) {
    if (a == b) return true;
    return std::abs(a - b) <= 1e-12 * std::max(std::abs(a), std::abs(b));
}

/// Hop distances; -1 when unreachable.
inline Matrix floyd_warshall(const DenseGraph& g) {
    constexpr int none = std::numeric_limits<int>::max() / 4;
    Matrix d(g.n, std::vector<int>(g.n, none));
    for (std::size_t i = 0; i < g.n; ++i) {
        d[i][i] = 0;
        for (std::size_t j = 0; j < g.n; ++j)
            if (g.adj[i][j]) d[i][j] = 1;
    }
    for (std::size_t k = 0; k < g.n; ++k)
        for (std::size_t i = 0; i < g.n; ++i)
            for (std::size_t j = 0; j < g.n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
    for (auto& row : d)
        for (auto& x : row)
            if (x >= none) x = -1;
    return d;
}

inline RealMatrix floyd_warshall_weighted(const DenseGraph& g) {
    RealMatrix d = g.length;
    for (std::size_t i = 0; i < g.n; ++i) d[i][i] = 0.0;
    for (std::size_t k = 0; k < g.n; ++k)
        for (std::size_t i = 0; i < g.n; ++i)
            for (std::size_t j = 0; j < g.n; ++j)
                if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
    return d;
}

/// Components by union-find, as sorted member lists sorted by (size desc, first member).
inline std::vector<std::vector<std::uint32_t>> components(const DenseGraph& g) {
    std::vector<std::size_t> parent(g.n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
        return parent[x] == x ? x : parent[x] = find(parent[x]);
    };
    for (std::size_t i = 0; i < g.n; ++i)
        for (std::size_t j = i + 1; j < g.n; ++j)
            if (g.adj[i][j]) parent[find(i)] = find(j);
    std::vector<std::vector<std::uint32_t>> by_root(g.n);
    for (std::size_t i = 0; i < g.n; ++i) by_root[find(i)].push_back(static_cast<std::uint32_t>(i));
    std::vector<std::vector<std::uint32_t>> out;
    for (auto& c : by_root)
        if (!c.empty()) out.push_back(c);
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        return a.size() != b.size() ? a.size() > b.size() : a.front() < b.front();
    });
    return out;
}

struct PathTotals {
    std::uint64_t pairs = 0;  // unordered reachable pairs
    std::uint64_t sum = 0;
    int diameter = 0;
};

inline PathTotals path_totals(const Matrix& dist, const std::vector<std::uint32_t>& nodes) {
    PathTotals t;
    for (std::size_t a = 0; a < nodes.size(); ++a)
        for (std::size_t b = a + 1; b < nodes.size(); ++b) {
            const int d = dist[nodes[a]][nodes[b]];
            if (d < 0) continue;
            ++t.pairs;
            t.sum += static_cast<std::uint64_t>(d);
            t.diameter = std::max(t.diameter, d);
        }
    return t;
}

/// Non-zero entries of (A + I)^k by repeated dense boolean products.
inline std::vector<std::uint64_t> boolean_power_nonzeros(const DenseGraph& g, int k_max) {
    const std::size_t n = g.n;
    Matrix a(n, std::vector<int>(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
        a[i][i] = 1;
        for (std::size_t j = 0; j < n; ++j)
            if (g.adj[i][j]) a[i][j] = 1;
    }
    std::vector<std::uint64_t> out;
    Matrix p = a;
    for (int k = 1; k <= k_max; ++k) {
        if (k > 1) {
            Matrix next(n, std::vector<int>(n, 0));
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t l = 0; l < n; ++l)
                    if (p[i][l])
                        for (std::size_t j = 0; j < n; ++j)
                            if (a[l][j]) next[i][j] = 1;
            p = std::move(next);
        }
        std::uint64_t nz = 0;
        for (const auto& row : p)
            for (int x : row) nz += x != 0;
        out.push_back(nz);
    }
    return out;
}

struct Triangles {
    std::vector<std::uint64_t> at;     // per node
    std::vector<std::uint64_t> triads; // C(d, 2) per node, by enumeration
};

/// Enumerates every neighbour pair of every node.
inline Triangles triangles(const DenseGraph& g) {
    Triangles t{std::vector<std::uint64_t>(g.n, 0), std::vector<std::uint64_t>(g.n, 0)};
    for (std::size_t v = 0; v < g.n; ++v)
        for (std::size_t a = 0; a < g.n; ++a)
            for (std::size_t b = a + 1; b < g.n; ++b) {
                if (!g.adj[v][a] || !g.adj[v][b]) continue;
                ++t.triads[v];
                if (g.adj[a][b]) ++t.at[v];
            }
    return t;
}

/// Betweenness from shortest-path counts: b(v) = sum over s<t of
/// sigma(s,v) sigma(v,t) / sigma(s,t) where v lies on a geodesic.
inline std::vector<double> naive_betweenness(const DenseGraph& g, bool weighted) {
    const std::size_t n = g.n;
    RealMatrix dist(n, std::vector<double>(n));
    if (weighted) {
        dist = floyd_warshall_weighted(g);
    } else {
        const auto hops = floyd_warshall(g);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) dist[i][j] = hops[i][j] < 0 ? inf : hops[i][j];
    }
    auto len = [&](std::size_t u, std::size_t v) { return weighted ? g.length[u][v] : 1.0; };

    RealMatrix sigma(n, std::vector<double>(n, 0.0));
    for (std::size_t s = 0; s < n; ++s) {
        std::vector<std::size_t> order;
        for (std::size_t t = 0; t < n; ++t)
            if (dist[s][t] < inf) order.push_back(t);
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return dist[s][a] < dist[s][b]; });
        sigma[s][s] = 1.0;
        for (std::size_t t : order) {
            if (t == s) continue;
            for (std::size_t u = 0; u < n; ++u)
                if (g.adj[u][t] && dist[s][u] < inf && same_length(dist[s][u] + len(u, t), dist[s][t]))
                    sigma[s][t] += sigma[s][u];
        }
    }
    std::vector<double> b(n, 0.0);
    for (std::size_t s = 0; s < n; ++s)
        for (std::size_t t = s + 1; t < n; ++t) {
            if (dist[s][t] == inf) continue;
            for (std::size_t v = 0; v < n; ++v) {
                if (v == s || v == t || dist[s][v] == inf || dist[v][t] == inf) continue;
                if (same_length(dist[s][v] + dist[v][t], dist[s][t]))
                    b[v] += sigma[s][v] * sigma[v][t] / sigma[s][t];
            }
        }
    return b;
}

/// Enumerates every simple path (tiny graphs only) and counts geodesics by hand.
inline std::vector<double> enumerated_betweenness(const DenseGraph& g) {
    const std::size_t n = g.n;
    std::vector<double> b(n, 0.0);
    for (std::size_t s = 0; s < n; ++s)
        for (std::size_t t = s + 1; t < n; ++t) {
            std::vector<std::vector<std::size_t>> paths;
            std::vector<std::size_t> path{s};
            std::vector<bool> seen(n, false);
            seen[s] = true;
            std::function<void(std::size_t)> walk = [&](std::size_t v) {
                if (v == t) {
                    paths.push_back(path);
                    return;
                }
                for (std::size_t u = 0; u < n; ++u) {
                    if (!g.adj[v][u] || seen[u]) continue;
                    seen[u] = true;
                    path.push_back(u);
                    walk(u);
                    path.pop_back();
                    seen[u] = false;
                }
            };
            walk(s);
            if (paths.empty()) continue;
            std::size_t shortest = paths.front().size();
            for (const auto& p : paths) shortest = std::min(shortest, p.size());
            double total = 0;
            std::vector<double> through(n, 0.0);
            for (const auto& p : paths) {
                if (p.size() != shortest) continue;
                total += 1;
                for (std::size_t i = 1; i + 1 < p.size(); ++i) through[p[i]] += 1;
            }
            for (std::size_t v = 0; v < n; ++v) b[v] += through[v] / total;
        }
    return b;
}

/// Dense D * D^T and the contact-hour weighted product.
struct DenseProjection {
    Matrix shared;
    Matrix contact;
};

inline DenseProjection dense_projection(const coenroll::IncidenceMatrix& dm) {
    Matrix d(dm.n, std::vector<int>(dm.m, 0));
    for (const auto& [row, col] : dm.entries) d[row][col] = 1;
    DenseProjection p{Matrix(dm.n, std::vector<int>(dm.n, 0)), Matrix(dm.n, std::vector<int>(dm.n, 0))};
    for (std::size_t i = 0; i < dm.n; ++i)
        for (std::size_t j = 0; j < dm.n; ++j)
            for (std::size_t s = 0; s < dm.m; ++s) {
                p.shared[i][j] += d[i][s] * d[j][s];
                p.contact[i][j] += d[i][s] * d[j][s] * dm.section_contact_hours[s];
            }
    return p;
}

}  // namespace oracle
