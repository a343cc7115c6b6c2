#include "coenroll/layout.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>
#include <unordered_map>

#include <fmt/format.h>

#include "coenroll/parallel.hpp"

namespace coenroll {

namespace {

constexpr double min_distance = 1e-9;

Point repulse(const Point& a, const Point& b, double k2) {
    double dx = a.x - b.x, dy = a.y - b.y;
    double d = std::hypot(dx, dy);
    if (d < min_distance) {
        // Coincident nodes: push apart along a fixed axis.
        dx = min_distance;
        dy = 0.0;
        d = min_distance;
    }
    const double f = k2 / d;
    return {dx / d * f, dy / d * f};
}

}  // namespace

LayoutCoordinates layout_fr(const StudentGraph& g, const LayoutOptions& options) {
    const std::size_t n = g.node_count();
    LayoutCoordinates out;
    out.positions.resize(n);
    if (n == 0) return out;
    if (n == 1) {
        out.positions[0] = {0.5, 0.5};
        return out;
    }

    std::mt19937_64 rng(options.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (auto& p : out.positions) {
        p.x = unit(rng);
        p.y = unit(rng);
    }

    const double k = std::sqrt(1.0 / static_cast<double>(n));
    const double k2 = k * k;
    const bool exact = n <= options.exact_repulsion_limit;
    const double cell = 2.0 * k;
    const auto cells_per_side = static_cast<long>(std::ceil(1.0 / cell));
    std::vector<Point> disp(n);
    auto& pos = out.positions;

    for (std::size_t it = 0; it < options.iterations; ++it) {
        const double temperature =
            0.1 * (1.0 - static_cast<double>(it) / static_cast<double>(options.iterations));

        if (exact) {
            parallel_for(n, [&](std::size_t v) {
                Point d{};
                for (std::size_t u = 0; u < n; ++u) {
                    if (u == v) continue;
                    const auto f = repulse(pos[v], pos[u], k2);
                    d.x += f.x;
                    d.y += f.y;
                }
                disp[v] = d;
            });
        } else {
            std::unordered_map<long, std::vector<NodeId>> grid;
            auto cell_of = [&](const Point& p) {
                const long cx = std::clamp(static_cast<long>(p.x / cell), 0L, cells_per_side - 1);
                const long cy = std::clamp(static_cast<long>(p.y / cell), 0L, cells_per_side - 1);
                return std::pair{cx, cy};
            };
            for (NodeId v = 0; v < n; ++v) {
                auto [cx, cy] = cell_of(pos[v]);
                grid[cx * cells_per_side + cy].push_back(v);
            }
            parallel_for(n, [&](std::size_t v) {
                Point d{};
                auto [cx, cy] = cell_of(pos[v]);
                for (long ox = -1; ox <= 1; ++ox) {
                    for (long oy = -1; oy <= 1; ++oy) {
                        const long gx = cx + ox, gy = cy + oy;
                        if (gx < 0 || gy < 0 || gx >= cells_per_side || gy >= cells_per_side) continue;
                        auto found = grid.find(gx * cells_per_side + gy);
                        if (found == grid.end()) continue;
                        for (NodeId u : found->second) {
                            if (u == v) continue;
                            if (std::hypot(pos[v].x - pos[u].x, pos[v].y - pos[u].y) > cell) continue;
                            const auto f = repulse(pos[v], pos[u], k2);
                            d.x += f.x;
                            d.y += f.y;
                        }
                    }
                }
                disp[v] = d;
            });
        }

        // Attraction along edges, accumulated per node in neighbour order.
        parallel_for(n, [&](std::size_t v) {
            for (NodeId u : g.neighbours(static_cast<NodeId>(v))) {
                const double dx = pos[v].x - pos[u].x, dy = pos[v].y - pos[u].y;
                const double d = std::hypot(dx, dy);
                if (d < min_distance) continue;
                const double f = d * d / k;
                disp[v].x -= dx / d * f;
                disp[v].y -= dy / d * f;
            }
        });

        for (std::size_t v = 0; v < n; ++v) {
            const double len = std::hypot(disp[v].x, disp[v].y);
            if (len > 0.0) {
                const double step = std::min(len, temperature);
                pos[v].x += disp[v].x / len * step;
                pos[v].y += disp[v].y / len * step;
            }
            pos[v].x = std::clamp(pos[v].x, 0.0, 1.0);
            pos[v].y = std::clamp(pos[v].y, 0.0, 1.0);
        }
    }
    return out;
}

void write_layout(std::ostream& out, const StudentGraph& g, const LayoutCoordinates& layout) {
    out << "node_id,x,y,school,b_norm\n";
    for (NodeId v = 0; v < g.node_count(); ++v) {
        const double b = layout.betweenness.empty() ? 0.0 : layout.betweenness[v];
        out << fmt::format("{},{},{},{},{}\n", g.node(v).id, layout.positions[v].x,
                           layout.positions[v].y, to_string(g.node(v).school), b);
    }
}

}  // namespace coenroll
