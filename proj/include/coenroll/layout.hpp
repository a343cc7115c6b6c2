#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "coenroll/projection.hpp"

namespace coenroll {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

/// Node positions in the unit square plus the attributes used for colouring
/// (school) and sizing (normalized betweenness).
struct LayoutCoordinates {
    std::vector<Point> positions;
    std::vector<double> betweenness;  // normalized; empty when not supplied
};

struct LayoutOptions {
    std::size_t iterations = 200;
    std::uint64_t seed = 1;
    /// Above this node count repulsion only acts within 2k (grid buckets).
    std::size_t exact_repulsion_limit = 2'000;
};

/// Fruchterman-Reingold on the unit square: repulsion k^2/d, attraction d^2/k
/// with k = sqrt(1/n), temperature cooling linearly from 0.1 to 0.
LayoutCoordinates layout_fr(const StudentGraph& g, const LayoutOptions& options = {});

/// CSV: node_id,x,y,school,b_norm.
void write_layout(std::ostream& out, const StudentGraph& g, const LayoutCoordinates& layout);

}  // namespace coenroll
