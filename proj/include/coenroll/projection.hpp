#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "coenroll/enrollment.hpp"

namespace coenroll {

using NodeId = std::uint32_t;

/// Two-mode student-by-section structure. Rows and columns use 0-based
/// indices that follow the dataset's id order.
struct IncidenceMatrix {
    std::size_t n = 0;  // students
    std::size_t m = 0;  // sections
    std::vector<std::pair<NodeId, std::uint32_t>> entries;  // (row, column), sorted
    std::vector<std::string> student_ids;
    std::vector<std::string> section_ids;
    std::vector<int> section_contact_hours;
    std::vector<Student> students;
};

IncidenceMatrix build_incidence(const EnrollmentDataset& d);

struct NodeAttributes {
    std::string id;
    Career career = Career::undergraduate;
    Rank rank = Rank::unspecified;
    School school = School::unspecified;
    std::uint32_t own_sections = 0;  // diagonal of D * D^T
};

struct EdgeData {
    std::uint32_t shared_sections = 0;
    std::uint32_t contact_hours = 0;  // sum of weekly hours over shared sections
    friend bool operator==(const EdgeData&, const EdgeData&) = default;
};

struct Edge {
    NodeId u;  // u < v
    NodeId v;
    EdgeData data;
};

/// Default weighted-view weight for pairs whose shared sections meet 0 hours/week.
inline constexpr double default_zero_contact_weight = 1e6;

/// One-mode student graph in compressed adjacency form. Neighbour lists are
/// sorted ascending; every undirected edge is stored in both directions with
/// identical EdgeData. Node indices follow ascending student id.
class StudentGraph {
public:
    StudentGraph() = default;

    /// Builds from an edge list; duplicate (u, v) entries are merged by summing.
    static StudentGraph from_edges(std::vector<NodeAttributes> nodes, std::vector<Edge> edges,
                                   double zero_contact_weight = default_zero_contact_weight);

    std::size_t node_count() const { return nodes_.size(); }
    std::size_t edge_count() const { return neighbours_.size() / 2; }

    const NodeAttributes& node(NodeId v) const { return nodes_[v]; }
    const std::vector<NodeAttributes>& nodes() const { return nodes_; }

    std::span<const NodeId> neighbours(NodeId v) const {
        return std::span(neighbours_).subspan(offsets_[v], offsets_[v + 1] - offsets_[v]);
    }
    std::span<const EdgeData> edge_data(NodeId v) const {
        return std::span(edge_data_).subspan(offsets_[v], offsets_[v + 1] - offsets_[v]);
    }
    std::size_t degree(NodeId v) const { return offsets_[v + 1] - offsets_[v]; }

    /// Weighted-view edge weight: 1 / contact_hours, or the zero-contact constant.
    double weighted_length(const EdgeData& e) const {
        return e.contact_hours == 0 ? zero_contact_weight_ : 1.0 / e.contact_hours;
    }
    double zero_contact_weight() const { return zero_contact_weight_; }

    /// Edge data for (u, v), or nullptr when not adjacent.
    const EdgeData* find_edge(NodeId u, NodeId v) const;

    /// All undirected edges with u < v, ordered by (u, v).
    std::vector<Edge> edges() const;

    /// Subgraph on the given nodes (renumbered in ascending order of the input ids).
    StudentGraph induced(std::span<const NodeId> nodes) const;

private:
    std::vector<NodeAttributes> nodes_;
    std::vector<std::size_t> offsets_{0};
    std::vector<NodeId> neighbours_;
    std::vector<EdgeData> edge_data_;
    double zero_contact_weight_ = default_zero_contact_weight;
};

/// Section-by-section one-mode projection of D * D^T.
StudentGraph project(const IncidenceMatrix& dm,
                     double zero_contact_weight = default_zero_contact_weight);

/// Convenience: project(build_incidence(d)).
StudentGraph build_student_graph(const EnrollmentDataset& d,
                                 double zero_contact_weight = default_zero_contact_weight);

/// Unit-weight view of a StudentGraph with A_binary[i][i] = 1.
class BinaryView {
public:
    explicit BinaryView(const StudentGraph& g) : g_(&g) {}

    std::size_t node_count() const { return g_->node_count(); }
    std::span<const NodeId> neighbours(NodeId v) const { return g_->neighbours(v); }
    int weight(NodeId u, NodeId v) const { return entry(u, v); }
    /// A_binary[u][v], including the unit diagonal.
    int entry(NodeId u, NodeId v) const { return u == v || g_->find_edge(u, v) ? 1 : 0; }
    std::size_t edge_count() const { return g_->edge_count(); }
    /// Non-zero entries of A_binary: n diagonal plus both directions of each edge.
    std::size_t nonzero_entries() const { return node_count() + 2 * edge_count(); }
    double entry_density() const;

private:
    const StudentGraph* g_;
};

inline BinaryView binary_view(const StudentGraph& g) { return BinaryView(g); }

/// Edge-list dump: header then src_id,dst_id,shared_sections,contact_hours with
/// src_id < dst_id.
void write_edge_list(std::ostream& out, const StudentGraph& g);

}  // namespace coenroll
