#include "coenroll/projection.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>

#include "coenroll/error.hpp"

namespace coenroll {

IncidenceMatrix build_incidence(const EnrollmentDataset& d) {
    if (d.empty()) throw EmptyDatasetError("cannot build incidence of an empty dataset");
    IncidenceMatrix dm;
    dm.n = d.students().size();
    dm.m = d.sections().size();
    dm.entries.reserve(d.enrollments().size());
    for (const auto& e : d.enrollments()) dm.entries.emplace_back(e.student, e.section);
    dm.student_ids.reserve(dm.n);
    for (const auto& s : d.students()) dm.student_ids.push_back(s.id);
    dm.students = d.students();
    for (const auto& s : d.sections()) {
        dm.section_ids.push_back(s.id);
        dm.section_contact_hours.push_back(s.weekly_contact_hours);
    }
    return dm;
}

StudentGraph StudentGraph::from_edges(std::vector<NodeAttributes> nodes, std::vector<Edge> edges,
                                      double zero_contact_weight) {
    const std::size_t n = nodes.size();
    for (auto& e : edges) {
        if (e.u == e.v) throw Error("self-loop edges are not allowed");
        if (e.u >= n || e.v >= n) throw Error("edge endpoint out of range");
        if (e.u > e.v) std::swap(e.u, e.v);
    }
    std::sort(edges.begin(), edges.end(),
              [](const Edge& a, const Edge& b) { return std::tie(a.u, a.v) < std::tie(b.u, b.v); });
    std::vector<Edge> merged;
    for (const auto& e : edges) {
        if (!merged.empty() && merged.back().u == e.u && merged.back().v == e.v) {
            merged.back().data.shared_sections += e.data.shared_sections;
            merged.back().data.contact_hours += e.data.contact_hours;
        } else {
            merged.push_back(e);
        }
    }

    StudentGraph g;
    g.nodes_ = std::move(nodes);
    g.zero_contact_weight_ = zero_contact_weight;
    g.offsets_.assign(n + 1, 0);
    for (const auto& e : merged) {
        ++g.offsets_[e.u + 1];
        ++g.offsets_[e.v + 1];
    }
    std::partial_sum(g.offsets_.begin(), g.offsets_.end(), g.offsets_.begin());
    g.neighbours_.resize(2 * merged.size());
    g.edge_data_.resize(2 * merged.size());
    auto fill = g.offsets_;
    // Edges sorted by (u, v): appending v to u and u to v keeps each list ascending
    // because, for a fixed node w, entries with u < w arrive before entries with u = w.
    for (const auto& e : merged) {
        g.neighbours_[fill[e.u]] = e.v;
        g.edge_data_[fill[e.u]++] = e.data;
        g.neighbours_[fill[e.v]] = e.u;
        g.edge_data_[fill[e.v]++] = e.data;
    }
    return g;
}

const EdgeData* StudentGraph::find_edge(NodeId u, NodeId v) const {
    auto nb = neighbours(u);
    auto it = std::lower_bound(nb.begin(), nb.end(), v);
    if (it == nb.end() || *it != v) return nullptr;
    return &edge_data_[offsets_[u] + static_cast<std::size_t>(it - nb.begin())];
}

std::vector<Edge> StudentGraph::edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count());
    for (NodeId u = 0; u < node_count(); ++u) {
        auto nb = neighbours(u);
        auto data = edge_data(u);
        for (std::size_t k = 0; k < nb.size(); ++k)
            if (u < nb[k]) out.push_back({u, nb[k], data[k]});
    }
    return out;
}

StudentGraph StudentGraph::induced(std::span<const NodeId> nodes) const {
    std::vector<NodeId> sorted(nodes.begin(), nodes.end());
    std::sort(sorted.begin(), sorted.end());
    constexpr auto absent = static_cast<NodeId>(-1);
    std::vector<NodeId> remap(node_count(), absent);
    std::vector<NodeAttributes> attrs;
    attrs.reserve(sorted.size());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        remap[sorted[i]] = static_cast<NodeId>(i);
        attrs.push_back(nodes_[sorted[i]]);
    }
    std::vector<Edge> kept;
    for (NodeId u : sorted) {
        auto nb = neighbours(u);
        auto data = edge_data(u);
        for (std::size_t k = 0; k < nb.size(); ++k)
            if (u < nb[k] && remap[nb[k]] != absent) kept.push_back({remap[u], remap[nb[k]], data[k]});
    }
    return from_edges(std::move(attrs), std::move(kept), zero_contact_weight_);
}

StudentGraph project(const IncidenceMatrix& dm, double zero_contact_weight) {
    // Column lists: students per section.
    std::vector<std::vector<NodeId>> members(dm.m);
    std::vector<std::vector<std::uint32_t>> sections_of(dm.n);
    for (const auto& [i, j] : dm.entries) {
        members[j].push_back(i);
        sections_of[i].push_back(j);
    }

    std::vector<NodeAttributes> nodes(dm.n);
    for (std::size_t i = 0; i < dm.n; ++i) {
        const auto& s = dm.students[i];
        nodes[i] = {s.id, s.career, s.rank, s.school,
                    static_cast<std::uint32_t>(sections_of[i].size())};
    }

    // For each student, sweep its sections' member lists into a scratch row.
    // Only partners j > i are kept so each pair is emitted once.
    std::vector<Edge> edges;
    std::vector<EdgeData> row(dm.n);
    std::vector<NodeId> touched;
    for (NodeId i = 0; i < dm.n; ++i) {
        touched.clear();
        for (auto j : sections_of[i]) {
            const auto hours = static_cast<std::uint32_t>(dm.section_contact_hours[j]);
            for (NodeId other : members[j]) {
                if (other <= i) continue;
                if (row[other].shared_sections == 0) touched.push_back(other);
                ++row[other].shared_sections;
                row[other].contact_hours += hours;
            }
        }
        std::sort(touched.begin(), touched.end());
        for (NodeId other : touched) {
            edges.push_back({i, other, row[other]});
            row[other] = {};
        }
    }
    return StudentGraph::from_edges(std::move(nodes), std::move(edges), zero_contact_weight);
}

StudentGraph build_student_graph(const EnrollmentDataset& d, double zero_contact_weight) {
    return project(build_incidence(d), zero_contact_weight);
}

double BinaryView::entry_density() const {
    const double n = static_cast<double>(node_count());
    return n == 0 ? 0.0 : static_cast<double>(nonzero_entries()) / (n * n);
}

void write_edge_list(std::ostream& out, const StudentGraph& g) {
    out << "src_id,dst_id,shared_sections,contact_hours\n";
    for (const auto& e : g.edges())
        out << g.node(e.u).id << ',' << g.node(e.v).id << ',' << e.data.shared_sections << ','
            << e.data.contact_hours << '\n';
}

}  // namespace coenroll
