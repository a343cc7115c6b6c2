#include "coenroll/centrality.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <queue>

#include "coenroll/error.hpp"
#include "coenroll/metrics.hpp"
#include "coenroll/parallel.hpp"

namespace coenroll {

std::string_view to_string(PathMode m) { return m == PathMode::unweighted ? "unweighted" : "weighted"; }

std::optional<PathMode> parse_path_mode(std::string_view text) {
    if (text == "unweighted") return PathMode::unweighted;
    if (text == "weighted") return PathMode::weighted;
    return std::nullopt;
}

namespace {

bool same_length(double a, double b) {
    return std::abs(a - b) <= weighted_length_epsilon * std::max(std::abs(a), std::abs(b));
}

// Single-source shortest-path DAG plus dependency accumulation.
//
// sigma(w) is computed when w is settled, from already-settled neighbours
// satisfying the predecessor test; the back-propagation uses the same test, so
// both passes see the same DAG even under the weighted tolerance.
class BrandesPass {
public:
    BrandesPass(const StudentGraph& g, PathMode mode)
        : g_(g), mode_(mode), dist_(g.node_count(), -1.0), sigma_(g.node_count(), 0.0),
          delta_(g.node_count(), 0.0), settled_(g.node_count(), false) {
        order_.reserve(g.node_count());
    }

    void run(NodeId s, std::vector<double>& scores) {
        if (mode_ == PathMode::unweighted)
            explore_unweighted(s);
        else
            explore_weighted(s);

        for (auto it = order_.rbegin(); it != order_.rend(); ++it) {
            const NodeId w = *it;
            const double coeff = (1.0 + delta_[w]) / sigma_[w];
            auto nb = g_.neighbours(w);
            auto data = g_.edge_data(w);
            for (std::size_t k = 0; k < nb.size(); ++k)
                if (is_predecessor(nb[k], w, data[k])) delta_[nb[k]] += sigma_[nb[k]] * coeff;
            if (w != s) scores[w] += delta_[w];
        }
        for (NodeId v : order_) {
            dist_[v] = -1.0;
            sigma_[v] = 0.0;
            delta_[v] = 0.0;
            settled_[v] = false;
        }
        order_.clear();
    }

private:
    double length(const EdgeData& e) const {
        return mode_ == PathMode::unweighted ? 1.0 : g_.weighted_length(e);
    }

    bool is_predecessor(NodeId v, NodeId w, const EdgeData& e) const {
        if (!settled_[v] || v == w) return false;
        if (mode_ == PathMode::unweighted) return dist_[v] + 1.0 == dist_[w];
        return dist_[v] < dist_[w] && same_length(dist_[v] + length(e), dist_[w]);
    }

    void settle(NodeId w, NodeId s) {
        settled_[w] = true;
        order_.push_back(w);
        if (w == s) {
            sigma_[w] = 1.0;
            return;
        }
        double sigma = 0.0;
        auto nb = g_.neighbours(w);
        auto data = g_.edge_data(w);
        for (std::size_t k = 0; k < nb.size(); ++k)
            if (is_predecessor(nb[k], w, data[k])) sigma += sigma_[nb[k]];
        sigma_[w] = sigma;
    }

    void explore_unweighted(NodeId s) {
        dist_[s] = 0.0;
        queue_.clear();
        queue_.push_back(s);
        for (std::size_t head = 0; head < queue_.size(); ++head) {
            const NodeId v = queue_[head];
            settle(v, s);
            for (NodeId w : g_.neighbours(v)) {
                if (dist_[w] >= 0.0) continue;
                dist_[w] = dist_[v] + 1.0;
                queue_.push_back(w);
            }
        }
    }

    void explore_weighted(NodeId s) {
        using Item = std::pair<double, NodeId>;
        std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
        dist_[s] = 0.0;
        heap.emplace(0.0, s);
        while (!heap.empty()) {
            const auto [d, v] = heap.top();
            heap.pop();
            if (settled_[v] || d != dist_[v]) continue;
            settle(v, s);
            auto nb = g_.neighbours(v);
            auto data = g_.edge_data(v);
            for (std::size_t k = 0; k < nb.size(); ++k) {
                const NodeId w = nb[k];
                if (settled_[w]) continue;
                const double len = length(data[k]);
                if (len < 0.0) throw Error("negative edge length in weighted betweenness");
                const double alt = d + len;
                if (dist_[w] < 0.0 || (alt < dist_[w] && !same_length(alt, dist_[w]))) {
                    dist_[w] = alt;
                    heap.emplace(alt, w);
                }
            }
        }
    }

    const StudentGraph& g_;
    PathMode mode_;
    std::vector<double> dist_, sigma_, delta_;
    std::vector<bool> settled_;
    std::vector<NodeId> order_, queue_;
};

}  // namespace

CentralityResult betweenness(const StudentGraph& g, PathMode mode) {
    const std::size_t n = g.node_count();
    struct Acc {
        std::vector<double> scores;
        std::unique_ptr<BrandesPass> pass;
    };
    Acc total{std::vector<double>(n, 0.0), nullptr};
    ordered_reduce(
        n, 32, total,
        [&] { return Acc{std::vector<double>(n, 0.0), std::make_unique<BrandesPass>(g, mode)}; },
        [&](Acc& acc, std::size_t s) { acc.pass->run(static_cast<NodeId>(s), acc.scores); },
        [](Acc& into, Acc& part) {
            for (std::size_t v = 0; v < into.scores.size(); ++v) into.scores[v] += part.scores[v];
        });

    CentralityResult r;
    r.mode = mode;
    r.raw = std::move(total.scores);
    // Every unordered pair was visited from both ends.
    for (double& b : r.raw) b /= 2.0;

    r.normalized.assign(n, 0.0);
    for (const auto& comp : connected_components(g)) {
        const double size = static_cast<double>(comp.size());
        if (comp.size() < 3) continue;
        const double scale = 2.0 / ((size - 1.0) * (size - 2.0));
        for (NodeId v : comp) r.normalized[v] = r.raw[v] * scale;
    }

    r.ranking.resize(n);
    std::iota(r.ranking.begin(), r.ranking.end(), NodeId{0});
    std::stable_sort(r.ranking.begin(), r.ranking.end(),
                     [&](NodeId a, NodeId b) { return r.raw[a] > r.raw[b]; });
    return r;
}

PivotalSet pivotal_students(const StudentGraph& g, const CentralityResult& c, std::size_t k) {
    if (k < 1) throw Error("pivotal set size must be at least 1");
    PivotalSet p;
    const std::size_t take = std::min(k, c.ranking.size());
    p.nodes.assign(c.ranking.begin(), c.ranking.begin() + static_cast<std::ptrdiff_t>(take));
    for (NodeId v : p.nodes) p.student_ids.push_back(g.node(v).id);
    return p;
}

PivotalSet pivotal_students(const StudentGraph& g, PathMode mode, std::size_t k) {
    return pivotal_students(g, betweenness(g, mode), k);
}

std::vector<CourseTally> pivotal_course_tally(const EnrollmentDataset& d, const PivotalSet& p) {
    std::map<std::string, std::uint32_t> counts;
    for (const auto& id : p.student_ids) {
        auto st = d.find_student(id);
        if (!st) throw Error("pivotal student '" + id + "' is not in the dataset");
        for (auto sec : d.sections_of(*st)) ++counts[d.sections()[sec].course_code];
    }
    std::vector<CourseTally> out;
    out.reserve(counts.size());
    for (auto& [code, count] : counts) out.push_back({code, count});
    // map order gives code asc; stable sort keeps it for equal counts.
    std::stable_sort(out.begin(), out.end(),
                     [](const CourseTally& a, const CourseTally& b) { return a.count > b.count; });
    return out;
}

}  // namespace coenroll
