#pragma once

#include <cstdio>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "coenroll/enrollment.hpp"
#include "coenroll/projection.hpp"

namespace testing_support {

inline std::string header6() { return "student_id,student_career,student_rank,section_id,course_code,delivery\n"; }
inline std::string header7() {
    return "student_id,student_career,student_rank,section_id,course_code,delivery,student_school\n";
}

inline coenroll::EnrollmentDataset parse(const std::string& csv) {
    std::istringstream in(csv);
    return coenroll::parse_enrollment(in).dataset;
}

inline std::string id(const char* prefix, std::size_t i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%s%03zu", prefix, i);
    return buf;
}

/// Graph on n nodes with the given undirected edges, all at `hours`.
inline coenroll::StudentGraph graph(std::size_t n, const std::vector<std::pair<int, int>>& edges,
                                    std::uint32_t hours = 3) {
    std::vector<coenroll::NodeAttributes> nodes(n);
    for (std::size_t i = 0; i < n; ++i) nodes[i].id = id("n", i);
    std::vector<coenroll::Edge> list;
    for (auto [u, v] : edges) {
        if (u > v) std::swap(u, v);
        list.push_back({static_cast<coenroll::NodeId>(u), static_cast<coenroll::NodeId>(v), {1, hours}});
    }
    return coenroll::StudentGraph::from_edges(std::move(nodes), std::move(list));
}

/// G(n, p) with random multiplicities and contact hours in [0, max_hours].
inline coenroll::StudentGraph random_graph(std::uint64_t seed, std::size_t n, double p,
                                           std::uint32_t max_hours = 6) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<std::uint32_t> shared(1, 3), hours(0, max_hours);
    std::vector<coenroll::NodeAttributes> nodes(n);
    for (std::size_t i = 0; i < n; ++i) nodes[i].id = id("n", i);
    std::vector<coenroll::Edge> edges;
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v)
            if (unit(rng) < p)
                edges.push_back({static_cast<coenroll::NodeId>(u), static_cast<coenroll::NodeId>(v),
                                 {shared(rng), hours(rng)}});
    return coenroll::StudentGraph::from_edges(std::move(nodes), std::move(edges));
}

/// Random enrollment dataset: `students` students spread over `sections`
/// sections with random course codes (contact digit 0..4).
inline coenroll::EnrollmentDataset random_dataset(std::uint64_t seed, std::size_t students,
                                                  std::size_t sections, double p) {
    static const char* prefixes[] = {"CS", "MATH", "GOVT", "HIST", "BIOL", "ACCT"};
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<int> level(1, 8), hours(0, 4), prefix(0, 5), course(0, 99);
    std::vector<std::string> codes(sections);
    for (auto& c : codes) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%s%d%d%02d", prefixes[prefix(rng)], level(rng), hours(rng), course(rng));
        c = buf;
    }
    std::ostringstream csv;
    csv << header6();
    for (std::size_t s = 0; s < students; ++s) {
        const bool grad = unit(rng) < 0.3;
        for (std::size_t j = 0; j < sections; ++j)
            if (unit(rng) < p)
                csv << id("S", s) << ',' << (grad ? "GR,MA," : "UG,JR,") << codes[j] << '.' << id("", j)
                    << ',' << codes[j] << ",P\n";
    }
    return parse(csv.str());
}

}  // namespace testing_support
