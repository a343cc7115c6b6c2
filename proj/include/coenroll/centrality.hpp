#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "coenroll/enrollment.hpp"
#include "coenroll/projection.hpp"

namespace coenroll {

enum class PathMode { unweighted, weighted };

std::string_view to_string(PathMode m);
std::optional<PathMode> parse_path_mode(std::string_view text);

/// Relative tolerance under which two weighted path lengths count as equal.
inline constexpr double weighted_length_epsilon = 1e-12;

struct CentralityResult {
    PathMode mode = PathMode::unweighted;
    std::vector<double> raw;         // b_v, unordered (s, t) pairs
    std::vector<double> normalized;  // 2 b_v / ((n-1)(n-2)), n = component size
    std::vector<NodeId> ranking;     // by raw desc, then node index asc
};

/// Exact Brandes betweenness. Unweighted mode uses hop counts; weighted mode
/// uses edge length 1 / contact_hours. Parallel over sources with a reduction
/// order that does not depend on the thread count.
CentralityResult betweenness(const StudentGraph& g, PathMode mode);

struct PivotalSet {
    std::vector<NodeId> nodes;  // in ranking order
    std::vector<std::string> student_ids;
};

PivotalSet pivotal_students(const StudentGraph& g, const CentralityResult& c, std::size_t k);
PivotalSet pivotal_students(const StudentGraph& g, PathMode mode, std::size_t k);

struct CourseTally {
    std::string course_code;
    std::uint32_t count = 0;
    friend bool operator==(const CourseTally&, const CourseTally&) = default;
};

/// Pivotal enrollments aggregated by course code, count desc then code asc.
/// Throws Error when a pivotal student is not in the dataset.
std::vector<CourseTally> pivotal_course_tally(const EnrollmentDataset& d, const PivotalSet& p);

}  // namespace coenroll
