#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "coenroll/centrality.hpp"
#include "coenroll/enrollment.hpp"
#include "coenroll/metrics.hpp"

namespace coenroll {

/// t[q] for q = 20, 40, 60, 80 percent of student-section enrollments.
struct QuintileThresholds {
    std::array<std::uint32_t, 4> t{};
    std::uint32_t at_percent(int q) const;
};

/// t_q = smallest section size s such that sections smaller than s hold at
/// least q% of all enrollments.
QuintileThresholds enrollment_quintiles(const EnrollmentDataset& d);

enum class InterventionKind { size_threshold, scalpel, two_pass_scalpel };
std::string_view to_string(InterventionKind k);

struct ScalpelOptions {
    PathMode mode = PathMode::unweighted;
    std::size_t pivotal_count = 100;  // K
    std::size_t course_count = 25;    // C
};

struct TwoPassOptions {
    ScalpelOptions first;
    std::size_t graduate_courses = 10;
    std::size_t undergraduate_courses = 10;
};

struct InterventionPlan {
    InterventionKind kind = InterventionKind::size_threshold;
    std::uint32_t size_threshold = 0;  // size_threshold only
    ScalpelOptions scalpel;            // scalpel kinds
    std::size_t graduate_courses = 0;  // two_pass only
    std::size_t undergraduate_courses = 0;
    std::vector<std::string> removed_course_codes;  // selection order
    std::vector<std::string> removed_section_ids;   // ascending
    std::size_t sections_before = 0;
    std::size_t sections_after = 0;
    std::size_t students_before = 0;
    std::size_t students_after = 0;  // orphaned = before - after

    std::size_t removed_section_count() const { return removed_section_ids.size(); }
    double removed_section_share() const;
};

struct InterventionResult {
    EnrollmentDataset dataset;
    InterventionPlan plan;
    std::vector<std::string> warnings;
};

/// Removes every section with enrollment_count >= threshold.
/// Throws EmptyDatasetError when nothing is left.
InterventionResult remove_sections_by_size(const EnrollmentDataset& d, std::uint32_t threshold);

/// Removes all sections of the given courses (university-wide).
InterventionResult remove_courses(const EnrollmentDataset& d,
                                  const std::vector<std::string>& course_codes);

/// Pivotal students -> top courses by pivotal enrollment -> remove all their sections.
InterventionResult scalpel(const EnrollmentDataset& d, const ScalpelOptions& options = {});

/// Course selection step of the scalpel on a (sub)population.
std::vector<std::string> scalpel_courses(const EnrollmentDataset& population,
                                         const ScalpelOptions& options,
                                         std::vector<std::string>* warnings = nullptr);

/// University-wide scalpel, then per-population scalpels on the graduate and
/// undergraduate subsets of the result; the union of removals is applied.
InterventionResult two_pass_scalpel(const EnrollmentDataset& d, const TwoPassOptions& options);

struct ComparisonReport {
    MetricsReport before;
    MetricsReport after;
    double pairs_within_4_before = 0.0;  // percent
    double pairs_within_4_after = 0.0;
    PairScope scope = PairScope::all_nodes;
    std::size_t sections_before = 0;
    std::size_t sections_after = 0;
};

ComparisonReport compare(const EnrollmentDataset& before, const EnrollmentDataset& after,
                         PairScope scope = PairScope::all_nodes, const PathOptions& options = {});

}  // namespace coenroll
