#include "coenroll/intervention.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "coenroll/error.hpp"

namespace coenroll {

std::uint32_t QuintileThresholds::at_percent(int q) const {
    switch (q) {
        case 20: return t[0];
        case 40: return t[1];
        case 60: return t[2];
        case 80: return t[3];
        default: throw Error("quintile must be one of 20, 40, 60, 80");
    }
}

QuintileThresholds enrollment_quintiles(const EnrollmentDataset& d) {
    if (d.empty()) throw EmptyDatasetError("quintiles of an empty dataset");
    // Enrollments held by sections of each size.
    std::map<std::uint32_t, std::uint64_t> by_size;
    std::uint64_t total = 0;
    for (const auto& s : d.sections()) {
        by_size[s.enrollment_count] += s.enrollment_count;
        total += s.enrollment_count;
    }

    // share(< s) only changes at s = size + 1, so candidates are size + 1.
    QuintileThresholds out;
    constexpr std::array<std::uint64_t, 4> percents = {20, 40, 60, 80};
    std::size_t q = 0;
    std::uint64_t below = 0;
    for (const auto& [size, held] : by_size) {
        below += held;  // now = share(< size + 1)
        while (q < percents.size() && below * 100 >= percents[q] * total) out.t[q++] = size + 1;
    }
    return out;
}

std::string_view to_string(InterventionKind k) {
    switch (k) {
        case InterventionKind::size_threshold: return "size_threshold";
        case InterventionKind::scalpel: return "scalpel";
        case InterventionKind::two_pass_scalpel: break;
    }
    return "two_pass_scalpel";
}

double InterventionPlan::removed_section_share() const {
    return sections_before == 0 ? 0.0
                                : static_cast<double>(removed_section_count()) /
                                      static_cast<double>(sections_before);
}

namespace {

InterventionResult apply_removal(const EnrollmentDataset& d, const std::vector<bool>& removed,
                                 InterventionPlan plan) {
    InterventionResult r;
    plan.sections_before = d.sections().size();
    plan.students_before = d.students().size();
    for (std::size_t i = 0; i < removed.size(); ++i)
        if (removed[i]) plan.removed_section_ids.push_back(d.sections()[i].id);
    r.dataset = remove_sections(d, removed);
    plan.sections_after = r.dataset.sections().size();
    plan.students_after = r.dataset.students().size();
    r.plan = std::move(plan);
    return r;
}

}  // namespace

InterventionResult remove_sections_by_size(const EnrollmentDataset& d, std::uint32_t threshold) {
    if (threshold < 1) throw Error("size threshold must be at least 1");
    std::vector<bool> removed(d.sections().size());
    for (std::size_t i = 0; i < removed.size(); ++i)
        removed[i] = d.sections()[i].enrollment_count >= threshold;
    InterventionPlan plan;
    plan.kind = InterventionKind::size_threshold;
    plan.size_threshold = threshold;
    auto r = apply_removal(d, removed, std::move(plan));
    if (r.dataset.empty())
        throw EmptyDatasetError("removing sections of size >= " + std::to_string(threshold) +
                                " leaves no enrollments");
    return r;
}

InterventionResult remove_courses(const EnrollmentDataset& d,
                                  const std::vector<std::string>& course_codes) {
    const std::set<std::string, std::less<>> codes(course_codes.begin(), course_codes.end());
    std::vector<bool> removed(d.sections().size());
    for (std::size_t i = 0; i < removed.size(); ++i)
        removed[i] = codes.count(d.sections()[i].course_code) > 0;
    InterventionPlan plan;
    plan.removed_course_codes = course_codes;
    return apply_removal(d, removed, std::move(plan));
}

std::vector<std::string> scalpel_courses(const EnrollmentDataset& population,
                                         const ScalpelOptions& options,
                                         std::vector<std::string>* warnings) {
    if (options.course_count == 0 || population.empty()) return {};
    const auto g = build_student_graph(population);
    const auto pivotal = pivotal_students(g, options.mode, options.pivotal_count);
    const auto tally = pivotal_course_tally(population, pivotal);
    if (tally.size() < options.course_count && warnings)
        warnings->push_back("only " + std::to_string(tally.size()) +
                            " courses tallied; removing all of them instead of " +
                            std::to_string(options.course_count));
    std::vector<std::string> codes;
    for (std::size_t i = 0; i < tally.size() && i < options.course_count; ++i)
        codes.push_back(tally[i].course_code);
    return codes;
}

InterventionResult scalpel(const EnrollmentDataset& d, const ScalpelOptions& options) {
    std::vector<std::string> warnings;
    auto codes = scalpel_courses(d, options, &warnings);
    auto r = remove_courses(d, codes);
    r.plan.kind = InterventionKind::scalpel;
    r.plan.scalpel = options;
    r.warnings = std::move(warnings);
    return r;
}

InterventionResult two_pass_scalpel(const EnrollmentDataset& d, const TwoPassOptions& options) {
    auto first = scalpel(d, options.first);
    std::vector<std::string> codes = first.plan.removed_course_codes;
    std::vector<std::string> warnings = first.warnings;

    auto population_courses = [&](Career career, std::size_t budget) {
        if (budget == 0) return;
        EnrollmentDataset population;
        try {
            population = subset(first.dataset, CareerSelector{{career}});
        } catch (const EmptyDatasetError&) {
            warnings.push_back("no " + std::string(to_string(career)) + " students after pass 1");
            return;
        }
        ScalpelOptions opts = options.first;
        opts.course_count = budget;
        for (auto& code : scalpel_courses(population, opts, &warnings))
            if (std::find(codes.begin(), codes.end(), code) == codes.end()) codes.push_back(code);
    };
    population_courses(Career::graduate, options.graduate_courses);
    population_courses(Career::undergraduate, options.undergraduate_courses);

    auto r = remove_courses(d, codes);
    r.plan.kind = InterventionKind::two_pass_scalpel;
    r.plan.scalpel = options.first;
    r.plan.graduate_courses = options.graduate_courses;
    r.plan.undergraduate_courses = options.undergraduate_courses;
    r.warnings = std::move(warnings);
    return r;
}

ComparisonReport compare(const EnrollmentDataset& before, const EnrollmentDataset& after,
                         PairScope scope, const PathOptions& options) {
    ComparisonReport c;
    c.scope = scope;
    const auto gb = build_student_graph(before);
    const auto ga = build_student_graph(after);
    c.before = full_report(gb, options);
    c.after = full_report(ga, options);
    c.pairs_within_4_before = pairs_within_percent(gb, 4, scope);
    c.pairs_within_4_after = pairs_within_percent(ga, 4, scope);
    c.sections_before = before.sections().size();
    c.sections_after = after.sections().size();
    return c;
}

}  // namespace coenroll
