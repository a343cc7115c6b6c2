#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "coenroll/enrollment.hpp"

namespace coenroll {

/// Inclusive integer range with a mixture weight.
struct SizeBand {
    std::uint32_t min = 1;
    std::uint32_t max = 1;
    double weight = 1.0;
};

inline constexpr std::size_t rank_count = 6;  // freshman..doctoral

/// Generator parameters. Per-rank arrays are indexed freshman..doctoral.
/// Probabilities are per course slot unless stated otherwise.
struct SynthConfig {
    std::string name = "custom";
    std::uint64_t seed = 1;

    std::array<std::uint32_t, rank_count> students{};
    std::map<School, double> undergraduate_school_weights;
    std::map<School, double> graduate_school_weights;

    std::array<std::uint32_t, rank_count> load_min{};
    std::array<std::uint32_t, rank_count> load_max{};

    std::uint32_t core_courses = 0;
    double core_popularity_exponent = 1.0;
    std::array<double, rank_count> core_probability{};

    /// Major courses per level across the university, split by school weight.
    std::uint32_t major_courses_per_level = 0;
    std::uint32_t major_courses_min = 1;  // per school and level
    double major_popularity_exponent = 1.0;
    /// Level mix for major courses; levels 1..8.
    std::array<std::map<int, double>, rank_count> level_mix;
    std::array<double, rank_count> cross_school_probability{};

    /// Expected individual-instruction enrollments per student (research,
    /// thesis, internship). The fractional part is a Bernoulli draw.
    std::array<double, rank_count> individual_rate{};
    std::uint32_t individual_group_max = 1;
    /// Supervisor sections sharing one individual-instruction course code.
    std::uint32_t individual_sections_per_course = 1;

    std::vector<SizeBand> section_sizes;
    std::vector<SizeBand> core_section_sizes;
    double online_share = 0.0;
    std::map<int, double> contact_hours;  // hours -> weight

    /// Throws ConfigError when a value is out of range.
    void validate() const;
};

/// The pinned "utd-like-2k" preset (2,000 students). Version-pinned: changing
/// it changes acceptance results.
SynthConfig utd_like_2k();

/// Flat key = value text; '#' starts a comment. Unset keys keep the
/// utd-like-2k value. Throws ParseError on malformed lines.
SynthConfig load_synth_config(std::istream& in);
SynthConfig load_synth_config_file(const std::string& path);
void write_synth_config(std::ostream& out, const SynthConfig& cfg);

/// Deterministic for a fixed config (single seeded stream). Throws
/// InfeasibleError when a student's course load cannot be filled from the pools.
EnrollmentDataset generate(const SynthConfig& cfg);

}  // namespace coenroll
