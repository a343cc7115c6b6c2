#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace coenroll {

enum class Career { undergraduate, graduate };
enum class Rank { freshman, sophomore, junior, senior, masters, doctoral, unspecified };
enum class School { AH, ATEC, BBS, EPPS, ECS, IS, SOM, NSM, EMGT, unspecified };
enum class Delivery { in_person, online };

inline constexpr std::size_t school_count = 10;

std::string_view to_string(Career c);
std::string_view to_string(Rank r);
std::string_view to_string(School s);
std::string_view to_string(Delivery d);

// File codes: UG|GR, FR|SO|JR|SR|MA|PHD|NA, P|O.
std::string_view file_code(Career c);
std::string_view file_code(Rank r);
std::string_view file_code(Delivery d);
std::optional<Career> parse_career(std::string_view code);
std::optional<Rank> parse_rank(std::string_view code);
std::optional<School> parse_school(std::string_view name);
std::optional<Delivery> parse_delivery(std::string_view code);

/// True when rank and career are compatible (undergraduate ranks need UG, etc).
bool rank_matches_career(Rank r, Career c);

/// Course-prefix to school lookup.
class PrefixTable {
public:
    /// The mapping shipped with the library (mirrors data/prefix_schools.csv).
    static const PrefixTable& builtin();

    /// Two columns per line: prefix,school. A header line is optional.
    static PrefixTable load(std::istream& in);

    void set(std::string prefix, School school);
    std::optional<School> lookup(std::string_view prefix) const;
    const std::map<std::string, School, std::less<>>& entries() const { return entries_; }

private:
    std::map<std::string, School, std::less<>> entries_;
};

struct CourseInfo {
    std::string prefix;
    int level = 0;                 // first digit, 1..8
    int weekly_contact_hours = 0;  // second digit, 0..9
    School school = School::unspecified;
};

/// Strips all whitespace: "CS 4485" -> "CS4485".
std::string normalize_course_code(std::string_view code);

/// Splits an alphabetic prefix + 4 digits code into level, contact hours and
/// school. Throws TaxonomyError on a malformed code, or on an unknown prefix
/// when `strict` is set; otherwise an unknown prefix maps to unspecified and a
/// warning is appended when `warnings` is non-null.
CourseInfo course_taxonomy(std::string_view course_code,
                           const PrefixTable& prefixes = PrefixTable::builtin(),
                           bool strict = false, std::vector<std::string>* warnings = nullptr);

struct Student {
    std::string id;
    Career career = Career::undergraduate;
    Rank rank = Rank::unspecified;
    School school = School::unspecified;
};

struct Section {
    std::string id;
    std::string course_code;
    School school = School::unspecified;
    int level = 0;
    int weekly_contact_hours = 0;
    Delivery delivery = Delivery::in_person;
    std::uint32_t enrollment_count = 0;
};

struct Enrollment {
    std::uint32_t student;  // index into students()
    std::uint32_t section;  // index into sections()
    friend bool operator==(const Enrollment&, const Enrollment&) = default;
    friend auto operator<=>(const Enrollment&, const Enrollment&) = default;
};

/// Immutable validated set of students, sections and enrollment pairs.
///
/// Students and sections are stored sorted by id, enrollments sorted by
/// (student, section). Students and sections without any enrollment are
/// dropped at construction, so every stored entity is referenced.
class EnrollmentDataset {
public:
    struct Row {
        std::string student_id;
        std::string section_id;
    };

    EnrollmentDataset() = default;

    /// Validates and assembles a dataset. Duplicate pairs are collapsed and
    /// counted in *duplicates. Throws Error when a pair references an unknown
    /// id or an id is defined twice.
    static EnrollmentDataset assemble(std::vector<Student> students, std::vector<Section> sections,
                                      const std::vector<Row>& pairs,
                                      std::size_t* duplicates = nullptr);

    const std::vector<Student>& students() const { return students_; }
    const std::vector<Section>& sections() const { return sections_; }
    const std::vector<Enrollment>& enrollments() const { return enrollments_; }
    bool empty() const { return enrollments_.empty(); }

    std::optional<std::uint32_t> find_student(std::string_view id) const;
    std::optional<std::uint32_t> find_section(std::string_view id) const;

    /// Section indices of one student, ascending.
    std::span<const std::uint32_t> sections_of(std::uint32_t student) const;
    /// Student indices of one section, ascending.
    std::span<const std::uint32_t> students_of(std::uint32_t section) const;

    /// New dataset holding only the enrollments for which keep(e) is true.
    template <typename Pred>
    EnrollmentDataset filter_enrollments(Pred keep) const {
        std::vector<bool> mask(enrollments_.size());
        for (std::size_t i = 0; i < enrollments_.size(); ++i) mask[i] = keep(enrollments_[i]);
        return rebuild(mask);
    }

    friend bool operator==(const EnrollmentDataset& a, const EnrollmentDataset& b);

private:
    EnrollmentDataset rebuild(const std::vector<bool>& keep_enrollment) const;
    void index();

    std::vector<Student> students_;
    std::vector<Section> sections_;
    std::vector<Enrollment> enrollments_;
    std::vector<std::uint32_t> by_student_offsets_, by_student_;
    std::vector<std::uint32_t> by_section_offsets_, by_section_;
};

struct ParseOptions {
    const PrefixTable* prefixes = nullptr;  // null selects PrefixTable::builtin()
    bool strict = false;                    // reject duplicates and unknown prefixes
};

struct ParseResult {
    EnrollmentDataset dataset;
    std::size_t duplicate_rows = 0;
    std::vector<std::string> warnings;
};

/// Reads the comma-separated enrollment format:
///   student_id,student_career,student_rank,section_id,course_code,delivery[,student_school]
/// Throws ParseError naming the offending line, EmptyDatasetError when there
/// are no data rows.
ParseResult parse_enrollment(std::istream& in, const ParseOptions& options = {});
ParseResult load_enrollment_file(const std::string& path, const ParseOptions& options = {});

/// Writes the seven-column form (with student_school). Rows are ordered by
/// (student id, section id), so equal datasets produce identical bytes.
void write_enrollment(std::ostream& out, const EnrollmentDataset& d);

/// Removes online sections and the students left without enrollments.
EnrollmentDataset filter_in_person(const EnrollmentDataset& d);

struct CareerSelector {
    std::set<Career> careers;
};
struct RankSelector {
    std::set<Rank> ranks;
};
/// Keeps only sections at the given levels; students keep only those enrollments.
struct LevelSelector {
    std::set<int> levels;
};
struct SchoolSelector {
    std::set<School> schools;
};
using Selector = std::variant<CareerSelector, RankSelector, LevelSelector, SchoolSelector>;

/// Parses "career=UG", "rank=FR,SO", "level=5,6", "school=ECS". Throws Error.
Selector parse_selector(std::string_view text);
std::string describe(const Selector& s);

/// Throws EmptyDatasetError when nothing is left.
EnrollmentDataset subset(const EnrollmentDataset& d, const Selector& selector);

/// Removes the listed sections (by index) and any orphaned students.
EnrollmentDataset remove_sections(const EnrollmentDataset& d, const std::vector<bool>& removed);

}  // namespace coenroll
