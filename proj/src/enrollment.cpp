#include "coenroll/enrollment.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "coenroll/error.hpp"

namespace coenroll {

namespace {

constexpr std::array<std::string_view, school_count> school_names = {
    "AH", "ATEC", "BBS", "EPPS", "ECS", "IS", "SOM", "NSM", "EMGT", "unspecified"};

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_csv(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    for (;;) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(trim(line.substr(start)));
            return fields;
        }
        fields.push_back(trim(line.substr(start, comma - start)));
        start = comma + 1;
    }
}

template <typename T>
std::optional<std::uint32_t> find_by_id(const std::vector<T>& items, std::string_view id) {
    auto it = std::lower_bound(items.begin(), items.end(), id,
                               [](const T& item, std::string_view key) { return item.id < key; });
    if (it == items.end() || it->id != id) return std::nullopt;
    return static_cast<std::uint32_t>(it - items.begin());
}

}  // namespace

std::string_view to_string(Career c) {
    return c == Career::undergraduate ? "undergraduate" : "graduate";
}

std::string_view to_string(Rank r) {
    switch (r) {
        case Rank::freshman: return "freshman";
        case Rank::sophomore: return "sophomore";
        case Rank::junior: return "junior";
        case Rank::senior: return "senior";
        case Rank::masters: return "masters";
        case Rank::doctoral: return "doctoral";
        case Rank::unspecified: break;
    }
    return "unspecified";
}

std::string_view to_string(School s) { return school_names[static_cast<std::size_t>(s)]; }

std::string_view to_string(Delivery d) { return d == Delivery::in_person ? "in_person" : "online"; }

std::string_view file_code(Career c) { return c == Career::undergraduate ? "UG" : "GR"; }

std::string_view file_code(Rank r) {
    switch (r) {
        case Rank::freshman: return "FR";
        case Rank::sophomore: return "SO";
        case Rank::junior: return "JR";
        case Rank::senior: return "SR";
        case Rank::masters: return "MA";
        case Rank::doctoral: return "PHD";
        case Rank::unspecified: break;
    }
    return "NA";
}

std::string_view file_code(Delivery d) { return d == Delivery::in_person ? "P" : "O"; }

std::optional<Career> parse_career(std::string_view code) {
    if (code == "UG") return Career::undergraduate;
    if (code == "GR") return Career::graduate;
    return std::nullopt;
}

std::optional<Rank> parse_rank(std::string_view code) {
    static constexpr std::array<std::pair<std::string_view, Rank>, 7> table = {{
        {"FR", Rank::freshman},
        {"SO", Rank::sophomore},
        {"JR", Rank::junior},
        {"SR", Rank::senior},
        {"MA", Rank::masters},
        {"PHD", Rank::doctoral},
        {"NA", Rank::unspecified},
    }};
    for (const auto& [name, rank] : table)
        if (name == code) return rank;
    return std::nullopt;
}

std::optional<School> parse_school(std::string_view name) {
    for (std::size_t i = 0; i < school_names.size(); ++i)
        if (school_names[i] == name) return static_cast<School>(i);
    if (name == "NA" || name.empty()) return School::unspecified;
    return std::nullopt;
}

std::optional<Delivery> parse_delivery(std::string_view code) {
    if (code == "P") return Delivery::in_person;
    if (code == "O") return Delivery::online;
    return std::nullopt;
}

bool rank_matches_career(Rank r, Career c) {
    switch (r) {
        case Rank::freshman:
        case Rank::sophomore:
        case Rank::junior:
        case Rank::senior: return c == Career::undergraduate;
        case Rank::masters:
        case Rank::doctoral: return c == Career::graduate;
        case Rank::unspecified: return true;
    }
    return false;
}

// ---------------------------------------------------------------------------
// Course taxonomy

const PrefixTable& PrefixTable::builtin() {
    static const PrefixTable table = [] {
        PrefixTable t;
        const std::pair<School, std::vector<std::string>> groups[] = {
            {School::AH,
             {"ARHM", "ARTS", "CRWT", "DANC", "FILM", "HIST", "HUMA", "LANG", "LIT", "MUSI", "PHIL",
              "RHET", "SPAN", "FREN", "GERM", "JAPN", "CHIN", "THEA", "VPAS", "AMS"}},
            {School::ATEC, {"ATCM", "ATEC", "EMAC", "ANGM"}},
            {School::BBS,
             {"ACN", "AUD", "BBSU", "CGS", "CLDP", "COMD", "HCS", "NSC", "PSY", "PSYC", "SPAU"}},
            {School::EPPS,
             {"CRIM", "ECON", "EPPS", "GEOG", "GISC", "GOVT", "IPEC", "PA", "POEC", "PPPE", "PSCI",
              "SOC", "SOCS"}},
            {School::ECS,
             {"BMEN", "CE", "CS", "ECS", "ECSC", "EE", "EEDG", "EEGR", "EEMF", "EEOP", "EEPE", "EERF",
              "EESC", "ENGR", "MECH", "MSEN", "SE", "SYSE", "SYSM"}},
            {School::IS, {"ED", "IMS", "ISAE", "ISAH", "ISEC", "ISIS", "ISNS", "UNIV"}},
            {School::SOM,
             {"ACCT", "BA", "BCOM", "BLAW", "BPS", "BUAN", "ENTP", "FIN", "HMGT", "ITSS", "MECO",
              "MIS", "MKT", "OBHR", "OPRE", "REAL"}},
            {School::NSM,
             {"ACTS", "BIOL", "CHEM", "GEOS", "MATH", "MOLE", "NATS", "PHYS", "SCI", "STAT"}},
            {School::EMGT, {"EMBA", "EMGT", "EMHC"}},
        };
        for (const auto& [school, prefixes] : groups)
            for (const auto& p : prefixes) t.set(p, school);
        return t;
    }();
    return table;
}

PrefixTable PrefixTable::load(std::istream& in) {
    PrefixTable t;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto text = trim(line);
        if (text.empty() || text.front() == '#') continue;
        auto fields = split_csv(text);
        if (fields.size() != 2) throw ParseError(line_no, "prefix table needs two columns");
        if (line_no == 1 && fields[0] == "prefix") continue;
        auto school = parse_school(fields[1]);
        if (!school) throw ParseError(line_no, "unknown school '" + std::string(fields[1]) + "'");
        t.set(std::string(fields[0]), *school);
    }
    return t;
}

void PrefixTable::set(std::string prefix, School school) { entries_[std::move(prefix)] = school; }

std::optional<School> PrefixTable::lookup(std::string_view prefix) const {
    auto it = entries_.find(prefix);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

std::string normalize_course_code(std::string_view code) {
    std::string out;
    out.reserve(code.size());
    for (char c : code)
        if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
    return out;
}

CourseInfo course_taxonomy(std::string_view course_code, const PrefixTable& prefixes, bool strict,
                           std::vector<std::string>* warnings) {
    const std::string code = normalize_course_code(course_code);
    std::size_t alpha = 0;
    while (alpha < code.size() && std::isalpha(static_cast<unsigned char>(code[alpha]))) ++alpha;
    const std::string_view digits = std::string_view(code).substr(alpha);
    const bool all_digits = std::all_of(digits.begin(), digits.end(), [](char c) {
        return std::isdigit(static_cast<unsigned char>(c));
    });
    if (alpha == 0 || digits.size() != 4 || !all_digits)
        throw TaxonomyError("course code '" + code + "' is not an alphabetic prefix + 4 digits");

    CourseInfo info;
    info.prefix = code.substr(0, alpha);
    info.level = digits[0] - '0';
    info.weekly_contact_hours = digits[1] - '0';
    if (info.level < 1 || info.level > 8)
        throw TaxonomyError("course code '" + code + "' has level " + std::to_string(info.level) +
                            " outside 1..8");

    if (auto school = prefixes.lookup(info.prefix)) {
        info.school = *school;
    } else if (strict) {
        throw TaxonomyError("unknown course prefix '" + info.prefix + "'");
    } else if (warnings) {
        warnings->push_back("unknown course prefix '" + info.prefix + "' mapped to unspecified");
    }
    return info;
}

// ---------------------------------------------------------------------------
// Dataset

EnrollmentDataset EnrollmentDataset::assemble(std::vector<Student> students,
                                              std::vector<Section> sections,
                                              const std::vector<Row>& pairs,
                                              std::size_t* duplicates) {
    auto by_id = [](const auto& a, const auto& b) { return a.id < b.id; };
    std::sort(students.begin(), students.end(), by_id);
    std::sort(sections.begin(), sections.end(), by_id);
    for (std::size_t i = 1; i < students.size(); ++i)
        if (students[i].id == students[i - 1].id)
            throw Error("student id '" + students[i].id + "' defined twice");
    for (std::size_t i = 1; i < sections.size(); ++i)
        if (sections[i].id == sections[i - 1].id)
            throw Error("section id '" + sections[i].id + "' defined twice");
    for (const auto& s : students)
        if (!rank_matches_career(s.rank, s.career))
            throw Error("student '" + s.id + "' has rank " + std::string(to_string(s.rank)) +
                        " inconsistent with career " + std::string(to_string(s.career)));

    EnrollmentDataset all;
    all.students_ = std::move(students);
    all.sections_ = std::move(sections);
    all.enrollments_.reserve(pairs.size());
    for (const auto& row : pairs) {
        auto st = find_by_id(all.students_, row.student_id);
        auto se = find_by_id(all.sections_, row.section_id);
        if (!st) throw Error("enrollment references unknown student '" + row.student_id + "'");
        if (!se) throw Error("enrollment references unknown section '" + row.section_id + "'");
        all.enrollments_.push_back({*st, *se});
    }
    std::sort(all.enrollments_.begin(), all.enrollments_.end());
    const auto before = all.enrollments_.size();
    all.enrollments_.erase(std::unique(all.enrollments_.begin(), all.enrollments_.end()),
                           all.enrollments_.end());
    if (duplicates) *duplicates = before - all.enrollments_.size();

    // Drop unreferenced students and sections, recount enrollments.
    return all.rebuild(std::vector<bool>(all.enrollments_.size(), true));
}

EnrollmentDataset EnrollmentDataset::rebuild(const std::vector<bool>& keep_enrollment) const {
    std::vector<std::uint32_t> student_uses(students_.size(), 0), section_uses(sections_.size(), 0);
    for (std::size_t i = 0; i < enrollments_.size(); ++i) {
        if (!keep_enrollment[i]) continue;
        ++student_uses[enrollments_[i].student];
        ++section_uses[enrollments_[i].section];
    }

    constexpr auto absent = static_cast<std::uint32_t>(-1);
    EnrollmentDataset out;
    std::vector<std::uint32_t> student_map(students_.size(), absent);
    std::vector<std::uint32_t> section_map(sections_.size(), absent);
    for (std::size_t i = 0; i < students_.size(); ++i) {
        if (student_uses[i] == 0) continue;
        student_map[i] = static_cast<std::uint32_t>(out.students_.size());
        out.students_.push_back(students_[i]);
    }
    for (std::size_t i = 0; i < sections_.size(); ++i) {
        if (section_uses[i] == 0) continue;
        section_map[i] = static_cast<std::uint32_t>(out.sections_.size());
        out.sections_.push_back(sections_[i]);
        out.sections_.back().enrollment_count = section_uses[i];
    }
    for (std::size_t i = 0; i < enrollments_.size(); ++i) {
        if (!keep_enrollment[i]) continue;
        out.enrollments_.push_back(
            {student_map[enrollments_[i].student], section_map[enrollments_[i].section]});
    }
    // Order-preserving maps keep enrollments sorted.
    out.index();
    return out;
}

void EnrollmentDataset::index() {
    const auto n = students_.size(), m = sections_.size();
    by_student_offsets_.assign(n + 1, 0);
    by_section_offsets_.assign(m + 1, 0);
    for (const auto& e : enrollments_) {
        ++by_student_offsets_[e.student + 1];
        ++by_section_offsets_[e.section + 1];
    }
    std::partial_sum(by_student_offsets_.begin(), by_student_offsets_.end(),
                     by_student_offsets_.begin());
    std::partial_sum(by_section_offsets_.begin(), by_section_offsets_.end(),
                     by_section_offsets_.begin());
    by_student_.resize(enrollments_.size());
    by_section_.resize(enrollments_.size());
    auto student_fill = by_student_offsets_;
    auto section_fill = by_section_offsets_;
    for (const auto& e : enrollments_) {
        by_student_[student_fill[e.student]++] = e.section;
        by_section_[section_fill[e.section]++] = e.student;
    }
}

std::optional<std::uint32_t> EnrollmentDataset::find_student(std::string_view id) const {
    return find_by_id(students_, id);
}

std::optional<std::uint32_t> EnrollmentDataset::find_section(std::string_view id) const {
    return find_by_id(sections_, id);
}

std::span<const std::uint32_t> EnrollmentDataset::sections_of(std::uint32_t student) const {
    return std::span(by_student_).subspan(by_student_offsets_[student],
                                          by_student_offsets_[student + 1] -
                                              by_student_offsets_[student]);
}

std::span<const std::uint32_t> EnrollmentDataset::students_of(std::uint32_t section) const {
    return std::span(by_section_).subspan(by_section_offsets_[section],
                                          by_section_offsets_[section + 1] -
                                              by_section_offsets_[section]);
}

namespace {

bool same_student(const Student& a, const Student& b) {
    return a.id == b.id && a.career == b.career && a.rank == b.rank && a.school == b.school;
}

bool same_section(const Section& a, const Section& b) {
    return a.id == b.id && a.course_code == b.course_code && a.school == b.school &&
           a.level == b.level && a.weekly_contact_hours == b.weekly_contact_hours &&
           a.delivery == b.delivery && a.enrollment_count == b.enrollment_count;
}

}  // namespace

bool operator==(const EnrollmentDataset& a, const EnrollmentDataset& b) {
    return std::equal(a.students_.begin(), a.students_.end(), b.students_.begin(),
                      b.students_.end(), same_student) &&
           std::equal(a.sections_.begin(), a.sections_.end(), b.sections_.begin(),
                      b.sections_.end(), same_section) &&
           a.enrollments_ == b.enrollments_;
}

// ---------------------------------------------------------------------------
// File format

ParseResult parse_enrollment(std::istream& in, const ParseOptions& options) {
    const PrefixTable& prefixes = options.prefixes ? *options.prefixes : PrefixTable::builtin();
    static constexpr std::array<std::string_view, 7> columns = {
        "student_id", "student_career", "student_rank", "section_id",
        "course_code", "delivery",      "student_school"};

    ParseResult result;
    std::string line;
    std::size_t line_no = 0;
    std::size_t width = 0;

    // Per-id first-seen attributes, used to reject inconsistent repeats.
    std::unordered_map<std::string, std::size_t> student_index, section_index;
    std::vector<Student> students;
    std::vector<Section> sections;
    std::vector<bool> school_given;
    std::vector<EnrollmentDataset::Row> rows;
    std::set<std::string> warned_prefixes;

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        auto fields = split_csv(line);

        if (width == 0) {
            if (fields.size() != 6 && fields.size() != 7)
                throw ParseError(line_no, "header must have 6 or 7 columns");
            for (std::size_t i = 0; i < fields.size(); ++i)
                if (fields[i] != columns[i])
                    throw ParseError(line_no, "expected header column '" +
                                                  std::string(columns[i]) + "', got '" +
                                                  std::string(fields[i]) + "'");
            width = fields.size();
            continue;
        }

        if (fields.size() != width)
            throw ParseError(line_no, "expected " + std::to_string(width) + " columns, got " +
                                          std::to_string(fields.size()));
        for (std::size_t i = 0; i < width; ++i)
            if (fields[i].empty() && i != 6)
                throw ParseError(line_no, "empty " + std::string(columns[i]));

        Student st;
        st.id = std::string(fields[0]);
        auto career = parse_career(fields[1]);
        if (!career) throw ParseError(line_no, "bad student_career '" + std::string(fields[1]) + "'");
        auto rank = parse_rank(fields[2]);
        if (!rank) throw ParseError(line_no, "bad student_rank '" + std::string(fields[2]) + "'");
        if (!rank_matches_career(*rank, *career))
            throw ParseError(line_no, "rank " + std::string(fields[2]) + " contradicts career " +
                                          std::string(fields[1]));
        st.career = *career;
        st.rank = *rank;
        if (width == 7) {
            auto school = parse_school(fields[6]);
            if (!school)
                throw ParseError(line_no, "bad student_school '" + std::string(fields[6]) + "'");
            st.school = *school;
        }

        Section se;
        se.id = std::string(fields[3]);
        auto delivery = parse_delivery(fields[5]);
        if (!delivery) throw ParseError(line_no, "bad delivery '" + std::string(fields[5]) + "'");
        se.delivery = *delivery;
        CourseInfo info;
        std::vector<std::string> taxonomy_warnings;
        try {
            info = course_taxonomy(fields[4], prefixes, options.strict, &taxonomy_warnings);
        } catch (const TaxonomyError& e) {
            throw ParseError(line_no, e.what());
        }
        if (!taxonomy_warnings.empty() && warned_prefixes.insert(info.prefix).second)
            result.warnings.push_back(taxonomy_warnings.front());
        se.course_code = normalize_course_code(fields[4]);
        se.level = info.level;
        se.weekly_contact_hours = info.weekly_contact_hours;
        se.school = info.school;

        if (auto [it, fresh] = student_index.try_emplace(st.id, students.size()); fresh) {
            students.push_back(st);
            school_given.push_back(width == 7 && !fields[6].empty());
        } else if (!same_student(students[it->second], st)) {
            throw ParseError(line_no, "student '" + st.id + "' attributes differ from earlier row");
        }
        if (auto [it, fresh] = section_index.try_emplace(se.id, sections.size()); fresh) {
            sections.push_back(se);
        } else {
            const auto& prev = sections[it->second];
            if (prev.course_code != se.course_code || prev.delivery != se.delivery)
                throw ParseError(line_no, "section '" + se.id + "' attributes differ from earlier row");
        }
        rows.push_back({st.id, se.id});
    }

    if (rows.empty()) throw EmptyDatasetError("enrollment stream has no data rows");

    // Students without an explicit school take the plurality school of their sections.
    std::vector<std::array<std::uint32_t, school_count>> tallies(students.size());
    for (auto& t : tallies) t.fill(0);
    for (const auto& row : rows) {
        const auto& sec = sections[section_index.at(row.section_id)];
        ++tallies[student_index.at(row.student_id)][static_cast<std::size_t>(sec.school)];
    }
    for (std::size_t i = 0; i < students.size(); ++i) {
        if (school_given[i]) continue;
        const auto& t = tallies[i];
        // Prefer a known school; unspecified only if nothing else was seen.
        auto best = std::max_element(t.begin(), t.end() - 1);
        students[i].school = *best > 0 ? static_cast<School>(best - t.begin()) : School::unspecified;
    }

    std::size_t duplicates = 0;
    result.dataset =
        EnrollmentDataset::assemble(std::move(students), std::move(sections), rows, &duplicates);
    result.duplicate_rows = duplicates;
    if (duplicates > 0) {
        if (options.strict)
            throw Error(std::to_string(duplicates) + " duplicate (student, section) rows");
        result.warnings.push_back(std::to_string(duplicates) +
                                  " duplicate (student, section) rows ignored");
    }
    return result;
}

ParseResult load_enrollment_file(const std::string& path, const ParseOptions& options) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "'");
    return parse_enrollment(in, options);
}

void write_enrollment(std::ostream& out, const EnrollmentDataset& d) {
    out << "student_id,student_career,student_rank,section_id,course_code,delivery,student_school\n";
    for (const auto& e : d.enrollments()) {
        const auto& st = d.students()[e.student];
        const auto& se = d.sections()[e.section];
        out << st.id << ',' << file_code(st.career) << ',' << file_code(st.rank) << ',' << se.id
            << ',' << se.course_code << ',' << file_code(se.delivery) << ',' << to_string(st.school)
            << '\n';
    }
}

// ---------------------------------------------------------------------------
// Filters

EnrollmentDataset filter_in_person(const EnrollmentDataset& d) {
    return d.filter_enrollments(
        [&](const Enrollment& e) { return d.sections()[e.section].delivery == Delivery::in_person; });
}

namespace {

template <typename T, typename ParseOne>
std::set<T> parse_list(std::string_view values, ParseOne parse_one, std::string_view key) {
    std::set<T> out;
    for (auto v : split_csv(values)) {
        auto parsed = parse_one(v);
        if (!parsed)
            throw Error("bad " + std::string(key) + " value '" + std::string(v) + "' in selector");
        out.insert(*parsed);
    }
    return out;
}

}  // namespace

Selector parse_selector(std::string_view text) {
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) throw Error("selector must look like key=value");
    const auto key = trim(text.substr(0, eq));
    const auto values = trim(text.substr(eq + 1));
    if (key == "career") return CareerSelector{parse_list<Career>(values, parse_career, key)};
    if (key == "rank") return RankSelector{parse_list<Rank>(values, parse_rank, key)};
    if (key == "school") return SchoolSelector{parse_list<School>(values, parse_school, key)};
    if (key == "level") {
        return LevelSelector{parse_list<int>(
            values,
            [](std::string_view v) -> std::optional<int> {
                if (v.size() != 1 || v[0] < '1' || v[0] > '8') return std::nullopt;
                return v[0] - '0';
            },
            key)};
    }
    throw Error("unknown selector key '" + std::string(key) + "'");
}

std::string describe(const Selector& s) {
    std::ostringstream out;
    auto join = [&](const auto& values, auto name) {
        bool first = true;
        for (const auto& v : values) {
            if (!first) out << ',';
            out << name(v);
            first = false;
        }
    };
    std::visit(
        [&](const auto& sel) {
            using T = std::decay_t<decltype(sel)>;
            if constexpr (std::is_same_v<T, CareerSelector>) {
                out << "career=";
                join(sel.careers, [](Career c) { return file_code(c); });
            } else if constexpr (std::is_same_v<T, RankSelector>) {
                out << "rank=";
                join(sel.ranks, [](Rank r) { return file_code(r); });
            } else if constexpr (std::is_same_v<T, LevelSelector>) {
                out << "level=";
                join(sel.levels, [](int l) { return l; });
            } else {
                out << "school=";
                join(sel.schools, [](School s) { return to_string(s); });
            }
        },
        s);
    return out.str();
}

EnrollmentDataset subset(const EnrollmentDataset& d, const Selector& selector) {
    const auto& st = d.students();
    const auto& se = d.sections();
    EnrollmentDataset out = std::visit(
        [&](const auto& sel) {
            using T = std::decay_t<decltype(sel)>;
            return d.filter_enrollments([&](const Enrollment& e) {
                if constexpr (std::is_same_v<T, CareerSelector>)
                    return sel.careers.count(st[e.student].career) > 0;
                else if constexpr (std::is_same_v<T, RankSelector>)
                    return sel.ranks.count(st[e.student].rank) > 0;
                else if constexpr (std::is_same_v<T, LevelSelector>)
                    return sel.levels.count(se[e.section].level) > 0;
                else
                    return sel.schools.count(st[e.student].school) > 0;
            });
        },
        selector);
    if (out.empty()) throw EmptyDatasetError("selector " + describe(selector) + " matches nothing");
    return out;
}

EnrollmentDataset remove_sections(const EnrollmentDataset& d, const std::vector<bool>& removed) {
    return d.filter_enrollments([&](const Enrollment& e) { return !removed[e.section]; });
}

}  // namespace coenroll
