#include "coenroll/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <istream>
#include <ostream>
#include <random>
#include <set>
#include <sstream>

#include "coenroll/error.hpp"

namespace coenroll {

namespace {

constexpr std::array<Rank, rank_count> ranks = {Rank::freshman, Rank::sophomore, Rank::junior,
                                                Rank::senior,   Rank::masters,   Rank::doctoral};

Career career_of(Rank r) {
    return r == Rank::masters || r == Rank::doctoral ? Career::graduate : Career::undergraduate;
}

// Core-curriculum prefixes, cycled when naming core courses.
constexpr std::array<std::string_view, 16> core_prefixes = {
    "GOVT", "HIST", "RHET", "MATH", "ECON", "PHYS", "CHEM", "BIOL",
    "PSY",  "HUMA", "ARTS", "PHIL", "LIT",  "CRIM", "NATS", "ATCM"};

// ---------------------------------------------------------------------------
// Config text format

std::string trim(std::string s) {
    auto not_space = [](unsigned char c) { return !std::isspace(c); };
    s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
    s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
    return s;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, sep)) out.push_back(trim(item));
    return out;
}

double to_double(const std::string& s, std::size_t line) {
    try {
        std::size_t used = 0;
        double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ParseError(line, "expected a number, got '" + s + "'");
    }
}

std::uint64_t to_uint(const std::string& s, std::size_t line) {
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        throw ParseError(line, "expected a non-negative integer, got '" + s + "'");
    return std::stoull(s);
}

std::string format_double(double v) {
    std::ostringstream out;
    out.precision(17);
    out << v;
    // Prefer the shortest representation that round-trips.
    for (int p = 1; p <= 17; ++p) {
        std::ostringstream shorter;
        shorter.precision(p);
        shorter << v;
        if (std::stod(shorter.str()) == v) return shorter.str();
    }
    return out.str();
}

std::map<School, double> parse_school_weights(const std::string& v, std::size_t line) {
    std::map<School, double> out;
    for (const auto& item : split(v, ',')) {
        auto kv = split(item, ':');
        if (kv.size() != 2) throw ParseError(line, "expected SCHOOL:weight, got '" + item + "'");
        auto school = parse_school(kv[0]);
        if (!school) throw ParseError(line, "unknown school '" + kv[0] + "'");
        out[*school] = to_double(kv[1], line);
    }
    return out;
}

std::map<int, double> parse_int_weights(const std::string& v, std::size_t line) {
    std::map<int, double> out;
    for (const auto& item : split(v, ',')) {
        auto kv = split(item, ':');
        if (kv.size() != 2) throw ParseError(line, "expected value:weight, got '" + item + "'");
        out[static_cast<int>(to_uint(kv[0], line))] = to_double(kv[1], line);
    }
    return out;
}

std::vector<SizeBand> parse_bands(const std::string& v, std::size_t line) {
    std::vector<SizeBand> out;
    for (const auto& item : split(v, ',')) {
        auto kv = split(item, ':');
        auto range = kv.size() == 2 ? split(kv[0], '-') : std::vector<std::string>{};
        if (range.size() != 2) throw ParseError(line, "expected min-max:weight, got '" + item + "'");
        out.push_back({static_cast<std::uint32_t>(to_uint(range[0], line)),
                       static_cast<std::uint32_t>(to_uint(range[1], line)),
                       to_double(kv[1], line)});
    }
    return out;
}

template <typename Map, typename KeyName>
std::string join_weights(const Map& m, KeyName key_name) {
    std::string out;
    for (const auto& [k, w] : m) {
        if (!out.empty()) out += ',';
        out += key_name(k) + ":" + format_double(w);
    }
    return out;
}

std::string join_bands(const std::vector<SizeBand>& bands) {
    std::string out;
    for (const auto& b : bands) {
        if (!out.empty()) out += ',';
        out += std::to_string(b.min) + "-" + std::to_string(b.max) + ":" + format_double(b.weight);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Generation

struct Course {
    std::string code;
    School school;
    int level;
    bool core;
    std::vector<std::uint32_t> students;
};

class CodeAllocator {
public:
    // Next free code PREFIX + level + hours + 2-digit serial; throws when exhausted.
    std::string next(const std::vector<std::string>& prefixes, std::size_t& cursor, int level,
                     int hours) {
        for (std::size_t attempt = 0; attempt < prefixes.size(); ++attempt) {
            const auto& prefix = prefixes[cursor++ % prefixes.size()];
            auto& serial = serials_[prefix + std::to_string(level * 10 + hours)];
            if (serial < 99) {
                ++serial;
                char digits[16];
                std::snprintf(digits, sizeof digits, "%d%d%02d", level, hours, serial);
                return prefix + digits;
            }
        }
        throw InfeasibleError("course numbering exhausted at level " + std::to_string(level));
    }

private:
    std::map<std::string, int> serials_;
};

std::vector<double> zipf_weights(std::size_t n, double exponent) {
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = 1.0 / std::pow(static_cast<double>(i + 1), exponent);
    return w;
}

template <typename Map>
auto draw_key(const Map& weights, std::mt19937_64& rng) {
    std::vector<typename Map::key_type> keys;
    std::vector<double> w;
    for (const auto& [k, v] : weights) {
        keys.push_back(k);
        w.push_back(v);
    }
    std::discrete_distribution<std::size_t> pick(w.begin(), w.end());
    return keys[pick(rng)];
}

std::uint32_t draw_size(const std::vector<SizeBand>& bands, std::mt19937_64& rng) {
    std::vector<double> w;
    for (const auto& b : bands) w.push_back(b.weight);
    std::discrete_distribution<std::size_t> pick(w.begin(), w.end());
    const auto& band = bands[pick(rng)];
    return std::uniform_int_distribution<std::uint32_t>(band.min, band.max)(rng);
}

std::vector<std::string> prefixes_of(School s) {
    std::vector<std::string> out;
    for (const auto& [prefix, school] : PrefixTable::builtin().entries())
        if (school == s) out.push_back(prefix);
    return out;
}

}  // namespace

void SynthConfig::validate() const {
    auto prob = [](double p, const std::string& what) {
        if (!(p >= 0.0 && p <= 1.0)) throw ConfigError(what + " must lie in [0, 1]");
    };
    auto weights = [](const auto& m, const std::string& what) {
        double sum = 0.0;
        for (const auto& [k, w] : m) {
            if (!(w >= 0.0)) throw ConfigError(what + " weights must be non-negative");
            sum += w;
        }
        if (!(sum > 0.0)) throw ConfigError(what + " weights must not all be zero");
    };
    for (std::size_t r = 0; r < rank_count; ++r) {
        const std::string rn(file_code(ranks[r]));
        prob(core_probability[r], "core.prob." + rn);
        prob(cross_school_probability[r], "cross_school." + rn);
        if (!(individual_rate[r] >= 0.0) || individual_rate[r] > 16.0)
            throw ConfigError("individual.rate." + rn + " must be in [0, 16]");
        if (load_min[r] > load_max[r]) throw ConfigError("load." + rn + " min exceeds max");
        if (students[r] > 0) {
            weights(level_mix[r], "levels." + rn);
            for (const auto& [level, w] : level_mix[r])
                if (level < 1 || level > 8) throw ConfigError("levels." + rn + " uses level outside 1..8");
        }
        if (core_probability[r] > 0.0 && career_of(ranks[r]) == Career::graduate)
            throw ConfigError("core.prob." + rn + ": graduate students do not take core courses");
    }
    prob(online_share, "online_share");
    weights(undergraduate_school_weights, "ug_school_weights");
    weights(graduate_school_weights, "gr_school_weights");
    weights(contact_hours, "contact_hours");
    for (const auto& [h, w] : contact_hours)
        if (h < 0 || h > 9) throw ConfigError("contact_hours keys must be 0..9");
    for (const auto* bands : {&section_sizes, &core_section_sizes}) {
        if (bands->empty()) throw ConfigError("section size mixture must not be empty");
        for (const auto& b : *bands)
            if (b.min < 1 || b.min > b.max || b.weight < 0.0)
                throw ConfigError("section size bands need 1 <= min <= max and weight >= 0");
    }
    if (individual_group_max < 1) throw ConfigError("individual.group_max must be at least 1");
    if (individual_sections_per_course < 1 || individual_sections_per_course > 999)
        throw ConfigError("individual.sections_per_course must be in 1..999");
    if (undergraduate_school_weights.count(School::unspecified) ||
        graduate_school_weights.count(School::unspecified))
        throw ConfigError("school weights must name real schools");
}

SynthConfig utd_like_2k() {
    SynthConfig c;
    c.name = "utd-like-2k";
    c.seed = 20190826;
    // 71% undergraduate.
    c.students = {330, 230, 420, 440, 470, 110};
    c.undergraduate_school_weights = {
        {School::ECS, 0.30}, {School::SOM, 0.22}, {School::NSM, 0.14}, {School::BBS, 0.10},
        {School::EPPS, 0.08}, {School::AH, 0.06}, {School::ATEC, 0.06}, {School::IS, 0.04}};
    c.graduate_school_weights = {
        {School::ECS, 0.38}, {School::SOM, 0.30}, {School::NSM, 0.08}, {School::BBS, 0.07},
        {School::EPPS, 0.07}, {School::AH, 0.03}, {School::ATEC, 0.03}, {School::EMGT, 0.04}};
    c.load_min = {4, 4, 4, 4, 3, 2};
    c.load_max = {5, 5, 5, 5, 3, 3};
    c.core_courses = 32;
    c.core_popularity_exponent = 0.6;
    c.core_probability = {0.70, 0.50, 0.15, 0.08, 0.0, 0.0};
    c.major_courses_per_level = 60;
    c.major_courses_min = 2;
    c.major_popularity_exponent = 0.7;
    c.level_mix = {{
        {{1, 0.75}, {2, 0.20}, {3, 0.05}},
        {{1, 0.20}, {2, 0.60}, {3, 0.20}},
        {{2, 0.15}, {3, 0.65}, {4, 0.20}},
        {{3, 0.30}, {4, 0.68}, {6, 0.02}},
        {{4, 0.02}, {5, 0.40}, {6, 0.56}, {7, 0.02}},
        {{6, 0.40}, {7, 0.55}, {8, 0.05}},
    }};
    c.cross_school_probability = {0.10, 0.12, 0.10, 0.08, 0.05, 0.05};
    c.individual_rate = {0.5, 0.8, 1.2, 1.5, 1.2, 3.0};
    c.individual_group_max = 1;
    c.individual_sections_per_course = 8;
    c.section_sizes = {{6, 15, 0.35}, {16, 30, 0.45}, {31, 50, 0.20}};
    c.core_section_sizes = {{20, 35, 0.5}, {36, 60, 0.5}};
    c.online_share = 0.02;
    c.contact_hours = {{1, 0.05}, {2, 0.10}, {3, 0.75}, {4, 0.10}};
    return c;
}

SynthConfig load_synth_config(std::istream& in) {
    SynthConfig c = utd_like_2k();
    std::string raw;
    std::size_t line = 0;
    auto rank_index = [&](const std::string& code) {
        auto r = parse_rank(code);
        if (!r || *r == Rank::unspecified) throw ParseError(line, "unknown rank '" + code + "'");
        return static_cast<std::size_t>(*r);
    };
    while (std::getline(in, raw)) {
        ++line;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        const std::string text = trim(raw);
        if (text.empty()) continue;
        const auto eq = text.find('=');
        if (eq == std::string::npos) throw ParseError(line, "expected key = value");
        const std::string key = trim(text.substr(0, eq));
        const std::string value = trim(text.substr(eq + 1));
        const auto dot = key.rfind('.');
        const std::string head = dot == std::string::npos ? key : key.substr(0, dot);
        const std::string tail = dot == std::string::npos ? "" : key.substr(dot + 1);

        if (key == "name") c.name = value;
        else if (key == "seed") c.seed = to_uint(value, line);
        else if (head == "students") c.students[rank_index(tail)] = static_cast<std::uint32_t>(to_uint(value, line));
        else if (key == "ug_school_weights") c.undergraduate_school_weights = parse_school_weights(value, line);
        else if (key == "gr_school_weights") c.graduate_school_weights = parse_school_weights(value, line);
        else if (head == "load") {
            auto parts = split(value, ',');
            if (parts.size() != 2) throw ParseError(line, "load expects min,max");
            c.load_min[rank_index(tail)] = static_cast<std::uint32_t>(to_uint(parts[0], line));
            c.load_max[rank_index(tail)] = static_cast<std::uint32_t>(to_uint(parts[1], line));
        }
        else if (key == "core.courses") c.core_courses = static_cast<std::uint32_t>(to_uint(value, line));
        else if (key == "core.popularity") c.core_popularity_exponent = to_double(value, line);
        else if (head == "core.prob") c.core_probability[rank_index(tail)] = to_double(value, line);
        else if (key == "major.courses_per_level") c.major_courses_per_level = static_cast<std::uint32_t>(to_uint(value, line));
        else if (key == "major.courses_min") c.major_courses_min = static_cast<std::uint32_t>(to_uint(value, line));
        else if (key == "major.popularity") c.major_popularity_exponent = to_double(value, line);
        else if (head == "levels") c.level_mix[rank_index(tail)] = parse_int_weights(value, line);
        else if (head == "cross_school") c.cross_school_probability[rank_index(tail)] = to_double(value, line);
        else if (head == "individual.rate") c.individual_rate[rank_index(tail)] = to_double(value, line);
        else if (key == "individual.group_max") c.individual_group_max = static_cast<std::uint32_t>(to_uint(value, line));
        else if (key == "individual.sections_per_course")
            c.individual_sections_per_course = static_cast<std::uint32_t>(to_uint(value, line));
        else if (key == "section_sizes") c.section_sizes = parse_bands(value, line);
        else if (key == "core_section_sizes") c.core_section_sizes = parse_bands(value, line);
        else if (key == "online_share") c.online_share = to_double(value, line);
        else if (key == "contact_hours") c.contact_hours = parse_int_weights(value, line);
        else throw ParseError(line, "unknown key '" + key + "'");
    }
    c.validate();
    return c;
}

SynthConfig load_synth_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "'");
    return load_synth_config(in);
}

void write_synth_config(std::ostream& out, const SynthConfig& c) {
    auto school_name = [](School s) { return std::string(to_string(s)); };
    auto int_name = [](int v) { return std::to_string(v); };
    out << "name = " << c.name << "\n";
    out << "seed = " << c.seed << "\n";
    for (std::size_t r = 0; r < rank_count; ++r)
        out << "students." << file_code(ranks[r]) << " = " << c.students[r] << "\n";
    out << "ug_school_weights = " << join_weights(c.undergraduate_school_weights, school_name) << "\n";
    out << "gr_school_weights = " << join_weights(c.graduate_school_weights, school_name) << "\n";
    for (std::size_t r = 0; r < rank_count; ++r)
        out << "load." << file_code(ranks[r]) << " = " << c.load_min[r] << "," << c.load_max[r] << "\n";
    out << "core.courses = " << c.core_courses << "\n";
    out << "core.popularity = " << format_double(c.core_popularity_exponent) << "\n";
    for (std::size_t r = 0; r < rank_count; ++r)
        out << "core.prob." << file_code(ranks[r]) << " = " << format_double(c.core_probability[r]) << "\n";
    out << "major.courses_per_level = " << c.major_courses_per_level << "\n";
    out << "major.courses_min = " << c.major_courses_min << "\n";
    out << "major.popularity = " << format_double(c.major_popularity_exponent) << "\n";
    for (std::size_t r = 0; r < rank_count; ++r)
        out << "levels." << file_code(ranks[r]) << " = " << join_weights(c.level_mix[r], int_name) << "\n";
    for (std::size_t r = 0; r < rank_count; ++r)
        out << "cross_school." << file_code(ranks[r]) << " = "
            << format_double(c.cross_school_probability[r]) << "\n";
    for (std::size_t r = 0; r < rank_count; ++r)
        out << "individual.rate." << file_code(ranks[r]) << " = "
            << format_double(c.individual_rate[r]) << "\n";
    out << "individual.group_max = " << c.individual_group_max << "\n";
    out << "individual.sections_per_course = " << c.individual_sections_per_course << "\n";
    out << "section_sizes = " << join_bands(c.section_sizes) << "\n";
    out << "core_section_sizes = " << join_bands(c.core_section_sizes) << "\n";
    out << "online_share = " << format_double(c.online_share) << "\n";
    out << "contact_hours = " << join_weights(c.contact_hours, int_name) << "\n";
}

EnrollmentDataset generate(const SynthConfig& cfg) {
    cfg.validate();
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    CodeAllocator codes;

    // Students, ids in rank order.
    std::vector<Student> students;
    std::vector<std::size_t> rank_of;
    for (std::size_t r = 0; r < rank_count; ++r) {
        const Career career = career_of(ranks[r]);
        const auto& weights = career == Career::undergraduate ? cfg.undergraduate_school_weights
                                                              : cfg.graduate_school_weights;
        for (std::uint32_t i = 0; i < cfg.students[r]; ++i) {
            char id[16];
            std::snprintf(id, sizeof id, "S%05zu", students.size() + 1);
            students.push_back({id, career, ranks[r], draw_key(weights, rng)});
            rank_of.push_back(r);
        }
    }

    // Course catalog: core pool then per (school, level) major pools.
    std::vector<Course> courses;
    std::vector<std::size_t> core_pool;
    {
        std::vector<std::string> core_prefix_list(core_prefixes.begin(), core_prefixes.end());
        std::size_t cursor = 0;
        for (std::uint32_t i = 0; i < cfg.core_courses; ++i) {
            const int level = i % 5 < 3 ? 1 : 2;
            const int hours = draw_key(cfg.contact_hours, rng);
            auto code = codes.next(core_prefix_list, cursor, level, hours);
            const School school = PrefixTable::builtin().lookup(code.substr(0, code.find_first_of("0123456789"))).value_or(School::unspecified);
            core_pool.push_back(courses.size());
            courses.push_back({code, school, level, true, {}});
        }
    }
    std::map<std::pair<School, int>, std::vector<std::size_t>> pools;
    for (int level = 1; level <= 8; ++level) {
        const auto& weights = level <= 4 ? cfg.undergraduate_school_weights : cfg.graduate_school_weights;
        for (const auto& [school, w] : weights) {
            if (w <= 0.0) continue;
            const auto count = std::max<std::uint32_t>(
                cfg.major_courses_min,
                static_cast<std::uint32_t>(std::lround(w * cfg.major_courses_per_level)));
            const auto prefixes = prefixes_of(school);
            std::size_t cursor = 0;
            auto& pool = pools[{school, level}];
            for (std::uint32_t i = 0; i < count; ++i) {
                const int hours = draw_key(cfg.contact_hours, rng);
                pool.push_back(courses.size());
                courses.push_back({codes.next(prefixes, cursor, level, hours), school, level, false, {}});
            }
        }
    }
    const auto core_weights = zipf_weights(core_pool.size(), cfg.core_popularity_exponent);

    auto pick_from = [&](const std::vector<std::size_t>& pool, const std::vector<double>& w) {
        std::discrete_distribution<std::size_t> pick(w.begin(), w.end());
        return pool[pick(rng)];
    };

    // Course loads.
    std::map<std::pair<School, int>, std::vector<std::uint32_t>> individual_requests;
    for (std::uint32_t s = 0; s < students.size(); ++s) {
        const auto r = rank_of[s];
        const auto& st = students[s];
        const auto& weights = st.career == Career::undergraduate ? cfg.undergraduate_school_weights
                                                                 : cfg.graduate_school_weights;
        const auto load = std::uniform_int_distribution<std::uint32_t>(cfg.load_min[r], cfg.load_max[r])(rng);
        std::set<std::size_t> taken;
        for (std::uint32_t slot = 0; slot < load; ++slot) {
            bool placed = false;
            for (int attempt = 0; attempt < 64 && !placed; ++attempt) {
                std::size_t course;
                if (!core_pool.empty() && unit(rng) < cfg.core_probability[r]) {
                    course = pick_from(core_pool, core_weights);
                } else {
                    School school = st.school;
                    if (unit(rng) < cfg.cross_school_probability[r]) school = draw_key(weights, rng);
                    const int level = draw_key(cfg.level_mix[r], rng);
                    auto it = pools.find({school, level});
                    if (it == pools.end() || it->second.empty()) continue;
                    course = pick_from(it->second,
                                       zipf_weights(it->second.size(), cfg.major_popularity_exponent));
                }
                if (taken.insert(course).second) {
                    courses[course].students.push_back(s);
                    placed = true;
                }
            }
            if (!placed)
                throw InfeasibleError("cannot fill course load of student " + st.id +
                                      "; course pools are too small");
        }
        const double rate = cfg.individual_rate[r];
        auto requests = static_cast<std::uint32_t>(rate);
        if (unit(rng) < rate - static_cast<double>(requests)) ++requests;
        const int level = st.career == Career::undergraduate ? 4 : (st.rank == Rank::doctoral ? 8 : 6);
        for (std::uint32_t i = 0; i < requests; ++i) individual_requests[{st.school, level}].push_back(s);
    }

    // Sections for regular courses.
    std::vector<Section> sections;
    std::vector<EnrollmentDataset::Row> rows;
    auto add_section = [&](const std::string& code, std::size_t serial,
                           const std::vector<std::uint32_t>& members) {
        char suffix[8];
        std::snprintf(suffix, sizeof suffix, ".%03zu", serial);
        Section sec;
        sec.id = code + suffix;
        sec.course_code = code;
        const auto info = course_taxonomy(code);
        sec.school = info.school;
        sec.level = info.level;
        sec.weekly_contact_hours = info.weekly_contact_hours;
        sec.delivery = unit(rng) < cfg.online_share ? Delivery::online : Delivery::in_person;
        for (auto s : members) rows.push_back({students[s].id, sec.id});
        sections.push_back(std::move(sec));
    };
    for (auto& course : courses) {
        auto& members = course.students;
        if (members.empty()) continue;
        std::shuffle(members.begin(), members.end(), rng);
        const auto cap = draw_size(course.core ? cfg.core_section_sizes : cfg.section_sizes, rng);
        const std::size_t n = members.size();
        const std::size_t k = (n + cap - 1) / cap;
        std::size_t begin = 0;
        for (std::size_t i = 0; i < k; ++i) {
            const std::size_t size = n / k + (i < n % k ? 1 : 0);
            std::vector<std::uint32_t> part(members.begin() + static_cast<std::ptrdiff_t>(begin),
                                            members.begin() + static_cast<std::ptrdiff_t>(begin + size));
            add_section(course.code, i + 1, part);
            begin += size;
        }
    }

    // Individual instruction: zero-contact-hour courses whose sections hold
    // small groups. A student appears at most once per course.
    for (auto& [key, requesters] : individual_requests) {
        const auto prefixes = prefixes_of(key.first);
        std::size_t cursor = 0;
        std::shuffle(requesters.begin(), requesters.end(), rng);
        std::string code;
        std::size_t serial = cfg.individual_sections_per_course;
        std::set<std::uint32_t> enrolled;
        std::size_t begin = 0;
        while (begin < requesters.size()) {
            const auto size = std::min<std::size_t>(
                requesters.size() - begin,
                std::uniform_int_distribution<std::uint32_t>(1, cfg.individual_group_max)(rng));
            std::vector<std::uint32_t> group(requesters.begin() + static_cast<std::ptrdiff_t>(begin),
                                             requesters.begin() + static_cast<std::ptrdiff_t>(begin + size));
            std::sort(group.begin(), group.end());
            group.erase(std::unique(group.begin(), group.end()), group.end());
            const bool clash = std::any_of(group.begin(), group.end(),
                                           [&](std::uint32_t s) { return enrolled.count(s) > 0; });
            if (serial == cfg.individual_sections_per_course || clash) {
                code = codes.next(prefixes, cursor, key.second, 0);
                serial = 0;
                enrolled.clear();
            }
            enrolled.insert(group.begin(), group.end());
            add_section(code, ++serial, group);
            begin += size;
        }
    }

    return EnrollmentDataset::assemble(std::move(students), std::move(sections), rows);
}

}  // namespace coenroll
