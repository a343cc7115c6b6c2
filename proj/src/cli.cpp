#include "coenroll/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "coenroll/centrality.hpp"
#include "coenroll/enrollment.hpp"
#include "coenroll/error.hpp"
#include "coenroll/intervention.hpp"
#include "coenroll/layout.hpp"
#include "coenroll/metrics.hpp"
#include "coenroll/parallel.hpp"
#include "coenroll/report.hpp"
#include "coenroll/synthgen.hpp"

namespace coenroll {

namespace {

struct CommonFlags {
    std::string input;
    std::vector<std::string> scopes;
    std::string output;
    std::string format = "table";
    std::string prefixes;
    bool strict = false;
    bool include_online = false;
    unsigned threads = 0;
};

struct Loaded {
    EnrollmentDataset dataset;
    std::vector<std::string> warnings;
};

class UsageError : public Error {
public:
    using Error::Error;
};

OutputFormat output_format(const std::string& name) {
    if (name == "table") return OutputFormat::table;
    if (name == "structured" || name == "json") return OutputFormat::structured;
    throw UsageError("--format must be table or structured");
}

PathMode path_mode(const std::string& name) {
    auto m = parse_path_mode(name);
    if (!m) throw UsageError("--mode must be weighted or unweighted");
    return *m;
}

Loaded load(const std::string& path, const CommonFlags& flags) {
    std::optional<PrefixTable> table;
    ParseOptions options;
    options.strict = flags.strict;
    if (!flags.prefixes.empty()) {
        std::ifstream in(flags.prefixes);
        if (!in) throw Error("cannot open '" + flags.prefixes + "'");
        table = PrefixTable::load(in);
        options.prefixes = &*table;
    }
    auto parsed = load_enrollment_file(path, options);
    Loaded l{std::move(parsed.dataset), std::move(parsed.warnings)};
    if (!flags.include_online) l.dataset = filter_in_person(l.dataset);
    if (l.dataset.empty()) throw EmptyDatasetError("no in-person enrollments in '" + path + "'");
    return l;
}

EnrollmentDataset scoped(const EnrollmentDataset& d, const std::string& scope) {
    if (scope.empty() || scope == "all") return d;
    return subset(d, parse_selector(scope));
}

// Writes `content` to path via a temporary sibling and rename, or to `out`.
void emit(const std::string& path, const std::string& content, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << content;
        return;
    }
    const std::filesystem::path target(path);
    std::filesystem::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw Error("cannot write '" + tmp.string() + "'");
        f << content;
        f.flush();
        if (!f) throw Error("write to '" + tmp.string() + "' failed");
    }
    std::filesystem::rename(tmp, target);
}

void add_common(CLI::App* cmd, CommonFlags& flags, bool needs_input) {
    auto* in = cmd->add_option("--in", flags.input, "Enrollment CSV");
    if (needs_input) in->required();
    cmd->add_option("--out", flags.output, "Output path (default stdout)");
    cmd->add_option("--format", flags.format, "table | structured")->capture_default_str();
    cmd->add_option("--prefixes", flags.prefixes, "Prefix-to-school CSV (default: built-in)");
    cmd->add_flag("--strict", flags.strict, "Reject duplicate rows and unknown prefixes");
    cmd->add_flag("--include-online", flags.include_online, "Keep online sections");
    cmd->add_option("--threads", flags.threads, "Worker threads (0 = all cores)");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Co-enrollment contact network analysis"};
    app.require_subcommand(1);
    CommonFlags flags;

    // generate
    std::string config_path, preset = "utd-like-2k";
    std::optional<std::uint64_t> seed;
    auto* generate_cmd = app.add_subcommand("generate", "Write a synthetic enrollment dataset");
    add_common(generate_cmd, flags, false);
    generate_cmd->add_option("--config", config_path, "Generator config (key = value)");
    generate_cmd->add_option("--preset", preset, "Named preset")->capture_default_str();
    generate_cmd->add_option("--seed", seed, "Override the config seed");
    bool dump_config = false;
    generate_cmd->add_flag("--dump-config", dump_config, "Print the effective config instead");

    // metrics
    bool per_component = false;
    auto* metrics_cmd = app.add_subcommand("metrics", "Metrics table for one or more scopes");
    add_common(metrics_cmd, flags, true);
    metrics_cmd->add_option("--scope", flags.scopes, "career=UG | rank=FR | level=5,6 | school=ECS | all");
    metrics_cmd->add_flag("--per-component", per_component, "One column per connected component");
    std::size_t exact_limit = PathOptions{}.exact_node_limit;
    std::size_t samples = PathOptions{}.sample_sources;
    std::uint64_t path_seed = PathOptions{}.seed;
    metrics_cmd->add_option("--exact-limit", exact_limit, "Sample path lengths above this size");
    metrics_cmd->add_option("--samples", samples, "BFS roots for the sampled estimator");
    metrics_cmd->add_option("--seed", path_seed, "Seed for the sampled estimator");

    // curve
    std::uint32_t k_max = 18;
    auto* curve_cmd = app.add_subcommand("curve", "Reachability density of A_binary^k");
    add_common(curve_cmd, flags, true);
    curve_cmd->add_option("--scope", flags.scopes, "Subset selector");
    curve_cmd->add_option("--kmax", k_max, "Largest k")->capture_default_str();

    // centrality / pivotal
    std::string mode = "unweighted";
    std::size_t top = 0, pivotal_k = 100;
    auto* centrality_cmd = app.add_subcommand("centrality", "Betweenness centrality per student");
    add_common(centrality_cmd, flags, true);
    centrality_cmd->add_option("--scope", flags.scopes, "Subset selector");
    centrality_cmd->add_option("--mode", mode, "unweighted | weighted")->capture_default_str();
    centrality_cmd->add_option("--top", top, "Emit only the top N (0 = all)");

    auto* pivotal_cmd = app.add_subcommand("pivotal", "Courses most taken by pivotal students");
    add_common(pivotal_cmd, flags, true);
    pivotal_cmd->add_option("--scope", flags.scopes, "Subset selector");
    pivotal_cmd->add_option("--mode", mode, "unweighted | weighted")->capture_default_str();
    pivotal_cmd->add_option("-k,--pivotal", pivotal_k, "Pivotal students")->capture_default_str();

    // interventions
    std::optional<std::uint32_t> threshold;
    std::optional<int> quintile;
    std::string plan_path;
    auto* size_cmd = app.add_subcommand("intervene-size", "Move sections at or above a size online");
    add_common(size_cmd, flags, true);
    size_cmd->add_option("--threshold", threshold, "Remove sections with enrollment >= T");
    size_cmd->add_option("--quintile", quintile, "Use the 20/40/60/80 enrollment quintile threshold");
    size_cmd->add_option("--plan", plan_path, "Write the intervention plan (structured)");

    std::size_t course_count = 25, grad_courses = 0, ug_courses = 0;
    bool two_pass = false;
    auto* scalpel_cmd = app.add_subcommand("intervene-scalpel", "Scalpel removal of pivotal courses");
    add_common(scalpel_cmd, flags, true);
    scalpel_cmd->add_option("--mode", mode, "unweighted | weighted")->capture_default_str();
    scalpel_cmd->add_option("-k,--pivotal", pivotal_k, "Pivotal students")->capture_default_str();
    scalpel_cmd->add_option("-c,--courses", course_count, "Courses to remove")->capture_default_str();
    scalpel_cmd->add_flag("--two-pass", two_pass, "Add per-population second pass");
    scalpel_cmd->add_option("--grad-courses", grad_courses, "Second-pass graduate budget");
    scalpel_cmd->add_option("--ug-courses", ug_courses, "Second-pass undergraduate budget");
    scalpel_cmd->add_option("--plan", plan_path, "Write the intervention plan (structured)");

    // compare
    std::string before_path, after_path, pairs_scope = "all";
    auto* compare_cmd = app.add_subcommand("compare", "Before/after metrics of an intervention");
    add_common(compare_cmd, flags, false);
    compare_cmd->add_option("--before", before_path, "Baseline enrollment CSV")->required();
    compare_cmd->add_option("--after", after_path, "Post-intervention enrollment CSV")->required();
    compare_cmd->add_option("--pairs-scope", pairs_scope, "all | lcc")->capture_default_str();

    // layout
    std::size_t iterations = 200;
    std::uint64_t layout_seed = 1;
    auto* layout_cmd = app.add_subcommand("layout", "Fruchterman-Reingold node positions");
    add_common(layout_cmd, flags, true);
    layout_cmd->add_option("--scope", flags.scopes, "Subset selector");
    layout_cmd->add_option("--iterations", iterations)->capture_default_str();
    layout_cmd->add_option("--seed", layout_seed)->capture_default_str();
    layout_cmd->add_option("--mode", mode, "Betweenness mode for node sizes")->capture_default_str();

    auto* quintiles_cmd = app.add_subcommand("quintiles", "Section-size enrollment quintiles");
    add_common(quintiles_cmd, flags, true);
    quintiles_cmd->add_option("--scope", flags.scopes, "Subset selector");

    std::vector<std::string> argv_storage = args;
    if (argv_storage.empty()) argv_storage.emplace_back("coenroll");
    std::vector<char*> argv;
    for (auto& a : argv_storage) argv.push_back(a.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return exit_usage;
    }

    try {
        set_thread_count(flags.threads);
        const auto format = output_format(flags.format);
        std::ostringstream body;
        std::string summary;
        auto warn = [&](const std::vector<std::string>& warnings) {
            for (const auto& w : warnings) err << "warning: " << w << '\n';
        };
        auto single_scope = [&] {
            if (flags.scopes.size() > 1) throw UsageError("this command takes one --scope");
            return flags.scopes.empty() ? std::string() : flags.scopes.front();
        };

        if (generate_cmd->parsed()) {
            SynthConfig cfg;
            if (!config_path.empty())
                cfg = load_synth_config_file(config_path);
            else if (preset == "utd-like-2k")
                cfg = utd_like_2k();
            else
                throw UsageError("unknown preset '" + preset + "'");
            if (seed) cfg.seed = *seed;
            if (dump_config) {
                write_synth_config(body, cfg);
                summary = "config " + cfg.name;
            } else {
                const auto d = generate(cfg);
                write_enrollment(body, d);
                summary = fmt::format("generated {}: {} students, {} sections, {} enrollments",
                                      cfg.name, d.students().size(), d.sections().size(),
                                      d.enrollments().size());
            }
        } else if (metrics_cmd->parsed()) {
            auto loaded = load(flags.input, flags);
            warn(loaded.warnings);
            PathOptions options{exact_limit, samples, path_seed};
            std::vector<ReportColumn> columns;
            auto scopes = flags.scopes.empty() ? std::vector<std::string>{"all"} : flags.scopes;
            for (const auto& scope : scopes) {
                const auto d = scoped(loaded.dataset, scope);
                const auto g = build_student_graph(d);
                if (per_component) {
                    auto comps = connected_components(g);
                    for (std::size_t i = 0; i < comps.size() && comps[i].size() >= 2; ++i)
                        columns.emplace_back(fmt::format("{}#{}", scope, i + 1),
                                             component_report(g, comps[i], options));
                } else {
                    columns.emplace_back(scope, full_report(g, options));
                }
            }
            write_report(body, columns, format);
            summary = fmt::format("metrics: {} column(s)", columns.size());
        } else if (curve_cmd->parsed()) {
            auto loaded = load(flags.input, flags);
            warn(loaded.warnings);
            const auto g = build_student_graph(scoped(loaded.dataset, single_scope()));
            const auto curve = reachability_curve(g, k_max);
            write_curve(body, curve, format);
            summary = fmt::format("curve: k=1..{}, rho({})={}", k_max, k_max, curve.rho.back());
        } else if (centrality_cmd->parsed()) {
            auto loaded = load(flags.input, flags);
            warn(loaded.warnings);
            const auto g = build_student_graph(scoped(loaded.dataset, single_scope()));
            const auto c = betweenness(g, path_mode(mode));
            write_centrality(body, g, c, top == 0 ? g.node_count() : top, format);
            summary = fmt::format("centrality ({}): {} students", mode, g.node_count());
        } else if (pivotal_cmd->parsed()) {
            auto loaded = load(flags.input, flags);
            warn(loaded.warnings);
            const auto d = scoped(loaded.dataset, single_scope());
            const auto g = build_student_graph(d);
            const auto p = pivotal_students(g, path_mode(mode), pivotal_k);
            const auto tally = pivotal_course_tally(d, p);
            write_tally(body, tally, format);
            summary = fmt::format("pivotal ({}): {} students across {} courses", mode,
                                  p.nodes.size(), tally.size());
        } else if (size_cmd->parsed()) {
            auto loaded = load(flags.input, flags);
            warn(loaded.warnings);
            if (threshold.has_value() == quintile.has_value())
                throw UsageError("give exactly one of --threshold or --quintile");
            const std::uint32_t t =
                threshold ? *threshold : enrollment_quintiles(loaded.dataset).at_percent(*quintile);
            auto r = remove_sections_by_size(loaded.dataset, t);
            write_enrollment(body, r.dataset);
            if (!plan_path.empty()) {
                std::ostringstream plan;
                write_plan(plan, r.plan);
                emit(plan_path, plan.str(), out);
            }
            summary = fmt::format("intervene-size: T={}, removed {} of {} sections", t,
                                  r.plan.removed_section_count(), r.plan.sections_before);
        } else if (scalpel_cmd->parsed()) {
            auto loaded = load(flags.input, flags);
            warn(loaded.warnings);
            ScalpelOptions opts{path_mode(mode), pivotal_k, course_count};
            auto r = two_pass ? two_pass_scalpel(loaded.dataset, {opts, grad_courses, ug_courses})
                              : scalpel(loaded.dataset, opts);
            warn(r.warnings);
            write_enrollment(body, r.dataset);
            if (!plan_path.empty()) {
                std::ostringstream plan;
                write_plan(plan, r.plan);
                emit(plan_path, plan.str(), out);
            }
            summary = fmt::format("intervene-scalpel: removed {} courses, {} of {} sections ({:.2f}%)",
                                  r.plan.removed_course_codes.size(), r.plan.removed_section_count(),
                                  r.plan.sections_before, 100.0 * r.plan.removed_section_share());
        } else if (compare_cmd->parsed()) {
            PairScope scope;
            if (pairs_scope == "all")
                scope = PairScope::all_nodes;
            else if (pairs_scope == "lcc")
                scope = PairScope::largest_component;
            else
                throw UsageError("--pairs-scope must be all or lcc");
            auto before = load(before_path, flags);
            auto after = load(after_path, flags);
            warn(before.warnings);
            warn(after.warnings);
            const auto c = compare(before.dataset, after.dataset, scope);
            write_comparison(body, c, format);
            summary = fmt::format("compare: pairs within 4 {}% -> {}%", c.pairs_within_4_before,
                                  c.pairs_within_4_after);
        } else if (layout_cmd->parsed()) {
            auto loaded = load(flags.input, flags);
            warn(loaded.warnings);
            const auto g = build_student_graph(scoped(loaded.dataset, single_scope()));
            auto layout = layout_fr(g, {iterations, layout_seed});
            layout.betweenness = betweenness(g, path_mode(mode)).normalized;
            write_layout(body, g, layout);
            summary = fmt::format("layout: {} nodes, {} iterations", g.node_count(), iterations);
        } else if (quintiles_cmd->parsed()) {
            auto loaded = load(flags.input, flags);
            warn(loaded.warnings);
            const auto q = enrollment_quintiles(scoped(loaded.dataset, single_scope()));
            write_quintiles(body, q, format);
            summary = fmt::format("quintiles: {} {} {} {}", q.t[0], q.t[1], q.t[2], q.t[3]);
        }

        emit(flags.output, body.str(), out);
        err << summary << '\n';
        return exit_ok;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return exit_usage;
    } catch (const InfeasibleError& e) {
        err << "infeasible: " << e.what() << '\n';
        return exit_infeasible;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_data;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_data;
    }
}

}  // namespace coenroll
