#include "coenroll/report.hpp"

#include <algorithm>
#include <ostream>

#include <fmt/format.h>

namespace coenroll {

using nlohmann::json;

std::string format_value(const json& v) {
    if (v.is_number_float()) return fmt::format("{}", v.get<double>());
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

std::vector<ReportRow> report_rows(const MetricsReport& r) {
    return {
        {"Nodes, full graph", "nodes_full_graph", r.nodes_full},
        {"Edges, full graph", "edges_full_graph", r.edges_full},
        {"Nodes, n", "nodes_n", r.nodes_lcc},
        {"Edges, m", "edges_m", r.edges_lcc},
        {"Average degree", "average_degree", r.avg_degree},
        {"Percent nodes in largest comp.", "percent_nodes_in_largest_comp", r.pct_in_largest_component},
        {"Average edge weight", "average_edge_weight", r.avg_edge_weight},
        {"Average geodesic distance, l_G", "average_geodesic_distance_l_g", r.avg_geodesic},
        {"Diameter of network", "diameter_of_network", r.diameter},
        {"Unweighted local C_G", "unweighted_local_c_g", r.local_clustering},
        {"Unweighted global T_G", "unweighted_global_t_g", r.global_transitivity},
        {"Network density, r_G", "network_density_r_g", r.network_density},
    };
}

namespace {

void write_text_table(std::ostream& out, const std::vector<std::string>& header,
                      const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> width(header.size());
    for (std::size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
    for (const auto& row : rows)
        for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
    auto emit = [&](const std::vector<std::string>& row) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c == 0)
                out << fmt::format("{:<{}}", row[c], width[c]);
            else
                out << fmt::format("  {:>{}}", row[c], width[c]);
        }
        out << '\n';
    };
    emit(header);
    for (const auto& row : rows) emit(row);
}

}  // namespace

void write_report(std::ostream& out, const std::vector<ReportColumn>& columns, OutputFormat format) {
    if (format == OutputFormat::structured) {
        json doc = json::object();
        for (const auto& [name, report] : columns) {
            json col = json::object();
            for (const auto& row : report_rows(report)) col[row.key] = row.value;
            if (report.geodesic_sampled) col["geodesic_sampled"] = true;
            doc[name] = col;
        }
        out << doc.dump(2) << '\n';
        return;
    }
    std::vector<std::string> header{"Metric"};
    std::vector<std::vector<ReportRow>> per_column;
    for (const auto& [name, report] : columns) {
        header.push_back(name);
        per_column.push_back(report_rows(report));
    }
    std::vector<std::vector<std::string>> rows;
    const std::size_t count = per_column.empty() ? 0 : per_column.front().size();
    for (std::size_t i = 0; i < count; ++i) {
        std::vector<std::string> row{per_column.front()[i].label};
        for (const auto& col : per_column) row.push_back(format_value(col[i].value));
        rows.push_back(std::move(row));
    }
    write_text_table(out, header, rows);
}

void write_curve(std::ostream& out, const ReachabilityCurve& curve, OutputFormat format) {
    if (format == OutputFormat::structured) {
        json doc;
        doc["limit"] = curve.limit;
        doc["curve"] = json::array();
        for (std::size_t k = 0; k < curve.rho.size(); ++k)
            doc["curve"].push_back({{"k", k + 1}, {"rho", curve.rho[k]}});
        out << doc.dump(2) << '\n';
        return;
    }
    out << "k,rho\n";
    for (std::size_t k = 0; k < curve.rho.size(); ++k)
        out << fmt::format("{},{}\n", k + 1, curve.rho[k]);
}

void write_centrality(std::ostream& out, const StudentGraph& g, const CentralityResult& c,
                      std::size_t limit, OutputFormat format) {
    const std::size_t count = std::min(limit, c.ranking.size());
    if (format == OutputFormat::structured) {
        json doc;
        doc["mode"] = std::string(to_string(c.mode));
        doc["students"] = json::array();
        for (std::size_t i = 0; i < count; ++i) {
            const NodeId v = c.ranking[i];
            doc["students"].push_back({{"student_id", g.node(v).id},
                                       {"b_raw", c.raw[v]},
                                       {"b_norm", c.normalized[v]},
                                       {"rank", i + 1}});
        }
        out << doc.dump(2) << '\n';
        return;
    }
    out << "student_id,b_raw,b_norm,rank\n";
    for (std::size_t i = 0; i < count; ++i) {
        const NodeId v = c.ranking[i];
        out << fmt::format("{},{},{},{}\n", g.node(v).id, c.raw[v], c.normalized[v], i + 1);
    }
}

void write_tally(std::ostream& out, const std::vector<CourseTally>& tally, OutputFormat format) {
    if (format == OutputFormat::structured) {
        json doc = json::array();
        for (const auto& t : tally) doc.push_back({{"course_code", t.course_code}, {"count", t.count}});
        out << doc.dump(2) << '\n';
        return;
    }
    out << "course_code,count\n";
    for (const auto& t : tally) out << t.course_code << ',' << t.count << '\n';
}

void write_quintiles(std::ostream& out, const QuintileThresholds& q, OutputFormat format) {
    if (format == OutputFormat::structured) {
        out << json{{"t20", q.t[0]}, {"t40", q.t[1]}, {"t60", q.t[2]}, {"t80", q.t[3]}}.dump(2) << '\n';
        return;
    }
    out << "quantile,threshold\n";
    for (int i = 0; i < 4; ++i) out << (i + 1) * 20 << ',' << q.t[static_cast<std::size_t>(i)] << '\n';
}

json plan_json(const InterventionPlan& plan) {
    json doc;
    doc["kind"] = std::string(to_string(plan.kind));
    json params = json::object();
    if (plan.kind == InterventionKind::size_threshold) {
        params["size_threshold"] = plan.size_threshold;
    } else {
        params["mode"] = std::string(to_string(plan.scalpel.mode));
        params["pivotal_count"] = plan.scalpel.pivotal_count;
        params["course_count"] = plan.scalpel.course_count;
        if (plan.kind == InterventionKind::two_pass_scalpel) {
            params["graduate_courses"] = plan.graduate_courses;
            params["undergraduate_courses"] = plan.undergraduate_courses;
        }
    }
    doc["parameters"] = params;
    doc["removed_course_codes"] = plan.removed_course_codes;
    doc["removed_section_ids"] = plan.removed_section_ids;
    doc["removed_section_count"] = plan.removed_section_count();
    doc["removed_section_share"] = plan.removed_section_share();
    doc["sections_before"] = plan.sections_before;
    doc["sections_after"] = plan.sections_after;
    doc["students_before"] = plan.students_before;
    doc["students_after"] = plan.students_after;
    doc["orphaned_students"] = plan.students_before - plan.students_after;
    return doc;
}

void write_plan(std::ostream& out, const InterventionPlan& plan) { out << plan_json(plan).dump(2) << '\n'; }

void write_comparison(std::ostream& out, const ComparisonReport& c, OutputFormat format) {
    auto rows_before = report_rows(c.before);
    auto rows_after = report_rows(c.after);
    const ReportRow pairs_before{"Node pairs within distance 4", "node_pairs_within_distance_4",
                                 c.pairs_within_4_before};
    const ReportRow pairs_after{pairs_before.label, pairs_before.key, c.pairs_within_4_after};
    // Table order puts the pairs row right after the diameter.
    auto insert_at = [](std::vector<ReportRow>& rows, const ReportRow& row) {
        auto it = std::find_if(rows.begin(), rows.end(),
                               [](const ReportRow& r) { return r.key == "diameter_of_network"; });
        rows.insert(it + 1, row);
    };
    insert_at(rows_before, pairs_before);
    insert_at(rows_after, pairs_after);
    const std::string scope =
        c.scope == PairScope::all_nodes ? "all_retained_nodes" : "largest_component";

    auto delta = [](const json& a, const json& b) -> json {
        if (a.is_number_float() || b.is_number_float()) return b.get<double>() - a.get<double>();
        return b.get<std::int64_t>() - a.get<std::int64_t>();
    };

    if (format == OutputFormat::structured) {
        json doc;
        doc["pairs_scope"] = scope;
        doc["sections_before"] = c.sections_before;
        doc["sections_after"] = c.sections_after;
        for (std::size_t i = 0; i < rows_before.size(); ++i) {
            doc["before"][rows_before[i].key] = rows_before[i].value;
            doc["after"][rows_after[i].key] = rows_after[i].value;
            doc["delta"][rows_before[i].key] = delta(rows_before[i].value, rows_after[i].value);
        }
        out << doc.dump(2) << '\n';
        return;
    }
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < rows_before.size(); ++i)
        rows.push_back({rows_before[i].label, format_value(rows_before[i].value),
                        format_value(rows_after[i].value),
                        format_value(delta(rows_before[i].value, rows_after[i].value))});
    rows.push_back({"Sections", std::to_string(c.sections_before), std::to_string(c.sections_after),
                    std::to_string(static_cast<long long>(c.sections_after) -
                                   static_cast<long long>(c.sections_before))});
    write_text_table(out, {"Metric", "Before", "After", "Delta"}, rows);
    out << "pairs scope: " << scope << '\n';
}

}  // namespace coenroll
