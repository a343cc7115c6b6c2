#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "coenroll/centrality.hpp"
#include "coenroll/intervention.hpp"
#include "coenroll/metrics.hpp"

namespace coenroll {

enum class OutputFormat { table, structured };

/// One labelled value of a metrics table. `key` is the lower_snake_case form
/// of `label` used in structured output.
struct ReportRow {
    std::string label;
    std::string key;
    nlohmann::json value;
};

/// Rows in metrics-table order.
std::vector<ReportRow> report_rows(const MetricsReport& r);

using ReportColumn = std::pair<std::string, MetricsReport>;

void write_report(std::ostream& out, const std::vector<ReportColumn>& columns, OutputFormat fmt);

void write_curve(std::ostream& out, const ReachabilityCurve& curve, OutputFormat fmt);

void write_centrality(std::ostream& out, const StudentGraph& g, const CentralityResult& c,
                      std::size_t limit, OutputFormat fmt);

void write_tally(std::ostream& out, const std::vector<CourseTally>& tally, OutputFormat fmt);

void write_quintiles(std::ostream& out, const QuintileThresholds& q, OutputFormat fmt);

nlohmann::json plan_json(const InterventionPlan& plan);
/// Plans are always structured documents.
void write_plan(std::ostream& out, const InterventionPlan& plan);

/// Before/after table with the metrics rows plus "Node pairs within distance 4".
void write_comparison(std::ostream& out, const ComparisonReport& c, OutputFormat fmt);

/// Text value as printed in tables (shortest round-trip form for reals).
std::string format_value(const nlohmann::json& v);

}  // namespace coenroll
