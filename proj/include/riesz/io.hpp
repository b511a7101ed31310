#pragma once

#include <string>

#include "json.hpp"
#include "riesz/bounds.hpp"
#include "riesz/line_mpd.hpp"
#include "riesz/metric.hpp"
#include "riesz/oracle.hpp"
#include "riesz/reductions.hpp"
#include "riesz/ultrametric.hpp"

namespace riesz::io {

using nlohmann::json;

// Doubles destined for output, rounded to 12 significant digits so repeated
// runs diff cleanly. Non-finite values map to the strings "inf"/"-inf".
json jreal(double x);
double round12(double x);

std::string slurp(const std::string& path);  // "-" reads stdin

// ---- instances -------------------------------------------------------------

json metric_to_json(const MetricInstance& m);
MetricInstance metric_from_json(const json& j);
MetricInstance metric_from_csv(const std::string& text);
std::string metric_to_csv(const MetricInstance& m);
// Dispatches on content: '{' -> JSON, otherwise CSV.
MetricInstance load_metric(const std::string& text);

json line_to_json(const LineInstance& inst);
LineInstance line_from_json(const json& j);
// JSON {"xs": [...]} or whitespace/newline-separated numbers.
LineInstance load_line(const std::string& text);

json graph_to_json(const Graph& g);
Graph graph_from_json(const json& j);
// One "u v" pair per line; '#' starts a comment. Vertex count is one past the
// largest endpoint.
Graph graph_from_edge_list(const std::string& text);
Graph load_graph(const std::string& text);

json planar_to_json(const PlanarInstance& p);
PlanarInstance planar_from_json(const json& j);

// ---- results ---------------------------------------------------------------

json oracle_to_json(const OracleResult& r);
json reduction_to_json(const ReductionOutput& red, bool include_instance = true);
json large_s_to_json(const LargeSResult& r);
json trivial_to_json(const TrivialInstance& t);
json budget_to_json(const BudgetReport& b);
json counterexample_to_json(const CounterexampleReport& r);
json metric_report_to_json(const MetricReport& rep, const MetricInstance& m);

// Table rows "node,t,value" for every finite and infinite cell.
std::string energy_table_to_csv(const EnergyTable& table);

// ---- rendering -------------------------------------------------------------

// Canonical dump: 2-space indent, sorted keys (nlohmann default), newline.
std::string dump(const json& j);

// Flat "key: value" rendering of the same JSON for --format text.
std::string to_text(const json& j);

}  // namespace riesz::io
