#include "riesz/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace riesz::io {

double round12(double x) {
  if (!std::isfinite(x)) return x;
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return std::strtod(buf, nullptr);
}

json jreal(double x) {
  if (std::isnan(x)) return nullptr;
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return round12(x);
}

std::string slurp(const std::string& path) {
  if (path == "-") {
    std::ostringstream os;
    os << std::cin.rdbuf();
    return os.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

namespace {

json parse_json(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string(what) + ": " + e.what());
  }
}

double number_at(const json& j, const char* what) {
  if (!j.is_number()) throw InputError(std::string(what) + " must be a number");
  return j.get<double>();
}

}  // namespace

// ---- metric ----------------------------------------------------------------

json metric_to_json(const MetricInstance& m) {
  json j;
  j["labels"] = m.labels();
  json rows = json::array();
  for (int i = 0; i < m.size(); ++i) {
    json row = json::array();
    for (int k = 0; k < m.size(); ++k) row.push_back(jreal(m.dist(i, k)));
    rows.push_back(std::move(row));
  }
  j["dist"] = std::move(rows);
  return j;
}

MetricInstance metric_from_json(const json& j) {
  if (!j.is_object() || !j.contains("labels") || !j.contains("dist"))
    throw InputError("metric JSON needs \"labels\" and \"dist\"");
  std::vector<std::string> labels;
  for (const auto& l : j["labels"]) {
    if (!l.is_string()) throw InputError("labels must be strings");
    labels.push_back(l.get<std::string>());
  }
  std::vector<std::vector<double>> rows;
  for (const auto& row : j["dist"]) {
    std::vector<double> r;
    for (const auto& v : row) r.push_back(number_at(v, "distance"));
    rows.push_back(std::move(r));
  }
  return MetricInstance::from_rows(std::move(labels), rows);
}

MetricInstance metric_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw InputError("empty CSV input");
  std::vector<std::string> labels;
  {
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) {
      // trim surrounding whitespace
      const auto a = cell.find_first_not_of(" \t\r");
      const auto b = cell.find_last_not_of(" \t\r");
      labels.push_back(a == std::string::npos ? "" : cell.substr(a, b - a + 1));
    }
  }
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<double> row;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) {
      try {
        row.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw InputError("bad CSV number: " + cell);
      }
    }
    rows.push_back(std::move(row));
  }
  return MetricInstance::from_rows(std::move(labels), rows);
}

std::string metric_to_csv(const MetricInstance& m) {
  std::ostringstream os;
  for (int i = 0; i < m.size(); ++i)
    os << m.labels()[i] << (i + 1 < m.size() ? ',' : '\n');
  char buf[40];
  for (int i = 0; i < m.size(); ++i)
    for (int k = 0; k < m.size(); ++k) {
      std::snprintf(buf, sizeof(buf), "%.12g", m.dist(i, k));
      os << buf << (k + 1 < m.size() ? ',' : '\n');
    }
  return os.str();
}

MetricInstance load_metric(const std::string& text) {
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    if (c == '{') return metric_from_json(parse_json(text, "metric JSON"));
    break;
  }
  return metric_from_csv(text);
}

// ---- line ------------------------------------------------------------------

json line_to_json(const LineInstance& inst) {
  json j;
  json xs = json::array();
  for (double x : inst.xs()) xs.push_back(jreal(x));
  j["xs"] = std::move(xs);
  return j;
}

LineInstance line_from_json(const json& j) {
  if (!j.is_object() || !j.contains("xs"))
    throw InputError("line JSON needs \"xs\"");
  std::vector<double> xs;
  for (const auto& v : j["xs"]) xs.push_back(number_at(v, "position"));
  return LineInstance::from_values(xs);
}

LineInstance load_line(const std::string& text) {
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    if (c == '{') return line_from_json(parse_json(text, "line JSON"));
    break;
  }
  std::vector<double> xs;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    try {
      xs.push_back(std::stod(tok));
    } catch (const std::exception&) {
      throw InputError("bad line position: " + tok);
    }
  }
  return LineInstance::from_values(xs);
}

// ---- graph -----------------------------------------------------------------

json graph_to_json(const Graph& g) {
  json j;
  j["n"] = g.size();
  json edges = json::array();
  for (const auto& e : g.edges()) edges.push_back({e[0], e[1]});
  j["edges"] = std::move(edges);
  return j;
}

Graph graph_from_json(const json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("edges"))
    throw InputError("graph JSON needs \"n\" and \"edges\"");
  if (!j["n"].is_number_integer()) throw InputError("n must be an integer");
  std::vector<std::array<int, 2>> edges;
  for (const auto& e : j["edges"]) {
    if (!e.is_array() || e.size() != 2)
      throw InputError("each edge must be a pair");
    edges.push_back({e[0].get<int>(), e[1].get<int>()});
  }
  return Graph::make(j["n"].get<int>(), std::move(edges));
}

Graph graph_from_edge_list(const std::string& text) {
  std::vector<std::array<int, 2>> edges;
  int max_vertex = -1;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    int u, v;
    if (!(ls >> u)) continue;
    if (!(ls >> v)) throw InputError("edge line needs two endpoints: " + line);
    edges.push_back({u, v});
    max_vertex = std::max({max_vertex, u, v});
  }
  return Graph::make(max_vertex + 1, std::move(edges));
}

Graph load_graph(const std::string& text) {
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    if (c == '{') return graph_from_json(parse_json(text, "graph JSON"));
    break;
  }
  return graph_from_edge_list(text);
}

// ---- planar ----------------------------------------------------------------

json planar_to_json(const PlanarInstance& p) {
  json j;
  json pts = json::array();
  for (const auto& pt : p.points()) pts.push_back({jreal(pt[0]), jreal(pt[1])});
  j["points"] = std::move(pts);
  j["delta"] = jreal(p.delta());
  j["k"] = p.k();
  return j;
}

PlanarInstance planar_from_json(const json& j) {
  if (!j.is_object() || !j.contains("points") || !j.contains("delta") ||
      !j.contains("k"))
    throw InputError("planar JSON needs \"points\", \"delta\" and \"k\"");
  std::vector<std::array<double, 2>> points;
  for (const auto& pt : j["points"]) {
    if (!pt.is_array() || pt.size() != 2)
      throw InputError("each point must be [x, y]");
    points.push_back({number_at(pt[0], "coordinate"), number_at(pt[1], "coordinate")});
  }
  if (!j["k"].is_number_integer()) throw InputError("k must be an integer");
  return PlanarInstance::make(std::move(points), number_at(j["delta"], "delta"),
                              j["k"].get<int>());
}

// ---- results ---------------------------------------------------------------

json oracle_to_json(const OracleResult& r) {
  json j;
  j["optimum"] = jreal(r.optimum);
  j["witnesses"] = r.witnesses;
  j["enumerated"] = r.enumerated;
  return j;
}

json reduction_to_json(const ReductionOutput& red, bool include_instance) {
  json j;
  j["k"] = red.k;
  j["s"] = jreal(red.s);
  j["T"] = jreal(red.threshold);
  json prov;
  prov["s"] = jreal(red.s);
  prov["T"] = jreal(red.threshold);
  if (red.provenance.d_min) prov["D_min"] = jreal(*red.provenance.d_min);
  if (red.provenance.delta_max)
    prov["delta_max"] = jreal(*red.provenance.delta_max);
  if (red.provenance.d_min_pair || red.provenance.delta_max_pair) {
    json pairs;
    if (red.provenance.d_min_pair)
      pairs["D_min"] = {(*red.provenance.d_min_pair)[0], (*red.provenance.d_min_pair)[1]};
    if (red.provenance.delta_max_pair)
      pairs["delta_max"] = {(*red.provenance.delta_max_pair)[0],
                            (*red.provenance.delta_max_pair)[1]};
    prov["realizing_pairs"] = std::move(pairs);
  }
  if (red.provenance.distance_gap)
    prov["distance_gap"] = jreal(*red.provenance.distance_gap);
  j["provenance"] = std::move(prov);
  if (include_instance) j["instance"] = metric_to_json(red.instance);
  return j;
}

json large_s_to_json(const LargeSResult& r) {
  json j;
  j["s0"] = jreal(r.s0);
  j["D_star"] = jreal(r.d_star);
  j["R"] = r.r ? jreal(*r.r) : json(nullptr);
  j["all_subsets_optimal"] = r.all_subsets_optimal;
  return j;
}

json trivial_to_json(const TrivialInstance& t) {
  json j;
  j["trivial"] = true;
  j["reason"] = t.reason == TrivialInstance::Reason::kNoAdmissiblePairs
                    ? "no_admissible_pairs"
                    : "no_forbidden_pairs";
  j["independent_subset_exists"] = t.independent_subset_exists;
  return j;
}

json budget_to_json(const BudgetReport& b) {
  json j;
  j["r"] = jreal(b.r);
  j["s"] = jreal(b.s);
  j["layers"] = b.layers;
  j["measured"] = jreal(b.measured);
  j["bound"] = jreal(b.bound);
  j["slack"] = jreal(b.slack);
  return j;
}

json counterexample_to_json(const CounterexampleReport& r) {
  json j;
  j["found"] = r.found;
  j["tried"] = r.tried;
  if (!r.found) return j;
  json xs = json::array();
  for (double x : r.points) xs.push_back(jreal(x));
  j["points"] = std::move(xs);
  j["k"] = r.k;
  j["s"] = jreal(r.s);
  j["heuristic"] = {{"subset", r.heuristic_subset},
                    {"value", jreal(r.heuristic_value)}};
  j["optimal"] = {{"subset", r.optimal_subset}, {"value", jreal(r.optimal_value)}};
  j["gap"] = jreal(r.gap);
  return j;
}

json metric_report_to_json(const MetricReport& rep, const MetricInstance& m) {
  json j;
  j["valid"] = rep.valid();
  json violations = json::array();
  for (const auto& v : rep.violations) violations.push_back(describe(v, m));
  j["violations"] = std::move(violations);
  return j;
}

std::string energy_table_to_csv(const EnergyTable& table) {
  std::ostringstream os;
  os << "node,t,value\n";
  char buf[40];
  for (std::size_t node = 0; node < table.values.size(); ++node)
    for (int t = 0; t <= table.k; ++t) {
      const double v = table.values[node][t];
      if (std::isinf(v)) {
        os << node << ',' << t << ",inf\n";
      } else {
        std::snprintf(buf, sizeof(buf), "%.12g", v);
        os << node << ',' << t << ',' << buf << '\n';
      }
    }
  return os.str();
}

// ---- rendering -------------------------------------------------------------

std::string dump(const json& j) { return j.dump(2) + "\n"; }

namespace {

void render(const json& j, const std::string& prefix, std::ostringstream& os) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      const std::string path = prefix.empty() ? key : prefix + "." + key;
      render(value, path, os);
    }
  } else if (j.is_array()) {
    const bool scalars = std::all_of(j.begin(), j.end(), [](const json& e) {
      return !e.is_object() && !e.is_array();
    });
    if (scalars) {
      os << prefix << ":";
      for (const auto& e : j) os << ' ' << e.dump();
      os << '\n';
    } else {
      int i = 0;
      for (const auto& e : j) render(e, prefix + "[" + std::to_string(i++) + "]", os);
    }
  } else {
    os << prefix << ": " << j.dump() << '\n';
  }
}

}  // namespace

std::string to_text(const json& j) {
  std::ostringstream os;
  render(j, "", os);
  return os.str();
}

}  // namespace riesz::io
