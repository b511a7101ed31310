// Command-line front end: parse instance files, dispatch to the library, and
// emit machine-readable (JSON, default) or aligned text results.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "riesz/io.hpp"

namespace {

using riesz::io::json;

struct OutputOptions {
  std::string format = "json";
  std::string path;  // empty -> stdout
};

void add_output_options(CLI::App* cmd, OutputOptions& out) {
  cmd->add_option("--format", out.format, "Output format")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
  cmd->add_option("-o,--output", out.path, "Write output to a file");
}

void emit(const json& j, const OutputOptions& out) {
  const std::string rendered =
      out.format == "json" ? riesz::io::dump(j) : riesz::io::to_text(j);
  if (out.path.empty()) {
    std::cout << rendered;
    return;
  }
  std::ofstream f(out.path, std::ios::binary);
  if (!f) throw riesz::InputError("cannot write file: " + out.path);
  f << rendered;
}

long long default_cap() {
  if (const char* env = std::getenv("RIESZ_CAP")) {
    try {
      return std::stoll(env);
    } catch (const std::exception&) {
      throw riesz::InputError("RIESZ_CAP must be an integer");
    }
  }
  return 20'000'000;
}

// "a,c,e" or "0,2,4" -> Subset; integer tokens are indices, otherwise labels.
riesz::Subset parse_subset(const std::string& arg, const riesz::MetricInstance& m) {
  std::vector<std::string> tokens;
  std::string token;
  std::istringstream in(arg);
  while (std::getline(in, token, ',')) tokens.push_back(token);
  if (tokens.empty()) return riesz::Subset(std::vector<int>{});

  bool all_ints = true;
  std::vector<int> idx;
  for (const auto& t : tokens) {
    std::size_t used = 0;
    try {
      idx.push_back(std::stoi(t, &used));
    } catch (const std::exception&) {
      all_ints = false;
      break;
    }
    if (used != t.size()) {
      all_ints = false;
      break;
    }
  }
  if (!all_ints) {
    idx.clear();
    for (const auto& t : tokens) idx.push_back(riesz::label_index(m, t));
  }
  std::sort(idx.begin(), idx.end());
  return riesz::Subset(std::move(idx));
}

json subset_labels(const riesz::Subset& sub, const std::vector<std::string>& labels) {
  json out = json::array();
  for (int i : sub.indices()) out.push_back(labels[i]);
  return out;
}

int run(int argc, char** argv) {
  CLI::App app{"Exact minimum Riesz s-energy subset selection toolkit"};
  app.require_subcommand(1);

  // ---- energy ----
  auto* energy = app.add_subcommand("energy", "Riesz s-energy of one subset");
  std::string energy_file, energy_subset;
  double energy_s = 1.0;
  OutputOptions energy_out;
  energy->add_option("input", energy_file, "Metric instance (JSON or CSV)")->required();
  energy->add_option("--subset", energy_subset, "Comma-separated labels or indices")
      ->required();
  energy->add_option("-s", energy_s, "Riesz exponent")->required();
  add_output_options(energy, energy_out);

  // ---- solve-tree ----
  auto* solve = app.add_subcommand(
      "solve-tree", "Exact optimal k-subset on an ultrametric tree");
  std::string solve_file, solve_table;
  int solve_k = 0;
  double solve_s = 1.0;
  OutputOptions solve_out;
  solve->add_option("input", solve_file, "Tree (JSON or Newick)")->required();
  solve->add_option("-k", solve_k, "Subset size")->required();
  solve->add_option("-s", solve_s, "Riesz exponent")->required();
  solve->add_option("--table", solve_table, "Also dump the DP table as CSV");
  add_output_options(solve, solve_out);

  // ---- brute ----
  auto* brute = app.add_subcommand("brute", "Exhaustive optimum over k-subsets");
  std::string brute_file;
  int brute_k = 0, brute_threads = 1;
  double brute_s = 1.0;
  bool brute_mpd = false;
  long long brute_cap = 0;
  OutputOptions brute_out;
  brute->add_option("input", brute_file, "Metric instance (JSON or CSV)")->required();
  brute->add_option("-k", brute_k, "Subset size")->required();
  brute->add_option("-s", brute_s, "Riesz exponent (ignored with --mpd)");
  brute->add_flag("--mpd", brute_mpd, "Maximize the minimum pairwise distance instead");
  brute->add_option("--cap", brute_cap, "Enumeration cap (default RIESZ_CAP or 2e7)");
  brute->add_option("--threads", brute_threads, "Worker threads");
  add_output_options(brute, brute_out);

  // ---- mpd-line ----
  auto* mpdline = app.add_subcommand("mpd-line", "Exact max-min dispersion on the line");
  std::string mpdline_file, mpdline_method = "dp";
  int mpdline_k = 0;
  double mpdline_tau = 0.0;
  OutputOptions mpdline_out;
  mpdline->add_option("input", mpdline_file, "Line instance (JSON or numbers)")->required();
  mpdline->add_option("-k", mpdline_k, "Subset size")->required();
  mpdline->add_option("--method", mpdline_method, "Algorithm")
      ->check(CLI::IsMember({"dp", "search"}))
      ->capture_default_str();
  mpdline->add_option("--tau", mpdline_tau,
                      "Run only the greedy feasibility test at this separation");
  add_output_options(mpdline, mpdline_out);

  // ---- reduce-clique ----
  auto* clique = app.add_subcommand(
      "reduce-clique", "Clique instance -> energy-threshold instance");
  std::string clique_file;
  int clique_k = 0;
  double clique_s = 1.0;
  bool clique_verify = false;
  OutputOptions clique_out;
  clique->add_option("input", clique_file, "Graph (edge list or JSON)")->required();
  clique->add_option("-k", clique_k, "Clique size")->required();
  clique->add_option("-s", clique_s, "Riesz exponent")->required();
  clique->add_flag("--verify", clique_verify,
                   "Exhaustively check the decision equivalence (n <= 12)");
  add_output_options(clique, clique_out);

  // ---- reduce-gis ----
  auto* gis = app.add_subcommand(
      "reduce-gis", "Planar independence instance -> energy-threshold instance");
  std::string gis_file;
  bool gis_verify = false;
  int gis_k = 0;
  double gis_delta = 0.0;
  OutputOptions gis_out;
  gis->add_option("input", gis_file, "Planar instance JSON")->required();
  gis->add_option("-k", gis_k, "Override the file's target size");
  gis->add_option("--delta", gis_delta, "Override the file's threshold");
  gis->add_flag("--verify", gis_verify,
                "Exhaustively check the decision equivalence (n <= 12)");
  add_output_options(gis, gis_out);

  // ---- large-s ----
  auto* larges = app.add_subcommand(
      "large-s", "Exponent above which energy minimizers maximize the MPD");
  std::string larges_file;
  int larges_k = 0;
  long long larges_cap = 0;
  OutputOptions larges_out;
  larges->add_option("input", larges_file, "Metric instance (JSON or CSV)")->required();
  larges->add_option("-k", larges_k, "Subset size")->required();
  larges->add_option("--cap", larges_cap, "Enumeration cap");
  add_output_options(larges, larges_out);

  // ---- bounds ----
  auto* bounds = app.add_subcommand(
      "bounds", "Far-field budget measured on a generated disc packing");
  double bounds_r = 0.5, bounds_s = 3.0;
  int bounds_layers = 5;
  OutputOptions bounds_out;
  bounds->add_option("-r,--radius", bounds_r, "Disc radius")->capture_default_str();
  bounds->add_option("-s", bounds_s, "Riesz exponent (> 2)")->capture_default_str();
  bounds->add_option("--layers", bounds_layers, "Packing rings")->capture_default_str();
  add_output_options(bounds, bounds_out);

  // ---- counterexample ----
  auto* cx = app.add_subcommand(
      "counterexample",
      "Search for an instance where the left-right line DP picks a suboptimal subset");
  riesz::CounterexampleConfig cfg;
  std::string cx_gen = "uniform", cx_objective = "riesz";
  OutputOptions cx_out;
  cx->add_option("--seed", cfg.seed, "PRNG seed")->capture_default_str();
  cx->add_option("--budget", cfg.budget, "Instances to try")->capture_default_str();
  cx->add_option("--min-n", cfg.min_n, "Smallest point count")->capture_default_str();
  cx->add_option("--max-n", cfg.max_n, "Largest point count (<= 8)")->capture_default_str();
  cx->add_option("--min-k", cfg.min_k, "Smallest subset size")->capture_default_str();
  cx->add_option("--max-k", cfg.max_k, "Largest subset size (<= 4)")->capture_default_str();
  cx->add_option("-s", cfg.s, "Riesz exponent")->capture_default_str();
  cx->add_option("--gen", cx_gen, "Point generator")
      ->check(CLI::IsMember({"uniform", "grid"}))
      ->capture_default_str();
  cx->add_option("--objective", cx_objective,
                 "riesz: naive DP (expected to fail); mpd: exact DP (control)")
      ->check(CLI::IsMember({"riesz", "mpd"}))
      ->capture_default_str();
  cx->add_option("--gap", cfg.min_gap, "Required discrepancy")->capture_default_str();
  add_output_options(cx, cx_out);

  // ---- validate ----
  auto* validate = app.add_subcommand("validate", "Validity report for a metric or tree");
  std::string validate_file;
  OutputOptions validate_out;
  validate->add_option("input", validate_file, "Metric (JSON/CSV) or tree (JSON/Newick)")
      ->required();
  add_output_options(validate, validate_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  riesz::OracleOptions oracle_opt;
  oracle_opt.cap = default_cap();

  if (energy->parsed()) {
    const auto m = riesz::io::load_metric(riesz::io::slurp(energy_file));
    const auto sub = parse_subset(energy_subset, m);
    json j;
    j["energy"] = riesz::io::jreal(riesz::riesz_energy(m, sub, riesz::Exponent(energy_s)));
    j["k"] = sub.size();
    j["s"] = riesz::io::jreal(energy_s);
    j["subset"] = subset_labels(sub, m.labels());
    emit(j, energy_out);
  } else if (solve->parsed()) {
    const auto tree = riesz::parse_tree(riesz::io::slurp(solve_file));
    const auto result = riesz::solve_ultrametric(tree, solve_k, riesz::Exponent(solve_s));
    json j;
    j["energy"] = riesz::io::jreal(result.energy);
    j["k"] = solve_k;
    j["s"] = riesz::io::jreal(solve_s);
    j["subset"] = subset_labels(result.subset, tree.leaf_labels());
    j["indices"] = result.subset.indices();
    emit(j, solve_out);
    if (!solve_table.empty()) {
      std::ofstream f(solve_table, std::ios::binary);
      if (!f) throw riesz::InputError("cannot write file: " + solve_table);
      f << riesz::io::energy_table_to_csv(result.table);
    }
  } else if (brute->parsed()) {
    const auto m = riesz::io::load_metric(riesz::io::slurp(brute_file));
    if (brute_cap > 0) oracle_opt.cap = brute_cap;
    oracle_opt.threads = brute_threads;
    const auto result =
        brute_mpd ? riesz::brute_force_mpd(m, brute_k, oracle_opt)
                  : riesz::brute_force_riesz(m, brute_k, riesz::Exponent(brute_s),
                                             oracle_opt);
    json j = riesz::io::oracle_to_json(result);
    j["objective"] = brute_mpd ? "mpd" : "riesz";
    j["k"] = brute_k;
    if (!brute_mpd) j["s"] = riesz::io::jreal(brute_s);
    emit(j, brute_out);
  } else if (mpdline->parsed()) {
    const auto inst = riesz::io::load_line(riesz::io::slurp(mpdline_file));
    json j;
    if (mpdline->count("--tau") > 0) {
      const auto g = riesz::greedy_feasible(inst, mpdline_k, mpdline_tau);
      j["feasible"] = g.feasible;
      j["selection"] = g.selection.indices();
      j["k"] = mpdline_k;
      j["tau"] = riesz::io::jreal(mpdline_tau);
    } else {
      const auto result = mpdline_method == "dp"
                              ? riesz::line_mpd_dp(inst, mpdline_k)
                              : riesz::line_mpd_search(inst, mpdline_k);
      j["value"] = riesz::io::jreal(result.value);
      j["subset"] = result.subset.indices();
      j["k"] = mpdline_k;
      j["method"] = mpdline_method;
    }
    emit(j, mpdline_out);
  } else if (clique->parsed()) {
    const auto g = riesz::io::load_graph(riesz::io::slurp(clique_file));
    const auto red = riesz::clique_to_rssp(g, clique_k, riesz::Exponent(clique_s));
    json j = riesz::io::reduction_to_json(red);
    if (clique_verify) {
      if (g.size() > 12)
        throw riesz::CapExceeded("--verify is exhaustive and limited to n <= 12",
                                 g.size());
      const auto v = riesz::verify_clique_reduction(g, red, oracle_opt);
      j["clique_exists"] = v.clique_exists;
      j["min_energy"] = riesz::io::jreal(v.min_energy);
      j["equivalent"] = v.decision_matches;
      j["exact_at_threshold"] = v.exact_at_threshold;
      if (!v.decision_matches || !v.exact_at_threshold)
        throw riesz::InvariantViolation("clique reduction failed verification");
    }
    emit(j, clique_out);
  } else if (gis->parsed()) {
    auto p = riesz::io::planar_from_json(
        json::parse(riesz::io::slurp(gis_file), nullptr, true));
    if (gis->count("-k") > 0 || gis->count("--delta") > 0) {
      p = riesz::PlanarInstance::make(
          p.points(), gis->count("--delta") > 0 ? gis_delta : p.delta(),
          gis->count("-k") > 0 ? gis_k : p.k());
    }
    const auto red_or_trivial = riesz::gis_to_rssp(p);
    if (std::holds_alternative<riesz::TrivialInstance>(red_or_trivial)) {
      emit(riesz::io::trivial_to_json(std::get<riesz::TrivialInstance>(red_or_trivial)),
           gis_out);
    } else {
      const auto& red = std::get<riesz::ReductionOutput>(red_or_trivial);
      json j = riesz::io::reduction_to_json(red);
      if (gis_verify) {
        if (p.size() > 12)
          throw riesz::CapExceeded("--verify is exhaustive and limited to n <= 12",
                                   p.size());
        const auto v = riesz::verify_gis_reduction(p, red, oracle_opt);
        j["independent_exists"] = v.independent_exists;
        j["equivalent"] = v.decision_matches;
        j["separated"] = v.separated;
        j["max_independent_energy_scaled"] =
            riesz::io::jreal(v.max_independent_energy_scaled);
        j["min_dependent_energy_scaled"] =
            riesz::io::jreal(v.min_dependent_energy_scaled);
        if (!v.decision_matches || !v.separated)
          throw riesz::InvariantViolation("independence reduction failed verification");
      }
      emit(j, gis_out);
    }
  } else if (larges->parsed()) {
    const auto m = riesz::io::load_metric(riesz::io::slurp(larges_file));
    if (larges_cap > 0) oracle_opt.cap = larges_cap;
    const auto result = riesz::large_s_threshold(m, larges_k, oracle_opt);
    json j = riesz::io::large_s_to_json(result);
    j["k"] = larges_k;
    emit(j, larges_out);
  } else if (bounds->parsed()) {
    const auto report =
        riesz::verify_budget(bounds_r, riesz::Exponent(bounds_s), bounds_layers);
    emit(riesz::io::budget_to_json(report), bounds_out);
    if (!(report.slack > 0.0))
      throw riesz::InvariantViolation("far-field budget violated by the packing");
  } else if (cx->parsed()) {
    cfg.gen = cx_gen == "grid" ? riesz::PointGen::kGrid : riesz::PointGen::kUniform;
    cfg.objective = cx_objective == "mpd" ? riesz::SearchObjective::kMpdDp
                                          : riesz::SearchObjective::kRieszNaiveDp;
    const auto report = riesz::find_line_counterexample(cfg);
    emit(riesz::io::counterexample_to_json(report), cx_out);
  } else if (validate->parsed()) {
    const std::string text = riesz::io::slurp(validate_file);
    json j;
    // Trees are JSON objects with "children"/"leaf" or Newick; metrics are
    // JSON objects with "dist" or CSV.
    bool is_tree = false;
    try {
      const json parsed = json::parse(text);
      is_tree = parsed.is_object() && (parsed.contains("children") || parsed.contains("leaf"));
    } catch (const json::parse_error&) {
      const auto first = text.find_first_not_of(" \t\r\n");
      is_tree = first != std::string::npos && text[first] == '(';
    }
    if (is_tree) {
      j["type"] = "tree";
      try {
        const auto tree = riesz::parse_tree(text);
        const auto m = riesz::tree_to_metric(tree);
        const auto rep = riesz::check_ultrametricity(m);
        j["valid"] = rep.ultrametric;
        j["leaves"] = tree.leaf_count();
        j["violations"] = json::array();
      } catch (const riesz::InputError& e) {
        j["valid"] = false;
        j["violations"] = {e.what()};
      }
    } else {
      j["type"] = "metric";
      const auto m = riesz::io::load_metric(text);
      const auto rep = riesz::validate_metric(m);
      j = riesz::io::metric_report_to_json(rep, m);
      j["type"] = "metric";
      j["ultrametric"] = riesz::check_ultrametricity(m).ultrametric;
    }
    emit(j, validate_out);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const riesz::CapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const riesz::InvariantViolation& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const riesz::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
