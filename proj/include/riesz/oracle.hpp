#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "riesz/line_mpd.hpp"
#include "riesz/metric.hpp"

namespace riesz {

struct OracleResult {
  double optimum = 0.0;
  // Every subset attaining the optimum (relative 1e-9 for energies, exact for
  // distances), in lexicographic order.
  std::vector<std::vector<int>> witnesses;
  long long enumerated = 0;
};

struct OracleOptions {
  long long cap = 20'000'000;  // refuse enumerations beyond this many subsets
  int threads = 1;
  // Branch-and-bound style pruning of prefixes already above the incumbent.
  // Exact for the optimum, but not used where ground truth must be visibly
  // exhaustive.
  bool prune = false;
};

// Number of k-subsets, saturating at a large sentinel instead of overflowing.
long long binomial_capped(int n, int k, long long cap);

// Global minimum Riesz s-energy over all k-subsets, with all minimizers.
// Energies are compared in log space, so arbitrarily large s is safe.
OracleResult brute_force_riesz(const MetricInstance& m, int k, Exponent s,
                               const OracleOptions& opt = {});

// Global maximum of the minimum pairwise distance over all k-subsets.
OracleResult brute_force_mpd(const MetricInstance& m, int k,
                             const OracleOptions& opt = {});

struct NaiveLineDp {
  double dp_value = 0.0;  // the DP's own objective, not the true energy
  Subset subset;
};

// Left-to-right DP that charges each appended point only its interaction with
// the previously selected point. Deliberately wrong baseline: exact for k=2,
// not exact in general.
NaiveLineDp naive_line_riesz_dp(const LineInstance& inst, int k, Exponent s);

enum class SearchObjective {
  kRieszNaiveDp,  // compare naive line DP selection against brute force
  kMpdDp,         // same search shape for the (exact) line MPD DP
};

enum class PointGen { kUniform, kGrid };

struct CounterexampleConfig {
  int min_n = 4, max_n = 8;
  int min_k = 3, max_k = 4;
  double s = 1.0;
  std::uint64_t seed = 1;
  long long budget = 100'000;
  PointGen gen = PointGen::kUniform;
  SearchObjective objective = SearchObjective::kRieszNaiveDp;
  double min_gap = 1e-6;  // required objective discrepancy
};

struct CounterexampleReport {
  bool found = false;
  long long tried = 0;
  std::vector<double> points;
  int k = 0;
  double s = 1.0;
  std::vector<int> heuristic_subset;
  double heuristic_value = 0.0;  // true objective of the heuristic's pick
  std::vector<int> optimal_subset;
  double optimal_value = 0.0;
  double gap = 0.0;
};

// Random search for an instance where the chosen DP selects a subset whose
// true objective is worse than the brute-force optimum by more than min_gap.
// Exhausting the budget without a hit is a result, not an error.
CounterexampleReport find_line_counterexample(const CounterexampleConfig& cfg);

}  // namespace riesz
