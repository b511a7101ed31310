#include "riesz/oracle.hpp"

#include <cmath>

#include "doctest.h"
#include "riesz/rng.hpp"
#include "riesz/ultrametric.hpp"
#include "test_support.hpp"

using namespace riesz;

TEST_CASE("brute force recovers the fixture optimum with all witnesses") {
  const MetricInstance m = tree_to_metric(testsupport::six_taxa_tree());
  const OracleResult r = brute_force_riesz(m, 3, Exponent(1));
  CHECK(r.enumerated == 20);
  CHECK(r.optimum == doctest::Approx(3.0 / 11.0).epsilon(1e-12));
  // optimal = no cherry pair selected; witnesses are lexicographically sorted
  REQUIRE_FALSE(r.witnesses.empty());
  CHECK(std::is_sorted(r.witnesses.begin(), r.witnesses.end()));
  for (const auto& w : r.witnesses) {
    CHECK_FALSE(testsupport::contains_pair(w, 0, 1));
    CHECK_FALSE(testsupport::contains_pair(w, 2, 3));
  }
  // one leaf per top-level group in {a,b}x{c,d}x{e,f} plus the {e,f}+one cases
  CHECK(r.witnesses.size() == 12);
  CHECK(r.witnesses.front() == std::vector<int>{0, 2, 4});
}

TEST_CASE("k equal to n leaves a single candidate") {
  const MetricInstance m = tree_to_metric(testsupport::six_taxa_tree());
  const OracleResult r = brute_force_riesz(m, 6, Exponent(2));
  CHECK(r.enumerated == 1);
  CHECK(r.witnesses.size() == 1);
  CHECK(r.witnesses[0] == std::vector<int>{0, 1, 2, 3, 4, 5});
}

TEST_CASE("tiny k follows the energy convention") {
  const MetricInstance m = tree_to_metric(testsupport::six_taxa_tree());
  const OracleResult r = brute_force_riesz(m, 1, Exponent(2));
  CHECK(r.optimum == 0.0);
  CHECK(r.witnesses.size() == 6);
}

TEST_CASE("mpd brute force on a hand-enumerable line") {
  const LineInstance inst = LineInstance::from_sorted({0, 1, 3, 6});
  const OracleResult r = brute_force_mpd(line_metric(inst), 3);
  CHECK(r.enumerated == 4);
  CHECK(r.optimum == doctest::Approx(3.0));
  REQUIRE(r.witnesses.size() == 1);
  CHECK(r.witnesses[0] == std::vector<int>{0, 2, 3});
}

TEST_CASE("mpd brute force conventions and clique metrics") {
  const MetricInstance m = tree_to_metric(testsupport::six_taxa_tree());
  CHECK(brute_force_mpd(m, 1).optimum == kInf);

  // a graph with a 3-clique: optimum bottleneck 2 at the clique
  const Graph g = Graph::make(4, {{0, 1}, {0, 2}, {1, 2}});
  const ReductionOutput red = clique_to_rssp(g, 3, Exponent(1));
  const OracleResult r = brute_force_mpd(red.instance, 3);
  CHECK(r.optimum == doctest::Approx(2.0));
  REQUIRE(r.witnesses.size() == 1);
  CHECK(r.witnesses[0] == std::vector<int>{0, 1, 2});
}

TEST_CASE("enumeration cap refuses oversized requests with the count") {
  SplitMix64 rng(3);
  const MetricInstance m = testsupport::random_euclidean_metric(rng, 20);
  OracleOptions opt;
  opt.cap = 100;
  try {
    brute_force_riesz(m, 10, Exponent(1), opt);
    FAIL("expected CapExceeded");
  } catch (const CapExceeded& e) {
    CHECK(e.count() > 100);
  }
}

TEST_CASE("threaded sweeps match the single-threaded result") {
  SplitMix64 rng(41);
  const MetricInstance m = testsupport::random_euclidean_metric(rng, 11);
  for (int k : {2, 4}) {
    const OracleResult base = brute_force_riesz(m, k, Exponent(1.5));
    OracleOptions opt;
    opt.threads = 4;
    const OracleResult par = brute_force_riesz(m, k, Exponent(1.5), opt);
    CHECK(base.optimum == par.optimum);
    CHECK(base.witnesses == par.witnesses);
    CHECK(base.enumerated == par.enumerated);
  }
}

TEST_CASE("pruned sweep keeps the optimum") {
  SplitMix64 rng(43);
  const MetricInstance m = testsupport::random_euclidean_metric(rng, 10);
  OracleOptions pruned;
  pruned.prune = true;
  for (int k : {3, 5}) {
    const OracleResult base = brute_force_riesz(m, k, Exponent(2));
    const OracleResult fast = brute_force_riesz(m, k, Exponent(2), pruned);
    CHECK(close_rel(base.optimum, fast.optimum));
    CHECK(base.witnesses == fast.witnesses);
  }
}

TEST_CASE("log-space keys survive exponents that underflow plain doubles") {
  // distances spread over [1, 20]; at s=5000 every pairwise power underflows
  MetricInstance m({"a", "b", "c", "d"},
                   {0, 1, 20, 20, 1, 0, 20, 20, 20, 20, 0, 3, 20, 20, 3, 0});
  const OracleResult r = brute_force_riesz(m, 2, Exponent(5000));
  // exactly the four pairs at distance 20; the 1- and 3-pairs never tie in
  REQUIRE(r.witnesses.size() == 4);
  for (const auto& w : r.witnesses)
    CHECK(mpd(m, Subset(w)) == doctest::Approx(20.0));
}

TEST_CASE("naive line DP is exact for k=2") {
  SplitMix64 rng(47);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = rng.range_int(2, 8);
    std::vector<double> xs;
    for (int i = 0; i < n; ++i) xs.push_back(rng.range_real(0, 10));
    std::sort(xs.begin(), xs.end());
    bool ok = true;
    for (int i = 1; i < n; ++i) ok = ok && xs[i] - xs[i - 1] > 1e-6;
    if (!ok) continue;
    const LineInstance inst = LineInstance::from_sorted(xs);
    const NaiveLineDp naive = naive_line_riesz_dp(inst, 2, Exponent(1));
    const OracleResult best = brute_force_riesz(line_metric(inst), 2, Exponent(1));
    CHECK(close_rel(riesz_energy(line_metric(inst), naive.subset, Exponent(1)),
                    best.optimum));
  }
}

TEST_CASE("counterexample search finds a naive-DP failure") {
  CounterexampleConfig cfg;
  cfg.seed = 20240601;
  cfg.budget = 20000;
  const CounterexampleReport r = find_line_counterexample(cfg);
  REQUIRE(r.found);
  CHECK(r.gap > 1e-6);
  CHECK(r.heuristic_value > r.optimal_value);
  // re-check the reported instance end to end
  const LineInstance inst = LineInstance::from_sorted(r.points);
  const MetricInstance m = line_metric(inst);
  CHECK(close_rel(riesz_energy(m, Subset(r.heuristic_subset), Exponent(r.s)),
                  r.heuristic_value));
  const OracleResult best = brute_force_riesz(m, r.k, Exponent(r.s));
  CHECK(close_rel(best.optimum, r.optimal_value));
}

TEST_CASE("the exact MPD DP never triggers the same search") {
  CounterexampleConfig cfg;
  cfg.seed = 99;
  cfg.budget = 3000;
  cfg.objective = SearchObjective::kMpdDp;
  const CounterexampleReport r = find_line_counterexample(cfg);
  CHECK_FALSE(r.found);
  CHECK(r.tried > 0);
}

TEST_CASE("search respects its documented bounds") {
  CounterexampleConfig cfg;
  cfg.max_n = 9;
  CHECK_THROWS_AS(find_line_counterexample(cfg), InputError);
  cfg.max_n = 8;
  cfg.max_k = 5;
  CHECK_THROWS_AS(find_line_counterexample(cfg), InputError);
}

TEST_CASE("two-point instances never produce a counterexample") {
  CounterexampleConfig cfg;
  cfg.min_n = cfg.max_n = 2;
  cfg.min_k = cfg.max_k = 2;
  cfg.budget = 500;
  cfg.seed = 5;
  const CounterexampleReport r = find_line_counterexample(cfg);
  CHECK_FALSE(r.found);
  CHECK(r.tried == 500);
}

TEST_CASE("binomial counting saturates at the cap") {
  CHECK(binomial_capped(6, 3, 1000) == 20);
  CHECK(binomial_capped(40, 20, 1000) == 1001);
  CHECK(binomial_capped(5, 6, 1000) == 0);
  CHECK(binomial_capped(5, 0, 1000) == 1);
}
