#include "riesz/line_mpd.hpp"

#include "doctest.h"
#include "riesz/oracle.hpp"
#include "riesz/rng.hpp"

using namespace riesz;

TEST_CASE("dp solves the 0/1/3/6 instance") {
  const LineInstance inst = LineInstance::from_sorted({0, 1, 3, 6});
  const LineMpdResult r = line_mpd_dp(inst, 3);
  CHECK(r.value == doctest::Approx(3.0));
  CHECK(r.subset.indices() == std::vector<int>{0, 2, 3});
}

TEST_CASE("k=2 takes the extremes") {
  const LineInstance inst = LineInstance::from_sorted({-4, 0, 1, 2, 9});
  const LineMpdResult r = line_mpd_dp(inst, 2);
  CHECK(r.value == doctest::Approx(13.0));
  CHECK(r.subset.indices() == std::vector<int>{0, 4});
}

TEST_CASE("equally spaced points, k=4") {
  std::vector<double> xs(10);
  for (int i = 0; i < 10; ++i) xs[i] = i;
  const LineInstance inst = LineInstance::from_sorted(xs);
  CHECK(line_mpd_dp(inst, 4).value == doctest::Approx(3.0));
  CHECK(line_mpd_search(inst, 4).value == doctest::Approx(3.0));
}

TEST_CASE("taking every equally spaced point forces the gap value") {
  const double g = 0.75;
  std::vector<double> xs(7);
  for (int i = 0; i < 7; ++i) xs[i] = 2.0 + g * i;
  const LineInstance inst = LineInstance::from_sorted(xs);
  CHECK(line_mpd_search(inst, 7).value == doctest::Approx(g));
  CHECK(line_mpd_dp(inst, 7).value == doctest::Approx(g));
  CHECK(line_mpd_search(inst, 7).subset.size() == 7);
}

TEST_CASE("greedy feasibility scan") {
  const LineInstance inst = LineInstance::from_sorted({0, 1, 3, 6});
  const GreedyResult r = greedy_feasible(inst, 3, 3.0);
  CHECK(r.feasible);
  CHECK(r.selection.indices() == std::vector<int>{0, 2, 3});

  CHECK_FALSE(greedy_feasible(inst, 2, 7.0).feasible);  // beyond the span
  // tau at the smallest gap takes every point on an evenly spaced instance
  const LineInstance even = LineInstance::from_sorted({0, 2, 4, 6});
  const GreedyResult all = greedy_feasible(even, 4, 2.0);
  CHECK(all.feasible);
  CHECK(all.selection.size() == 4);
  CHECK_THROWS_AS(greedy_feasible(inst, 2, 0.0), InputError);
}

TEST_CASE("greedy feasibility is monotone in tau") {
  SplitMix64 rng(301);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = rng.range_int(2, 12);
    std::vector<double> xs;
    for (int i = 0; i < n; ++i) xs.push_back(rng.range_real(0, 10));
    std::sort(xs.begin(), xs.end());
    bool ok = true;
    for (int i = 1; i < n; ++i) ok = ok && xs[i] - xs[i - 1] > 1e-9;
    if (!ok) continue;
    const LineInstance inst = LineInstance::from_sorted(xs);
    const int k = rng.range_int(2, n);
    bool prev = true;
    for (double tau = 0.05; tau <= 10.5; tau += 0.35) {
      const bool cur = greedy_feasible(inst, k, tau).feasible;
      if (!prev) CHECK_FALSE(cur);  // once infeasible, stays infeasible
      prev = cur;
    }
  }
}

TEST_CASE("dp, search, and brute force agree exactly on random instances") {
  SplitMix64 rng(313);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = rng.range_int(2, 15);
    std::vector<double> xs;
    for (int i = 0; i < n; ++i) xs.push_back(rng.range_real(0, 100));
    std::sort(xs.begin(), xs.end());
    bool ok = true;
    for (int i = 1; i < n; ++i) ok = ok && xs[i] - xs[i - 1] > 1e-9;
    if (!ok) continue;
    const LineInstance inst = LineInstance::from_sorted(xs);
    const int k = rng.range_int(2, std::min(n, 6));

    const LineMpdResult dp = line_mpd_dp(inst, k);
    const LineMpdResult search = line_mpd_search(inst, k);
    const OracleResult brute = brute_force_mpd(line_metric(inst), k);
    CHECK(dp.value == brute.optimum);      // all values are input differences
    CHECK(search.value == brute.optimum);

    // witnesses are valid: size k, bottleneck at least the reported value
    const MetricInstance m = line_metric(inst);
    CHECK(dp.subset.size() == k);
    CHECK(search.subset.size() == k);
    CHECK(mpd(m, dp.subset) >= dp.value);
    CHECK(mpd(m, search.subset) >= search.value);
  }
}

TEST_CASE("unsorted ingestion reports original indices") {
  const LineInstance inst = LineInstance::from_values({6, 0, 3, 1});
  // sorted order is 0,1,3,6 -> original indices 1,3,2,0
  const LineMpdResult r = line_mpd_dp(inst, 3);
  CHECK(r.value == doctest::Approx(3.0));
  CHECK(r.subset.indices() == std::vector<int>{0, 1, 2});  // {6, 0, 3}
}

TEST_CASE("line instance input validation") {
  CHECK_THROWS_AS(LineInstance::from_sorted({}), InputError);
  CHECK_THROWS_AS(LineInstance::from_sorted({1, 1}), InputError);
  CHECK_THROWS_AS(LineInstance::from_sorted({2, 1}), InputError);
  CHECK_THROWS_AS(LineInstance::from_values({1, 1}), InputError);
  CHECK_THROWS_AS(line_mpd_dp(LineInstance::from_sorted({0, 1}), 3), InputError);
  CHECK_THROWS_AS(line_mpd_search(LineInstance::from_sorted({0, 1}), 1), InputError);
}
