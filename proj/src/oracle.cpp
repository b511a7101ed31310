#include "riesz/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <thread>

#include "riesz/rng.hpp"

namespace riesz {

long long binomial_capped(int n, int k, long long cap) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 result = 1;
  for (int i = 1; i <= k; ++i) {
    result = result * static_cast<unsigned __int128>(n - k + i) /
             static_cast<unsigned __int128>(i);
    if (result > static_cast<unsigned __int128>(cap)) return cap + 1;
  }
  return static_cast<long long>(result);
}

namespace {

// Shared shape of both brute-force sweeps. `Key` orders candidates (smaller
// is better); witnesses collect everything within `key_tol` of the best key.
struct SweepResult {
  double best_key = kInf;
  std::vector<std::pair<double, std::vector<int>>> candidates;  // near-best
  long long enumerated = 0;
};

template <typename KeyFn>
void sweep_range(const MetricInstance& m, int k, int first_lo, int first_hi,
                 KeyFn&& key_of, double key_tol, bool prune, SweepResult& out) {
  const int n = m.size();
  std::vector<int> pick(k, 0);

  auto compact = [&]() {
    if (out.candidates.size() < 4096) return;
    std::erase_if(out.candidates, [&](const auto& c) {
      return c.first > out.best_key + key_tol;
    });
  };

  // Depth-first lexicographic enumeration with the leading index restricted
  // to [first_lo, first_hi).
  std::function<void(int, int)> recurse = [&](int depth, int next) {
    if (depth == k) {
      ++out.enumerated;
      const double key = key_of(pick);
      if (key < out.best_key) {
        out.best_key = key;
        compact();
      }
      if (key <= out.best_key + key_tol)
        out.candidates.emplace_back(key, pick);
      return;
    }
    const int limit = n - (k - depth) + 1;
    const int lo = (depth == 0) ? first_lo : next;
    const int hi = (depth == 0) ? std::min(first_hi, limit) : limit;
    for (int i = lo; i < hi; ++i) {
      pick[depth] = i;
      if (prune && depth >= 1) {
        // Partial keys only grow; skip prefixes already clearly beaten.
        std::vector<int> prefix(pick.begin(), pick.begin() + depth + 1);
        if (key_of(prefix) > out.best_key + key_tol) continue;
      }
      recurse(depth + 1, i + 1);
    }
  };
  if (k == 0) {
    out.enumerated = 1;
    out.candidates.emplace_back(key_of({}), std::vector<int>{});
    out.best_key = out.candidates[0].first;
    return;
  }
  recurse(0, 0);
}

template <typename KeyFn>
OracleResult run_sweep(const MetricInstance& m, int k, KeyFn&& key_of,
                       double key_tol, const OracleOptions& opt) {
  const int n = m.size();
  if (k < 0 || k > n) throw InputError("k must satisfy 0 <= k <= n");
  const long long count =
      binomial_capped(n, k, std::numeric_limits<long long>::max() / 2);
  if (count > opt.cap)
    throw CapExceeded("enumeration of " + std::to_string(count) +
                          " subsets exceeds cap " + std::to_string(opt.cap),
                      count);

  const int threads = std::max(1, opt.threads);
  std::vector<SweepResult> parts;
  if (threads == 1 || k == 0 || n < 2) {
    parts.resize(1);
    sweep_range(m, k, 0, n, key_of, key_tol, opt.prune, parts[0]);
  } else {
    // Static partition by leading index; merged in index order below, so the
    // outcome does not depend on the thread count.
    const int workers = std::min(threads, n);
    parts.resize(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w]() {
        for (int first = w; first < n; first += workers) {
          SweepResult local;
          sweep_range(m, k, first, first + 1, key_of, key_tol, opt.prune, local);
          parts[w].enumerated += local.enumerated;
          parts[w].best_key = std::min(parts[w].best_key, local.best_key);
          for (auto& c : local.candidates)
            parts[w].candidates.push_back(std::move(c));
        }
      });
    }
    for (auto& th : pool) th.join();
  }

  double best_key = kInf;
  long long enumerated = 0;
  for (const auto& p : parts) {
    best_key = std::min(best_key, p.best_key);
    enumerated += p.enumerated;
  }
  OracleResult result;
  result.enumerated = enumerated;
  result.optimum = best_key;
  for (const auto& p : parts)
    for (const auto& [key, subset] : p.candidates)
      if (key <= best_key + key_tol) result.witnesses.push_back(subset);
  std::sort(result.witnesses.begin(), result.witnesses.end());
  return result;
}

}  // namespace

OracleResult brute_force_riesz(const MetricInstance& m, int k, Exponent s,
                               const OracleOptions& opt) {
  // Keys are log-energies: the comparison survives distances and exponents
  // whose plain powers would leave double range, and |delta log| <= 1e-9
  // matches relative tolerance 1e-9 on the energies themselves.
  auto key_of = [&](const std::vector<int>& pick) {
    return riesz_log_energy(m, Subset(pick), s);
  };
  OracleResult r = run_sweep(m, k, key_of, kRelTol, opt);
  if (k <= 1) {
    r.optimum = 0.0;  // energy convention for tiny subsets
  } else {
    // report the energy itself, not its log
    double best = kInf;
    for (const auto& w : r.witnesses)
      best = std::min(best, riesz_energy(m, Subset(w), s));
    r.optimum = best;
  }
  return r;
}

OracleResult brute_force_mpd(const MetricInstance& m, int k,
                             const OracleOptions& opt) {
  // Maximization via negated keys; distances compare exactly (they are input
  // values), so the witness tolerance is zero.
  auto key_of = [&](const std::vector<int>& pick) {
    return -mpd(m, Subset(pick));
  };
  OracleOptions o = opt;
  o.prune = false;  // pruning predicate does not apply to a bottleneck key
  OracleResult r = run_sweep(m, k, key_of, 0.0, o);
  r.optimum = -r.optimum;
  return r;
}

NaiveLineDp naive_line_riesz_dp(const LineInstance& inst, int k, Exponent s) {
  if (k < 2 || k > inst.size()) throw InputError("k must satisfy 2 <= k <= n");
  const int n = inst.size();
  std::vector<std::vector<double>> cost(n, std::vector<double>(k + 1, kInf));
  std::vector<std::vector<int>> from(n, std::vector<int>(k + 1, -1));
  for (int i = 0; i < n; ++i) cost[i][1] = 0.0;
  for (int t = 2; t <= k; ++t)
    for (int i = t - 1; i < n; ++i)
      for (int j = t - 2; j < i; ++j) {
        if (cost[j][t - 1] == kInf) continue;
        const double cand =
            cost[j][t - 1] + std::pow(inst.x(i) - inst.x(j), -s.value());
        if (cand < cost[i][t]) {
          cost[i][t] = cand;
          from[i][t] = j;
        }
      }
  int end = -1;
  double value = kInf;
  for (int i = 0; i < n; ++i)
    if (cost[i][k] < value) {
      value = cost[i][k];
      end = i;
    }
  std::vector<int> picks;
  for (int i = end, t = k; t >= 1; i = from[i][t], --t) picks.push_back(i);
  std::sort(picks.begin(), picks.end());
  std::vector<int> orig;
  orig.reserve(picks.size());
  for (int p : picks) orig.push_back(inst.original_index()[p]);
  std::sort(orig.begin(), orig.end());
  return {value, Subset(std::move(orig))};
}

CounterexampleReport find_line_counterexample(const CounterexampleConfig& cfg) {
  if (cfg.min_n < 2 || cfg.max_n > 8 || cfg.min_n > cfg.max_n)
    throw InputError("counterexample search requires 2 <= min_n <= max_n <= 8");
  if (cfg.min_k < 2 || cfg.max_k > 4 || cfg.min_k > cfg.max_k)
    throw InputError("counterexample search requires 2 <= min_k <= max_k <= 4");
  const Exponent s(cfg.s);

  SplitMix64 rng(cfg.seed);
  CounterexampleReport report;
  report.s = cfg.s;

  for (long long trial = 0; trial < cfg.budget; ++trial) {
    const int n = rng.range_int(cfg.min_n, cfg.max_n);
    const int k_hi = std::min(cfg.max_k, n);
    if (k_hi < cfg.min_k) continue;
    const int k = rng.range_int(cfg.min_k, k_hi);

    std::vector<double> xs;
    xs.reserve(n);
    if (cfg.gen == PointGen::kUniform) {
      for (int i = 0; i < n; ++i) xs.push_back(rng.uniform01());
    } else {
      // distinct integers from a 3n grid
      std::vector<int> pool(3 * n);
      for (int i = 0; i < 3 * n; ++i) pool[i] = i;
      for (int i = 3 * n - 1; i > 0; --i)
        std::swap(pool[i], pool[rng.range_int(0, i)]);
      for (int i = 0; i < n; ++i) xs.push_back(static_cast<double>(pool[i]));
    }
    std::sort(xs.begin(), xs.end());
    bool degenerate = false;
    for (int i = 1; i < n; ++i)
      if (!(xs[i] - xs[i - 1] > 1e-9)) degenerate = true;
    if (degenerate) continue;

    ++report.tried;
    LineInstance inst = LineInstance::from_sorted(xs);
    MetricInstance metric = line_metric(inst);

    std::vector<int> heuristic_pick;
    double heuristic_value = 0.0, optimal_value = 0.0;
    std::vector<int> optimal_pick;
    if (cfg.objective == SearchObjective::kRieszNaiveDp) {
      NaiveLineDp naive = naive_line_riesz_dp(inst, k, s);
      heuristic_pick = naive.subset.indices();
      heuristic_value = riesz_energy(metric, naive.subset, s);
      OracleResult best = brute_force_riesz(metric, k, s);
      optimal_value = best.optimum;
      optimal_pick = best.witnesses.front();
      if (heuristic_value - optimal_value <= cfg.min_gap) continue;
    } else {
      LineMpdResult dp = line_mpd_dp(inst, k);
      heuristic_pick = dp.subset.indices();
      heuristic_value = mpd(metric, dp.subset);
      OracleResult best = brute_force_mpd(metric, k);
      optimal_value = best.optimum;
      optimal_pick = best.witnesses.front();
      if (optimal_value - heuristic_value <= cfg.min_gap) continue;
    }

    report.found = true;
    report.points = inst.xs();
    report.k = k;
    report.heuristic_subset = heuristic_pick;
    report.heuristic_value = heuristic_value;
    report.optimal_subset = optimal_pick;
    report.optimal_value = optimal_value;
    report.gap = std::abs(heuristic_value - optimal_value);
    return report;
  }
  return report;
}

}  // namespace riesz
