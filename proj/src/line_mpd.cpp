#include "riesz/line_mpd.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace riesz {

namespace {

Subset to_original(const LineInstance& inst, std::vector<int> sorted_positions) {
  std::vector<int> out;
  out.reserve(sorted_positions.size());
  for (int p : sorted_positions) out.push_back(inst.original_index()[p]);
  std::sort(out.begin(), out.end());
  return Subset(std::move(out));
}

void check_k(const LineInstance& inst, int k) {
  if (k < 2 || k > inst.size())
    throw InputError("k must satisfy 2 <= k <= n");
}

}  // namespace

LineInstance LineInstance::from_sorted(std::vector<double> xs) {
  if (xs.empty()) throw InputError("line instance needs at least one point");
  for (std::size_t i = 1; i < xs.size(); ++i)
    if (!(xs[i - 1] < xs[i]))
      throw InputError("line positions must be strictly increasing");
  LineInstance inst;
  inst.xs_ = std::move(xs);
  inst.orig_.resize(inst.xs_.size());
  std::iota(inst.orig_.begin(), inst.orig_.end(), 0);
  return inst;
}

LineInstance LineInstance::from_values(const std::vector<double>& xs) {
  if (xs.empty()) throw InputError("line instance needs at least one point");
  std::vector<int> order(xs.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return xs[a] < xs[b]; });
  LineInstance inst;
  inst.xs_.reserve(xs.size());
  for (int i : order) inst.xs_.push_back(xs[i]);
  for (std::size_t i = 1; i < inst.xs_.size(); ++i)
    if (!(inst.xs_[i - 1] < inst.xs_[i]))
      throw InputError("line positions must be distinct");
  inst.orig_ = std::move(order);
  return inst;
}

MetricInstance line_metric(const LineInstance& inst) {
  const int n = inst.size();
  std::vector<std::string> labels(n);
  for (int i = 0; i < n; ++i) {
    std::ostringstream os;
    os << inst.x(i);
    labels[i] = os.str();
  }
  std::vector<double> flat(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      flat[static_cast<std::size_t>(i) * n + j] = std::abs(inst.x(i) - inst.x(j));
  return MetricInstance(std::move(labels), std::move(flat));
}

LineMpdResult line_mpd_dp(const LineInstance& inst, int k) {
  check_k(inst, k);
  const int n = inst.size();
  // best[i][t]: largest achievable bottleneck of a t-subset ending at point i.
  std::vector<std::vector<double>> best(n, std::vector<double>(k + 1, -kInf));
  std::vector<std::vector<int>> from(n, std::vector<int>(k + 1, -1));
  for (int i = 0; i < n; ++i) best[i][1] = kInf;  // singleton convention
  for (int t = 2; t <= k; ++t)
    for (int i = t - 1; i < n; ++i)
      for (int j = t - 2; j < i; ++j) {
        if (best[j][t - 1] == -kInf) continue;
        const double cand = std::min(best[j][t - 1], inst.x(i) - inst.x(j));
        if (cand > best[i][t]) {
          best[i][t] = cand;
          from[i][t] = j;
        }
      }
  int end = -1;
  double value = -kInf;
  for (int i = 0; i < n; ++i)
    if (best[i][k] > value) {
      value = best[i][k];
      end = i;
    }
  std::vector<int> picks;
  for (int i = end, t = k; t >= 1; i = from[i][t], --t) picks.push_back(i);
  std::reverse(picks.begin(), picks.end());
  return {value, to_original(inst, std::move(picks))};
}

GreedyResult greedy_feasible(const LineInstance& inst, int k, double tau) {
  if (!(tau > 0.0)) throw InputError("tau must be positive");
  std::vector<int> picks = {0};
  double last = inst.x(0);
  for (int i = 1; i < inst.size(); ++i) {
    if (inst.x(i) - last >= tau) {
      picks.push_back(i);
      last = inst.x(i);
    }
  }
  const bool ok = static_cast<int>(picks.size()) >= k;
  return {ok, to_original(inst, std::move(picks))};
}

LineMpdResult line_mpd_search(const LineInstance& inst, int k) {
  check_k(inst, k);
  const int n = inst.size();
  std::vector<double> gaps;
  gaps.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) gaps.push_back(inst.x(j) - inst.x(i));
  std::sort(gaps.begin(), gaps.end());
  gaps.erase(std::unique(gaps.begin(), gaps.end()), gaps.end());

  // Feasibility is monotone decreasing in tau, so the optimum is the largest
  // feasible candidate.
  int lo = 0, hi = static_cast<int>(gaps.size()) - 1, best = 0;
  while (lo <= hi) {
    const int mid = lo + (hi - lo) / 2;
    if (greedy_feasible(inst, k, gaps[mid]).feasible) {
      best = mid;
      lo = mid + 1;
    } else {
      hi = mid - 1;
    }
  }
  const double tau = gaps[best];
  // Rerun the scan and keep the first k picks as the witness.
  std::vector<int> picks = {0};
  double last = inst.x(0);
  for (int i = 1; i < n && static_cast<int>(picks.size()) < k; ++i) {
    if (inst.x(i) - last >= tau) {
      picks.push_back(i);
      last = inst.x(i);
    }
  }
  return {tau, to_original(inst, std::move(picks))};
}

}  // namespace riesz
