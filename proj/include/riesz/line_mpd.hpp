#pragma once

#include <vector>

#include "riesz/metric.hpp"

namespace riesz {

// Points on the real line, kept sorted. Unsorted input is sorted on ingestion
// and the permutation recorded so results can be reported in original indices.
class LineInstance {
 public:
  static LineInstance from_sorted(std::vector<double> xs);
  static LineInstance from_values(const std::vector<double>& xs);

  int size() const { return static_cast<int>(xs_.size()); }
  double x(int i) const { return xs_[i]; }
  const std::vector<double>& xs() const { return xs_; }
  // original_index()[p] is the caller's index of the p-th sorted point.
  const std::vector<int>& original_index() const { return orig_; }

 private:
  std::vector<double> xs_;
  std::vector<int> orig_;
};

// |x_i - x_j| as a MetricInstance; labels are the positions.
MetricInstance line_metric(const LineInstance& inst);

struct LineMpdResult {
  double value = 0.0;
  Subset subset;  // original indices
};

// Exact max-min dispersion on the line by dynamic programming over
// (last chosen point, count). O(n^2 k).
LineMpdResult line_mpd_dp(const LineInstance& inst, int k);

struct GreedyResult {
  bool feasible = false;
  Subset selection;  // everything the scan picked, original indices
};

// Left-to-right scan taking each point at distance >= tau from the last pick;
// feasible iff at least k points are taken.
GreedyResult greedy_feasible(const LineInstance& inst, int k, double tau);

// Same optimum as line_mpd_dp, found by binary search over the sorted set of
// pairwise differences with the greedy feasibility test. O(n^2 log n).
LineMpdResult line_mpd_search(const LineInstance& inst, int k);

}  // namespace riesz
