#pragma once

#include <array>
#include <vector>

#include "riesz/metric.hpp"

namespace riesz {

struct OverlapGap {
  double forbidden_min = 0.0;   // (1.5 r)^-s, least cost of a forced overlap
  double admissible_max = 0.0;  // (2 r)^-s, largest cost of an admissible pair
};

// Per-pair energy gap between overlap (centres within 1.5 r) and admissible
// (centres at least 2 r apart) disc pairs.
OverlapGap overlap_gap(double r, Exponent s);

// zeta(s - 1) for s > 2, by partial summation with an integral tail
// correction; absolute error well below 1e-10 over the whole range.
double zeta_minus_one(Exponent s);

// Upper bound 6 (2r)^-s zeta(s-1) on one selected point's total interaction
// in a non-overlapping equal-radius disc configuration. Requires s > 2.
double pointwise_budget(double r, Exponent s);

// Whole-selection bound k/2 * pointwise_budget(r, s) for k >= 2 points.
double linear_budget(double r, Exponent s, int k);

// Centres of a non-overlapping equal-disc packing: the origin plus, for each
// ring i = 1..layers, 6i centres equally spaced on the circle of radius 2ir.
// This realizes the annulus counting model behind the budget exactly (6i
// centres at the inner edge of the ith annulus); minimum pairwise distance is
// exactly 2r. Ring point counts match the centered-hexagonal numbers
// (1, 7, 19, ...).
std::vector<std::array<double, 2>> generate_hex_packing(double r, int layers);

struct BudgetReport {
  double r = 0.0;
  double s = 0.0;
  int layers = 0;
  double measured = 0.0;  // max over packing points of its total interaction
  double bound = 0.0;     // pointwise_budget(r, s)
  double slack = 0.0;     // bound - measured
};

// Measures the packing against the pointwise budget. slack must come out
// positive; a violation indicates a broken invariant, not bad input.
BudgetReport verify_budget(double r, Exponent s, int layers);

}  // namespace riesz
