#pragma once

#include <string>
#include <vector>

#include "riesz/errors.hpp"
#include "riesz/numeric.hpp"

namespace riesz {

// Riesz exponent s > 0.
class Exponent {
 public:
  explicit Exponent(double s) : s_(s) {
    if (!(s > 0.0)) throw InputError("exponent s must be positive");
  }
  double value() const { return s_; }

 private:
  double s_;
};

// Strictly increasing point indices into some instance.
class Subset {
 public:
  Subset() = default;
  explicit Subset(std::vector<int> indices);

  const std::vector<int>& indices() const { return idx_; }
  int size() const { return static_cast<int>(idx_.size()); }
  bool empty() const { return idx_.empty(); }

 private:
  std::vector<int> idx_;
};

// Finite point set with a symmetric nonnegative distance matrix. Construction
// checks shape only; the full metric axioms are checked by validate_metric,
// which is opt-in (reduction constructors produce metrics by construction).
class MetricInstance {
 public:
  MetricInstance(std::vector<std::string> labels, std::vector<double> dist_row_major);
  static MetricInstance from_rows(std::vector<std::string> labels,
                                  const std::vector<std::vector<double>>& rows);

  int size() const { return n_; }
  double dist(int i, int j) const { return dist_[static_cast<std::size_t>(i) * n_ + j]; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<double>& flat() const { return dist_; }

  // Smallest off-diagonal entry; +inf for a single point.
  double min_distance() const;
  double max_distance() const;

 private:
  int n_ = 0;
  std::vector<std::string> labels_;
  std::vector<double> dist_;
};

// Index of a point by label; InputError if absent.
int label_index(const MetricInstance& m, const std::string& label);

// Sum over unordered pairs of d(u,v)^(-s); 0 for |sub| <= 1.
double riesz_energy(const MetricInstance& m, const Subset& sub, Exponent s);

// log of riesz_energy computed with log-sum-exp; finite for exponents where
// the plain sum would under- or overflow. -inf for |sub| <= 1.
double riesz_log_energy(const MetricInstance& m, const Subset& sub, Exponent s);

// Minimum pairwise distance; +inf for |sub| <= 1.
double mpd(const MetricInstance& m, const Subset& sub);

// All distances multiplied by lambda > 0.
MetricInstance rescale(const MetricInstance& m, double lambda);

enum class MetricViolationKind {
  kNonZeroDiagonal,
  kAsymmetric,
  kNonPositive,
  kTriangle,
};

struct MetricViolation {
  MetricViolationKind kind;
  int i = -1, j = -1, k = -1;  // witnessing indices; k used by triangle only
  double lhs = 0.0, rhs = 0.0;
};

struct MetricReport {
  std::vector<MetricViolation> violations;
  bool valid() const { return violations.empty(); }
};

std::string describe(const MetricViolation& v, const MetricInstance& m);

// Checks every axiom and reports each violation with a witness. O(n^3).
MetricReport validate_metric(const MetricInstance& m);

// Three-point condition: the two largest distances of every triple are equal
// (within rel tolerance). Returns the witnessing triple on failure.
struct UltrametricityReport {
  bool ultrametric = true;
  int i = -1, j = -1, k = -1;
};
UltrametricityReport check_ultrametricity(const MetricInstance& m, double rel_tol = kRelTol);

}  // namespace riesz
