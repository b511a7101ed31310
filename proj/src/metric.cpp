#include "riesz/metric.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace riesz {

Subset::Subset(std::vector<int> indices) : idx_(std::move(indices)) {
  for (std::size_t i = 0; i < idx_.size(); ++i) {
    if (idx_[i] < 0) throw InputError("subset index must be nonnegative");
    if (i > 0 && idx_[i] <= idx_[i - 1])
      throw InputError("subset indices must be strictly increasing");
  }
}

MetricInstance::MetricInstance(std::vector<std::string> labels,
                               std::vector<double> dist_row_major)
    : n_(static_cast<int>(labels.size())),
      labels_(std::move(labels)),
      dist_(std::move(dist_row_major)) {
  if (dist_.size() != static_cast<std::size_t>(n_) * n_)
    throw InputError("distance matrix is not n x n");
}

MetricInstance MetricInstance::from_rows(std::vector<std::string> labels,
                                         const std::vector<std::vector<double>>& rows) {
  const std::size_t n = labels.size();
  if (rows.size() != n) throw InputError("distance matrix is not square");
  std::vector<double> flat;
  flat.reserve(n * n);
  for (const auto& row : rows) {
    if (row.size() != n) throw InputError("distance matrix is not square");
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return MetricInstance(std::move(labels), std::move(flat));
}

double MetricInstance::min_distance() const {
  double best = kInf;
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j) best = std::min(best, dist(i, j));
  return best;
}

double MetricInstance::max_distance() const {
  double best = 0.0;
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j) best = std::max(best, dist(i, j));
  return best;
}

int label_index(const MetricInstance& m, const std::string& label) {
  const auto& ls = m.labels();
  auto it = std::find(ls.begin(), ls.end(), label);
  if (it == ls.end()) throw InputError("unknown point label: " + label);
  return static_cast<int>(it - ls.begin());
}

namespace {

void check_in_range(const MetricInstance& m, const Subset& sub) {
  if (!sub.empty() && sub.indices().back() >= m.size())
    throw InputError("subset index out of range");
}

}  // namespace

double riesz_energy(const MetricInstance& m, const Subset& sub, Exponent s) {
  check_in_range(m, sub);
  if (sub.size() <= 1) return 0.0;
  const auto& idx = sub.indices();
  double total = 0.0;
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = a + 1; b < idx.size(); ++b)
      total += std::pow(m.dist(idx[a], idx[b]), -s.value());
  return total;
}

double riesz_log_energy(const MetricInstance& m, const Subset& sub, Exponent s) {
  check_in_range(m, sub);
  if (sub.size() <= 1) return -kInf;
  const auto& idx = sub.indices();
  // log-sum-exp over the pair terms -s*log(d); two passes, no scratch space.
  double peak = -kInf;
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = a + 1; b < idx.size(); ++b)
      peak = std::max(peak, -s.value() * std::log(m.dist(idx[a], idx[b])));
  if (!std::isfinite(peak)) return peak;
  double acc = 0.0;
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = a + 1; b < idx.size(); ++b)
      acc += std::exp(-s.value() * std::log(m.dist(idx[a], idx[b])) - peak);
  return peak + std::log(acc);
}

double mpd(const MetricInstance& m, const Subset& sub) {
  check_in_range(m, sub);
  if (sub.size() <= 1) return kInf;
  const auto& idx = sub.indices();
  double best = kInf;
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = a + 1; b < idx.size(); ++b)
      best = std::min(best, m.dist(idx[a], idx[b]));
  return best;
}

MetricInstance rescale(const MetricInstance& m, double lambda) {
  if (!(lambda > 0.0)) throw InputError("rescale factor must be positive");
  std::vector<double> scaled = m.flat();
  for (double& d : scaled) d *= lambda;
  return MetricInstance(m.labels(), std::move(scaled));
}

std::string describe(const MetricViolation& v, const MetricInstance& m) {
  const auto& L = m.labels();
  std::ostringstream os;
  switch (v.kind) {
    case MetricViolationKind::kNonZeroDiagonal:
      os << "nonzero diagonal at " << L[v.i] << ": " << v.lhs;
      break;
    case MetricViolationKind::kAsymmetric:
      os << "asymmetry at (" << L[v.i] << "," << L[v.j] << "): " << v.lhs
         << " vs " << v.rhs;
      break;
    case MetricViolationKind::kNonPositive:
      os << "non-positive off-diagonal at (" << L[v.i] << "," << L[v.j]
         << "): " << v.lhs;
      break;
    case MetricViolationKind::kTriangle:
      os << "triangle violation (" << L[v.i] << "," << L[v.k] << "," << L[v.j]
         << "): d(" << L[v.i] << "," << L[v.j] << ")=" << v.lhs << " > " << v.rhs;
      break;
  }
  return os.str();
}

MetricReport validate_metric(const MetricInstance& m) {
  MetricReport report;
  const int n = m.size();
  for (int i = 0; i < n; ++i) {
    if (m.dist(i, i) != 0.0)
      report.violations.push_back(
          {MetricViolationKind::kNonZeroDiagonal, i, i, -1, m.dist(i, i), 0.0});
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (m.dist(i, j) != m.dist(j, i))
        report.violations.push_back(
            {MetricViolationKind::kAsymmetric, i, j, -1, m.dist(i, j), m.dist(j, i)});
      if (!(m.dist(i, j) > 0.0))
        report.violations.push_back(
            {MetricViolationKind::kNonPositive, i, j, -1, m.dist(i, j), 0.0});
    }
  // d(i,j) <= d(i,k) + d(k,j), allowing for roundoff in stored matrices.
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      for (int k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        const double lhs = m.dist(i, j);
        const double rhs = m.dist(i, k) + m.dist(k, j);
        if (lhs > rhs * (1.0 + kRelTol))
          report.violations.push_back(
              {MetricViolationKind::kTriangle, i, j, k, lhs, rhs});
      }
    }
  return report;
}

UltrametricityReport check_ultrametricity(const MetricInstance& m, double rel_tol) {
  const int n = m.size();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        double a = m.dist(i, j), b = m.dist(i, k), c = m.dist(j, k);
        // sort descending: a >= b >= c
        if (a < b) std::swap(a, b);
        if (b < c) std::swap(b, c);
        if (a < b) std::swap(a, b);
        if (!close_rel(a, b, rel_tol)) return {false, i, j, k};
      }
  return {};
}

}  // namespace riesz
