#include "riesz/reductions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace riesz {

namespace {

double binom2(int k) { return 0.5 * k * (k - 1.0); }

std::vector<std::string> numbered_labels(const char* prefix, int n) {
  std::vector<std::string> labels(n);
  for (int i = 0; i < n; ++i) labels[i] = prefix + std::to_string(i);
  return labels;
}

// All k-subsets of [0,n) in lexicographic order, guarded by the cap.
template <typename Fn>
void for_each_subset(int n, int k, long long cap, Fn&& fn) {
  const long long count =
      binomial_capped(n, k, std::numeric_limits<long long>::max() / 2);
  if (count > cap)
    throw CapExceeded("enumeration of " + std::to_string(count) +
                          " subsets exceeds cap " + std::to_string(cap),
                      count);
  std::vector<int> pick(k);
  for (int i = 0; i < k; ++i) pick[i] = i;
  if (k > n) return;
  while (true) {
    fn(pick);
    int i = k - 1;
    while (i >= 0 && pick[i] == n - k + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
}

}  // namespace

Graph Graph::make(int n, std::vector<std::array<int, 2>> edges) {
  if (n < 0) throw InputError("vertex count must be nonnegative");
  Graph g;
  g.n_ = n;
  g.adj_.assign(static_cast<std::size_t>(n) * n, 0);
  for (auto e : edges) {
    if (e[0] < 0 || e[0] >= n || e[1] < 0 || e[1] >= n)
      throw InputError("edge endpoint out of range");
    if (e[0] == e[1]) throw InputError("self-loops are not allowed");
    if (e[0] > e[1]) std::swap(e[0], e[1]);
    if (!g.adj_[static_cast<std::size_t>(e[0]) * n + e[1]]) {
      g.adj_[static_cast<std::size_t>(e[0]) * n + e[1]] = 1;
      g.adj_[static_cast<std::size_t>(e[1]) * n + e[0]] = 1;
      g.edges_.push_back(e);
    }
  }
  std::sort(g.edges_.begin(), g.edges_.end());
  return g;
}

PlanarInstance PlanarInstance::make(std::vector<std::array<double, 2>> points,
                                    double delta, int k) {
  if (!(delta > 0.0)) throw InputError("delta must be positive");
  if (k < 1) throw InputError("k must be at least 1");
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      if (points[i] == points[j])
        throw InputError("planar points must be distinct");
  PlanarInstance p;
  p.points_ = std::move(points);
  p.delta_ = delta;
  p.k_ = k;
  return p;
}

double PlanarInstance::distance(int i, int j) const {
  const double dx = points_[i][0] - points_[j][0];
  const double dy = points_[i][1] - points_[j][1];
  return std::sqrt(dx * dx + dy * dy);
}

MetricInstance PlanarInstance::to_metric() const {
  const int n = size();
  std::vector<double> flat(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) flat[static_cast<std::size_t>(i) * n + j] = distance(i, j);
  return MetricInstance(numbered_labels("p", n), std::move(flat));
}

std::variant<GapQuantities, TrivialInstance> gap_quantities(const PlanarInstance& p) {
  GapQuantities q;
  q.d_min = kInf;
  q.delta_max = -kInf;
  const int n = p.size();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double d = p.distance(i, j);
      if (d >= p.delta()) {
        if (d < q.d_min) {
          q.d_min = d;
          q.d_min_pair = {i, j};
        }
      } else if (d > q.delta_max) {
        q.delta_max = d;
        q.delta_max_pair = {i, j};
      }
    }
  if (!std::isfinite(q.d_min)) {
    // No admissible pair: independent subsets have at most one point.
    return TrivialInstance{TrivialInstance::Reason::kNoAdmissiblePairs, p.k() <= 1};
  }
  if (!std::isfinite(q.delta_max)) {
    // No forbidden pair: every k-subset is independent.
    return TrivialInstance{TrivialInstance::Reason::kNoForbiddenPairs, p.k() <= n};
  }
  if (!(q.delta_max < q.d_min))
    throw InvariantViolation("forbidden distances must stay below admissible ones");
  return q;
}

double choose_exponent(double c, double a, double b) {
  if (!(c > 0.0)) throw InputError("c must be positive");
  if (!(0.0 < a && a < b)) throw InputError("need 0 < a < b");
  return std::log(c) / (std::log(b) - std::log(a));
}

ReductionOutput clique_to_rssp(const Graph& g, int k, Exponent s) {
  const int n = g.size();
  if (k < 2 || k > n) throw InputError("k must satisfy 2 <= k <= n");
  std::vector<double> flat(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j)
        flat[static_cast<std::size_t>(i) * n + j] = g.has_edge(i, j) ? 2.0 : 1.0;

  ReductionOutput out{MetricInstance(numbered_labels("v", n), std::move(flat)),
                      k,
                      s.value(),
                      binom2(k) * std::pow(2.0, -s.value()),
                      {}};
  out.provenance.distance_gap = 1.0;  // separation between the two levels
  return out;
}

std::variant<ReductionOutput, TrivialInstance> gis_to_rssp(const PlanarInstance& p) {
  if (p.k() < 2) throw InputError("reduction needs k >= 2");
  auto gq = gap_quantities(p);
  if (std::holds_alternative<TrivialInstance>(gq))
    return std::get<TrivialInstance>(gq);
  const GapQuantities& q = std::get<GapQuantities>(gq);

  const double c = binom2(p.k());
  const double bound = choose_exponent(c, q.delta_max, q.d_min);
  const double s = 1.0 + std::ceil(std::max(0.0, bound));
  // Guarantee justifying the choice, checked scale-free: c < (d_min/delta_max)^s.
  if (!(c < std::pow(q.d_min / q.delta_max, s)))
    throw InvariantViolation("exponent choice failed to separate the pair classes");

  ReductionOutput out{p.to_metric(), p.k(), s, c * std::pow(q.d_min, -s), {}};
  out.provenance.d_min = q.d_min;
  out.provenance.delta_max = q.delta_max;
  out.provenance.d_min_pair = q.d_min_pair;
  out.provenance.delta_max_pair = q.delta_max_pair;
  return out;
}

LargeSResult large_s_threshold(const MetricInstance& m, int k,
                               const OracleOptions& opt) {
  if (k < 2 || k > m.size()) throw InputError("k must satisfy 2 <= k <= n");
  OracleResult best = brute_force_mpd(m, k, opt);
  LargeSResult out;
  out.d_star = best.optimum;

  // Largest bottleneck among subsets that do not attain d_star.
  double r = -kInf;
  for_each_subset(m.size(), k, opt.cap, [&](const std::vector<int>& pick) {
    const double v = mpd(m, Subset(pick));
    if (v < out.d_star && v > r) r = v;
  });
  if (!std::isfinite(r)) {
    out.all_subsets_optimal = true;
    out.s0 = 0.0;
    return out;
  }
  out.r = r;
  out.s0 = choose_exponent(binom2(k), r, out.d_star);
  return out;
}

CliqueVerification verify_clique_reduction(const Graph& g, const ReductionOutput& red,
                                           const OracleOptions& opt) {
  CliqueVerification v;
  for_each_subset(g.size(), red.k, opt.cap, [&](const std::vector<int>& pick) {
    if (v.clique_exists) return;
    for (std::size_t a = 0; a < pick.size(); ++a)
      for (std::size_t b = a + 1; b < pick.size(); ++b)
        if (!g.has_edge(pick[a], pick[b])) return;
    v.clique_exists = true;
  });
  OracleResult best = brute_force_riesz(red.instance, red.k, Exponent(red.s), opt);
  v.min_energy = best.optimum;
  v.decision_matches = (v.min_energy <= red.threshold * (1.0 + kRelTol)) == v.clique_exists;
  if (v.clique_exists)
    v.exact_at_threshold = std::abs(v.min_energy - red.threshold) <=
                           1e-12 * std::max(1.0, red.threshold);
  return v;
}

GisVerification verify_gis_reduction(const PlanarInstance& p, const ReductionOutput& red,
                                     const OracleOptions& opt) {
  if (!red.provenance.d_min)
    throw InputError("reduction output lacks gap provenance");
  const double d_min = *red.provenance.d_min;
  // Work with distances scaled by 1/d_min: the threshold becomes C(k,2) and
  // the energies stay well within double range for the large exponents the
  // construction picks.
  MetricInstance scaled = rescale(p.to_metric(), 1.0 / d_min);
  const Exponent s(red.s);

  GisVerification v;
  v.threshold_scaled = binom2(red.k);
  for_each_subset(p.size(), red.k, opt.cap, [&](const std::vector<int>& pick) {
    bool independent = true;
    for (std::size_t a = 0; a < pick.size() && independent; ++a)
      for (std::size_t b = a + 1; b < pick.size(); ++b)
        if (p.distance(pick[a], pick[b]) < p.delta()) {
          independent = false;
          break;
        }
    const double energy = riesz_energy(scaled, Subset(pick), s);
    if (independent) {
      v.independent_exists = true;
      v.max_independent_energy_scaled =
          std::max(v.max_independent_energy_scaled, energy);
    } else {
      v.min_dependent_energy_scaled =
          std::min(v.min_dependent_energy_scaled, energy);
    }
    if (energy <= v.threshold_scaled * (1.0 + kRelTol)) v.energy_decision = true;
  });
  v.decision_matches = v.energy_decision == v.independent_exists;
  if (v.independent_exists)
    v.separated = v.max_independent_energy_scaled <=
                  v.threshold_scaled * (1.0 + kRelTol);
  if (std::isfinite(v.min_dependent_energy_scaled))
    v.separated = v.separated && v.threshold_scaled < v.min_dependent_energy_scaled;
  return v;
}

}  // namespace riesz
