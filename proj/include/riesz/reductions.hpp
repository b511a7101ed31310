#pragma once

#include <array>
#include <optional>
#include <variant>
#include <vector>

#include "riesz/metric.hpp"
#include "riesz/oracle.hpp"

namespace riesz {

// Simple undirected graph; edges stored normalized (u < v, unique).
class Graph {
 public:
  static Graph make(int n, std::vector<std::array<int, 2>> edges);

  int size() const { return n_; }
  const std::vector<std::array<int, 2>>& edges() const { return edges_; }
  bool has_edge(int u, int v) const { return adj_[static_cast<std::size_t>(u) * n_ + v]; }

 private:
  int n_ = 0;
  std::vector<std::array<int, 2>> edges_;
  std::vector<char> adj_;
};

// 2-D point set with an independence threshold delta and target size k.
class PlanarInstance {
 public:
  static PlanarInstance make(std::vector<std::array<double, 2>> points,
                             double delta, int k);

  int size() const { return static_cast<int>(points_.size()); }
  const std::vector<std::array<double, 2>>& points() const { return points_; }
  double delta() const { return delta_; }
  int k() const { return k_; }
  double distance(int i, int j) const;

  // Euclidean distance matrix over the points.
  MetricInstance to_metric() const;

 private:
  std::vector<std::array<double, 2>> points_;
  double delta_ = 0.0;
  int k_ = 0;
};

// Smallest admissible (>= delta) and largest forbidden (< delta) pairwise
// distances, with the realizing pairs.
struct GapQuantities {
  double d_min = 0.0;
  double delta_max = 0.0;
  std::array<int, 2> d_min_pair{-1, -1};
  std::array<int, 2> delta_max_pair{-1, -1};
};

// One of the pair classes is empty, so the independence decision is immediate
// and no reduction is needed.
struct TrivialInstance {
  enum class Reason { kNoAdmissiblePairs, kNoForbiddenPairs };
  Reason reason;
  bool independent_subset_exists;  // direct answer for (P, delta, k)
};

std::variant<GapQuantities, TrivialInstance> gap_quantities(const PlanarInstance& p);

// Least u such that c * b^-u < a^-u for every exponent above it, i.e.
// log(c) / (log(b) - log(a)). Requires 0 < a < b and c > 0.
double choose_exponent(double c, double a, double b);

struct Provenance {
  std::optional<double> d_min, delta_max;
  std::optional<std::array<int, 2>> d_min_pair, delta_max_pair;
  std::optional<double> distance_gap;  // clique construction: the {1,2} gap
};

// A constructed energy-threshold instance: decide whether some k-subset of
// `instance` has Riesz s-energy <= threshold.
struct ReductionOutput {
  MetricInstance instance;
  int k = 0;
  double s = 0.0;
  double threshold = 0.0;
  Provenance provenance;
};

// Graph -> metric with d = 2 on edges, 1 on non-edges; threshold
// C(k,2) * 2^-s. A k-clique exists iff some k-subset meets the threshold.
ReductionOutput clique_to_rssp(const Graph& g, int k, Exponent s);

// Planar instance -> energy threshold with integer exponent
// s = 1 + ceil(log C(k,2) / log(d_min/delta_max)) and T = C(k,2) * d_min^-s.
// Guarantees C(k,2) * d_min^-s < delta_max^-s; trivial instances are answered
// directly instead.
std::variant<ReductionOutput, TrivialInstance> gis_to_rssp(const PlanarInstance& p);

struct LargeSResult {
  double s0 = 0.0;
  double d_star = 0.0;            // best achievable minimum pairwise distance
  std::optional<double> r;        // best among subsets strictly below d_star
  bool all_subsets_optimal = false;
};

// Exponent threshold above which every minimum-energy k-subset also maximizes
// the minimum pairwise distance. Brute-force diagnostic for one instance.
LargeSResult large_s_threshold(const MetricInstance& m, int k,
                               const OracleOptions& opt = {});

// --- empirical verification (exhaustive; used by the CLI --verify path) ----

struct CliqueVerification {
  bool clique_exists = false;
  double min_energy = 0.0;
  bool decision_matches = false;   // (min_energy <= T) == clique_exists
  bool exact_at_threshold = true;  // when a clique exists, min_energy == T
};
CliqueVerification verify_clique_reduction(const Graph& g, const ReductionOutput& red,
                                           const OracleOptions& opt = {});

struct GisVerification {
  bool independent_exists = false;
  bool energy_decision = false;  // some k-subset at or below the threshold
  bool decision_matches = false;
  // extremes over k-subsets, evaluated with distances scaled by 1/d_min
  double max_independent_energy_scaled = -kInf;
  double min_dependent_energy_scaled = kInf;
  double threshold_scaled = 0.0;
  bool separated = true;  // max independent <= T_scaled < min dependent
};
GisVerification verify_gis_reduction(const PlanarInstance& p, const ReductionOutput& red,
                                     const OracleOptions& opt = {});

}  // namespace riesz
