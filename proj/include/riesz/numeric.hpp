#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

namespace riesz {

// Library-wide comparison tolerance (relative).
inline constexpr double kRelTol = 1e-9;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Relative closeness. Exact equality (covers +-inf) short-circuits; values of
// mixed finiteness never compare close.
inline bool close_rel(double a, double b, double rel = kRelTol) {
  if (a == b) return true;
  if (!std::isfinite(a) || !std::isfinite(b)) return false;
  const double scale = std::max(std::abs(a), std::abs(b));
  return std::abs(a - b) <= rel * scale;
}

// d^(-s) via exp/log; stable for exponents far beyond pow's comfort zone.
inline double inv_power(double d, double s) { return std::exp(-s * std::log(d)); }

}  // namespace riesz
