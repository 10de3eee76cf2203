#pragma once

// Independent reference implementations used only to cross-check the library.
// They favour transparency over speed: bisection instead of closed forms,
// dense linear solves instead of incremental updates.

#include <cmath>
#include <vector>

namespace oracle {

inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }
inline double normal_survival(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

// Bisection inverse of the normal cdf; ~1e-13 absolute accuracy.  The upper
// half bisects the survival function so the tail probability keeps its
// relative precision.
inline double normal_quantile(double p) {
  if (p > 0.5) {
    const double tail = 1.0 - p;  // exact for p >= 0.5
    double lo = 0.0, hi = 40.0;
    for (int i = 0; i < 200; ++i) {
      const double mid = 0.5 * (lo + hi);
      (normal_survival(mid) > tail ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  }
  double lo = -40.0, hi = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (normal_cdf(mid) < p ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// n points spaced evenly in log between lo and hi (inclusive).
inline std::vector<double> log_spaced(double lo, double hi, int n) {
  std::vector<double> out(n);
  const double llo = std::log(lo), lhi = std::log(hi);
  for (int i = 0; i < n; ++i)
    out[i] = std::exp(llo + (lhi - llo) * i / (n - 1));
  return out;
}

}  // namespace oracle
