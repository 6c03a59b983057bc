#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "paretolab/log_grid.hpp"

namespace paretolab {

// Tail exponents are reported in both conventions: the density exponent
// alpha (f(x) ~ x^-alpha) and the survival exponent zeta = alpha - 1
// (P(X > x) ~ x^-zeta).
struct TailEstimate {
  double alpha_hat = 0.0;
  double zeta_hat = 0.0;
  std::size_t k = 0;         // order statistics used (Hill) or window cells (regression)
  double threshold = 0.0;    // X_(k+1) for Hill, lowest window x for regression
  std::int64_t window_lo = 0;  // global cell indices [lo, hi) for regression
  std::int64_t window_hi = 0;
  double std_error = 0.0;      // zeta_hat / sqrt(k) for Hill, 0 for regression
};

// Hill estimator on the k largest samples:
//   zeta = 1 / mean_{i<=k}( log X_(i) - log X_(k+1) ),  alpha = zeta + 1.
// Errors: OutOfRange (k < 2 or k >= n), NonPositiveSample, DegenerateSample
// (all top log-spacings zero).
TailEstimate hill_estimator(std::span<const double> samples, std::size_t k);

// ceil(1% of n), clamped to [10, n/10].
std::size_t default_hill_k(std::size_t n);

// Hill estimates at several k, to expose the plateau.
std::vector<TailEstimate> hill_profile(std::span<const double> samples,
                                       std::span<const std::size_t> ks);

// Least-squares slope of log f against log x over global cells [lo, hi),
// with a separate intercept for each phase k mod m once the window spans two
// periods (cancels m-periodic modulation); alpha_hat = -slope. Errors: EmptyWindow (< 3 cells or outside the
// support), NonPositiveDensity.
TailEstimate loglog_slope(const GridDistribution& g, std::int64_t lo, std::int64_t hi);

}  // namespace paretolab
