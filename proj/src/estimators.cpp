#include "paretolab/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "paretolab/error.hpp"

namespace paretolab {

TailEstimate hill_estimator(std::span<const double> samples, std::size_t k) {
  const std::size_t n = samples.size();
  if (k < 2) throw Error(ErrorKind::OutOfRange, "Hill k must be >= 2");
  if (k >= n) {
    throw Error(ErrorKind::OutOfRange,
                "Hill k = " + std::to_string(k) + " needs more than k samples (n = " +
                    std::to_string(n) + ")");
  }
  for (double v : samples) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw Error(ErrorKind::NonPositiveSample, "Hill estimator needs positive finite samples");
    }
  }
  std::vector<double> top(samples.begin(), samples.end());
  std::nth_element(top.begin(), top.begin() + static_cast<std::ptrdiff_t>(k), top.end(),
                   std::greater<>());
  const double threshold = top[k];
  std::sort(top.begin(), top.begin() + static_cast<std::ptrdiff_t>(k), std::greater<>());
  const double log_thr = std::log(threshold);
  double sum = 0.0;
  for (std::size_t i = 0; i < k; ++i) sum += std::log(top[i]) - log_thr;
  const double mean = sum / static_cast<double>(k);
  if (!(mean > 0.0)) {
    throw Error(ErrorKind::DegenerateSample, "top order statistics are all equal");
  }
  TailEstimate t;
  t.zeta_hat = 1.0 / mean;
  t.alpha_hat = t.zeta_hat + 1.0;
  t.k = k;
  t.threshold = threshold;
  t.std_error = t.zeta_hat / std::sqrt(static_cast<double>(k));
  return t;
}

std::size_t default_hill_k(std::size_t n) {
  const std::size_t one_percent = (n + 99) / 100;
  return std::clamp<std::size_t>(one_percent, 10, std::max<std::size_t>(n / 10, 10));
}

std::vector<TailEstimate> hill_profile(std::span<const double> samples,
                                       std::span<const std::size_t> ks) {
  std::vector<TailEstimate> out;
  out.reserve(ks.size());
  for (std::size_t k : ks) out.push_back(hill_estimator(samples, k));
  return out;
}

TailEstimate loglog_slope(const GridDistribution& g, std::int64_t lo, std::int64_t hi) {
  const auto end = g.base_index + static_cast<std::int64_t>(g.size());
  if (hi - lo < 3 || lo < g.base_index || hi > end) {
    throw Error(ErrorKind::EmptyWindow, "regression window needs >= 3 cells inside the support");
  }
  for (std::int64_t k = lo; k < hi; ++k) {
    if (!(g.values[static_cast<std::size_t>(k - g.base_index)] > 0.0)) {
      throw Error(ErrorKind::NonPositiveDensity, "density must be positive over the window");
    }
  }
  // One intercept per lattice phase k mod m, so any m-periodic factor drops
  // out of the slope. Windows shorter than two periods use a single intercept.
  const std::int64_t phases = (hi - lo >= 2 * std::int64_t{g.m}) ? g.m : 1;
  std::vector<double> mean_u(static_cast<std::size_t>(phases), 0.0);
  std::vector<double> mean_v(static_cast<std::size_t>(phases), 0.0);
  std::vector<double> count(static_cast<std::size_t>(phases), 0.0);
  const auto phase_of = [&](std::int64_t k) {
    return static_cast<std::size_t>(((k % phases) + phases) % phases);
  };
  for (std::int64_t k = lo; k < hi; ++k) {
    const auto ph = phase_of(k);
    mean_u[ph] += g.log_x_at(k);
    mean_v[ph] += std::log(g.values[static_cast<std::size_t>(k - g.base_index)]);
    count[ph] += 1.0;
  }
  for (std::size_t ph = 0; ph < count.size(); ++ph) {
    mean_u[ph] /= count[ph];
    mean_v[ph] /= count[ph];
  }
  double suv = 0.0, suu = 0.0;
  for (std::int64_t k = lo; k < hi; ++k) {
    const auto ph = phase_of(k);
    const double du = g.log_x_at(k) - mean_u[ph];
    const double dv = std::log(g.values[static_cast<std::size_t>(k - g.base_index)]) - mean_v[ph];
    suv += du * dv;
    suu += du * du;
  }
  TailEstimate t;
  t.alpha_hat = -suv / suu;
  t.zeta_hat = t.alpha_hat - 1.0;
  t.k = static_cast<std::size_t>(hi - lo);
  t.threshold = std::exp(g.log_x_at(lo));
  t.window_lo = lo;
  t.window_hi = hi;
  return t;
}

}  // namespace paretolab
