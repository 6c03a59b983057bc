#include "paretolab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>

#include "paretolab/error.hpp"

namespace paretolab {

RateFit measure_convergence_rate(const ConvergenceTrace& trace) {
  const auto& d = trace.distances;
  const auto positive = std::count_if(d.begin(), d.end(), [](double v) { return v > 0.0; });
  if (positive < 3) {
    throw Error(ErrorKind::InsufficientData, "rate fit needs at least three positive distances");
  }
  std::vector<double> ratios;
  for (std::size_t k = 0; k + 1 < d.size(); ++k) {
    if (d[k] > 0.0 && d[k + 1] > 0.0) ratios.push_back(d[k + 1] / d[k]);
  }
  if (ratios.empty()) {
    throw Error(ErrorKind::InsufficientData, "no consecutive positive distances");
  }
  double log_sum = 0.0;
  for (double r : ratios) log_sum += std::log(r);
  RateFit fit;
  fit.rate = std::exp(log_sum / static_cast<double>(ratios.size()));
  for (double r : ratios) fit.max_deviation = std::max(fit.max_deviation, std::abs(r - fit.rate));
  fit.ratios_used = ratios.size();
  return fit;
}

double auto_confiscation_threshold(const ModelParams& params, double x_min) {
  const double alpha = pareto_exponent(params).alpha;
  if (!(alpha > 1.0 + kCriticalTolerance)) {
    throw Error(ErrorKind::NotDissipative,
                "automatic threshold needs a summable tail (alpha > 1, kappa > 1)");
  }
  // Tail mass above x is proportional to x^(1 - alpha).
  return x_min * std::pow(10.0, 1.0 / (alpha - 1.0));
}

GridSpec auto_stability_grid(const ModelParams& params, int m, double x_min, double x_c) {
  const auto report = pareto_exponent(params);
  const double alpha = report.alpha;
  const double lambda = report.coeffs.lambda;
  double log_top = std::log(x_c) + 9.0 * std::log(10.0) / (alpha - 1.0);
  log_top = std::max(log_top, std::log(x_c) + 12.0 * lambda);
  log_top = std::min(log_top, 300.0);
  return GridSpec{m, x_min, std::exp(log_top)};
}

int steps_to_fraction(double kappa, double fraction) {
  if (!(kappa > 1.0) || !(fraction > 0.0 && fraction < 1.0)) {
    throw Error(ErrorKind::OutOfRange, "steps_to_fraction needs kappa > 1 and 0 < fraction < 1");
  }
  return static_cast<int>(std::ceil(std::log(1.0 / fraction) / std::log(kappa)));
}

StabilityReport confiscation_experiment(const ModelParams& params, const GridSpec& spec,
                                        double x_c, int n, const ConfiscationOptions& options) {
  if (params.kappa() == 1.0 && !options.allow_non_dissipative) {
    throw Error(ErrorKind::NotDissipative,
                "kappa = 1 conserves the perturbation; stability needs kappa > 1");
  }
  if (!(x_c >= spec.x_min && x_c <= spec.x_max)) {
    throw Error(ErrorKind::OutOfRange, "confiscation threshold lies outside the grid");
  }
  if (n < 0) throw Error(ErrorKind::OutOfRange, "step count must be >= 0");

  const auto exponent = pareto_exponent(params);
  const std::vector<double> flat(static_cast<std::size_t>(spec.m), 1.0);
  const GridDistribution f0 = pareto_fixed_point(params, spec, flat);

  GridDistribution delta = f0;
  delta.is_perturbation = true;
  for (std::size_t j = 0; j < delta.size(); ++j) {
    if (!(delta.x(j) > x_c)) delta.values[j] = 0.0;
  }

  StabilityReport rep;
  rep.x_c = x_c;
  rep.kappa = params.kappa();
  rep.alpha = exponent.alpha;
  const double top_edge = std::exp(f0.log_x(f0.size() - 1) + 0.5 * f0.step());
  rep.epsilon = exponent.alpha > 1.0
                    ? std::pow(top_edge, 1.0 - exponent.alpha) / (exponent.alpha - 1.0)
                    : std::numeric_limits<double>::infinity();

  const auto run = iterate(delta, params, n, options.cell_cap);
  rep.d = run.trace.distances;
  rep.ratios = run.trace.ratios;

  const double target = 1.0 / params.kappa();
  rep.max_ratio_deviation = 0.0;
  for (double r : rep.ratios) {
    rep.max_ratio_deviation = std::max(rep.max_ratio_deviation, std::abs(r - target));
  }
  if (std::isnan(rep.max_ratio_deviation)) rep.max_ratio_deviation = std::numeric_limits<double>::infinity();
  try {
    rep.rate = measure_convergence_rate(run.trace).rate;
  } catch (const Error&) {
    rep.rate = std::numeric_limits<double>::quiet_NaN();
  }
  rep.geometric = !rep.ratios.empty() && rep.max_ratio_deviation <= options.ratio_tolerance;

  // Whole-period window starting at the first confiscated cell, kept inside f0's support.
  const std::int64_t period = spec.m;
  const std::int64_t len = period * std::max(1, options.window_periods);
  const std::int64_t f0_end = f0.base_index + static_cast<std::int64_t>(f0.size());
  std::int64_t lo = f0.index_of(x_c);
  if (std::exp(f0.log_x_at(lo)) <= x_c) ++lo;
  if (lo + len > f0_end) lo = f0_end - len;
  lo = std::max(lo, f0.base_index);
  const std::int64_t hi = std::min(lo + len, f0_end);
  GridDistribution recovered = f0;
  for (std::int64_t k = lo; k < hi; ++k) {
    const auto jd = k - run.grid.base_index;
    const double dn = (jd >= 0 && jd < static_cast<std::int64_t>(run.grid.size()))
                          ? run.grid.values[static_cast<std::size_t>(jd)]
                          : 0.0;
    recovered.values[static_cast<std::size_t>(k - f0.base_index)] -= dn;
  }
  rep.window_lo = lo;
  rep.window_hi = hi;
  try {
    const auto est = loglog_slope(recovered, lo, hi);
    rep.recovered_alpha = est.alpha_hat;
    rep.slope_error = std::abs(est.alpha_hat - exponent.alpha);
    rep.shape_recovered = rep.slope_error <= options.slope_tolerance;
  } catch (const Error&) {
    rep.recovered_alpha = std::numeric_limits<double>::quiet_NaN();
    rep.slope_error = std::numeric_limits<double>::infinity();
    rep.shape_recovered = false;
  }

  char buf[96];
  if (params.kappa() == 1.0) {
    std::snprintf(buf, sizeof buf, "%s, rate=%.17g",
                  rep.max_ratio_deviation <= options.ratio_tolerance ? "conserved" : "inconsistent",
                  rep.rate);
  } else {
    std::snprintf(buf, sizeof buf, "%s, rate=%.17g", rep.geometric ? "geometric" : "not geometric",
                  rep.rate);
  }
  rep.verdict = buf;
  return rep;
}

EquivalenceReport equivalence_check(const ModelParams& params, double x0) {
  if (!(x0 > 0.0) || !std::isfinite(x0)) {
    throw Error(ErrorKind::OutOfRange, "x0 must be positive");
  }
  const auto r = pareto_exponent(params);
  EquivalenceReport e;
  e.rho0 = r.rho0;
  e.alpha = r.alpha_kappa_form;
  constexpr double inf = std::numeric_limits<double>::infinity();
  // Integral of x^s over [x0, inf) converges iff s < -1.
  e.tail_integral_converges = r.rho0 < -1.0 - kCriticalTolerance;
  e.tail_count = e.tail_integral_converges ? std::pow(x0, r.rho0 + 1.0) / (-r.rho0 - 1.0) : inf;
  e.tail_wealth = r.rho0 < -2.0 - kCriticalTolerance
                      ? std::pow(x0, r.rho0 + 2.0) / (-r.rho0 - 2.0)
                      : inf;
  e.alpha_above_one = e.alpha > 1.0 + kCriticalTolerance;
  e.dissipative = params.kappa() > 1.0;
  e.agree = e.tail_integral_converges == e.alpha_above_one && e.alpha_above_one == e.dissipative;
  return e;
}

MulticlassGridReport multiclass_grid_tail(const ClassMix& mix, int m, int n_steps,
                                          int skip_periods, int window_periods) {
  if (window_periods < 1 || skip_periods < 0) {
    throw Error(ErrorKind::OutOfRange, "window needs >= 1 period and skip >= 0");
  }
  double lambda_ref = std::numeric_limits<double>::infinity();
  for (const auto& e : mix.entries()) lambda_ref = std::min(lambda_ref, std::log1p(e.gamma));
  const ShiftOperator op = make_operator(mix, lambda_ref, m);

  MulticlassGridReport rep;
  rep.alpha_root = find_tail_root(mix).alpha;
  int period = 0;
  for (const auto& t : op.terms) period = std::gcd(period, std::abs(t.shift));
  rep.period_cells = period;

  // Triangle of half-width m cells centred on x = 1.
  GridDistribution source;
  source.m = m;
  source.lambda = lambda_ref;
  source.base_index = -m;
  for (int k = -m; k <= m; ++k) {
    source.values.push_back(1.0 - std::abs(static_cast<double>(k)) / (m + 1));
  }
  rep.grid = iterate_with_source(source, op, n_steps);

  const std::int64_t lo = m + static_cast<std::int64_t>(skip_periods) * period;
  const std::int64_t hi = lo + static_cast<std::int64_t>(window_periods) * period;
  rep.slope = loglog_slope(rep.grid, lo, hi);
  rep.relative_error = std::abs(rep.slope.alpha_hat - rep.alpha_root) / rep.alpha_root;
  return rep;
}

}  // namespace paretolab
