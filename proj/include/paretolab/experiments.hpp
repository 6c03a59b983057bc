#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "paretolab/closed_form.hpp"
#include "paretolab/dirichlet.hpp"
#include "paretolab/estimators.hpp"
#include "paretolab/log_grid.hpp"

namespace paretolab {

struct RateFit {
  double rate = 0.0;           // exp(mean log ratio)
  double max_deviation = 0.0;  // max |ratio_k - rate|
  std::size_t ratios_used = 0;
};

// Throws Error{InsufficientData} with fewer than three positive distances.
RateFit measure_convergence_rate(const ConvergenceTrace& trace);

struct StabilityReport {
  double x_c = 0.0;
  double kappa = 1.0;
  double alpha = 0.0;
  std::vector<double> d;       // L1 size of the confiscated perturbation, per step
  std::vector<double> ratios;  // d_{n+1} / d_n
  double rate = 0.0;
  double max_ratio_deviation = 0.0;  // from 1/kappa
  double epsilon = 0.0;  // analytic mass of f0 beyond the grid edge
  // Slope of f0 - delta_n over whole periods starting at x_c.
  double recovered_alpha = 0.0;
  double slope_error = 0.0;
  std::int64_t window_lo = 0;
  std::int64_t window_hi = 0;
  bool geometric = false;
  bool shape_recovered = false;
  std::string verdict;
};

struct ConfiscationOptions {
  bool allow_non_dissipative = false;  // diagnostic runs at kappa = 1
  int window_periods = 4;
  double ratio_tolerance = 1e-9;
  double slope_tolerance = 1e-4;
  std::size_t cell_cap = kDefaultCellCap;
};

// Removes f0 above x_c from the sound fixed point and iterates the removed
// part delta_n = W^n delta_0. Because delta_0 >= 0 each step shrinks its L1
// size by exactly 1/kappa.
// Errors: OutOfRange (x_c outside the grid), NotDissipative (kappa = 1
// without allow_non_dissipative).
StabilityReport confiscation_experiment(const ModelParams& params, const GridSpec& spec,
                                        double x_c, int n,
                                        const ConfiscationOptions& options = {});

// x_c holding the top 10% of the tail mass of x^rho0 above x_min. Throws
// Error{NotDissipative} at kappa = 1, where that mass is infinite.
double auto_confiscation_threshold(const ModelParams& params, double x_min);

// Grid reaching far enough above x_c that the truncated mass is <= 1e-9 of
// the confiscated mass (log x_max capped at 300).
GridSpec auto_stability_grid(const ModelParams& params, int m, double x_min, double x_c);

// Steps after which d_n / d_0 drops below `fraction`, i.e. ceil(log(1/fraction)/log kappa).
int steps_to_fraction(double kappa, double fraction);

struct EquivalenceReport {
  bool tail_integral_converges = false;  // integral of x^rho0 over [x0, inf)
  bool alpha_above_one = false;
  bool dissipative = false;  // kappa > 1
  bool agree = false;
  double rho0 = 0.0;
  double alpha = 0.0;
  double tail_count = 0.0;   // integral of x^rho0 over [x0, inf), inf when divergent
  double tail_wealth = 0.0;  // integral of x^(rho0+1) over [x0, inf)
};

// Values within this band of the critical exponent are treated as exactly critical.
inline constexpr double kCriticalTolerance = 1e-12;

EquivalenceReport equivalence_check(const ModelParams& params, double x0);

struct MulticlassGridReport {
  double alpha_root = 0.0;  // from the characteristic root
  TailEstimate slope;       // from the iterated grid
  double relative_error = 0.0;
  int period_cells = 0;
  GridDistribution grid;
};

// Iterates a triangular bump source through the multi-class operator,
// g_{n+1} = W(g_n) + source, and regresses the tail over whole periods
// starting skip_periods above the bump. lambda_ref = min log(1+g_i),
// m cells per lambda_ref. Throws Error{AlignmentMismatch} for incommensurate
// mixes.
MulticlassGridReport multiclass_grid_tail(const ClassMix& mix, int m, int n_steps,
                                          int skip_periods = 4, int window_periods = 8);

}  // namespace paretolab
