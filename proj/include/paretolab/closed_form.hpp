#pragma once

#include <string_view>
#include <utility>
#include <vector>

#include "paretolab/model.hpp"

namespace paretolab {

// Roots of the characteristic quadratic a y^2 - y + b = 0 in y = exp(rho lambda),
// and the Pareto exponent they determine.
// The ordering 0 < x1 < 1 < x2 needs a + b < 1. Otherwise (large gamma,
// or p <= 1/2) both roots may lie below 1.
struct ExponentReport {
  DerivedCoefficients coeffs;
  double x1;     // smaller root
  double x2;     // larger root
  double rho0;   // log(x1) / lambda, decaying branch
  double rho1;   // log(x2) / lambda, growing branch
  double alpha;  // -rho0
  // The two closed forms evaluated literally, as cross-checks of alpha.
  double alpha_quadratic_form;  // -log((1 - sqrt(1 - 4ab)) / 2a) / lambda
  double alpha_kappa_form;      // 1 - log((k - sqrt(k^2 - 4p(1-p))) / 2(1-p)) / log(1+g)
};

// Throws Error{DegenerateDiscriminant} when 1 - 4ab <= 0, which for valid
// parameters only happens at p = 1/2, kappa = 1.
std::pair<double, double> characteristic_roots(const DerivedCoefficients& coeffs);

ExponentReport pareto_exponent(const ModelParams& params);

enum class SweepParam { P, Gamma, Kappa };

SweepParam parse_sweep_param(std::string_view name);
std::string_view to_string(SweepParam which);

struct SweepRow {
  double value;
  double alpha;
};

// `steps` uniformly spaced points with both endpoints included; steps = 1
// evaluates `from` only.
std::vector<SweepRow> exponent_sweep(const ModelParams& params, SweepParam which,
                                     double from, double to, int steps);

// Central difference (alpha(k+h) - alpha(k-h)) / 2h.
double dalpha_dkappa_fd(const ModelParams& params, double h);

}  // namespace paretolab
