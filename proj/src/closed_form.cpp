#include "paretolab/closed_form.hpp"

#include <cmath>
#include <string>

#include "paretolab/error.hpp"

namespace paretolab {

std::pair<double, double> characteristic_roots(const DerivedCoefficients& coeffs) {
  if (!(coeffs.discriminant > 0.0)) {
    throw Error(ErrorKind::DegenerateDiscriminant,
                "characteristic quadratic has a double root (p = 1/2, kappa = 1)");
  }
  // 1 + sqrt(D) never cancels, so both roots keep full relative precision.
  const double s = 1.0 + std::sqrt(coeffs.discriminant);
  return {2.0 * coeffs.b / s, s / (2.0 * coeffs.a)};
}

ExponentReport pareto_exponent(const ModelParams& params) {
  ExponentReport r{};
  r.coeffs = derive_coefficients(params);
  const auto [x1, x2] = characteristic_roots(r.coeffs);
  const double lambda = r.coeffs.lambda;
  r.x1 = x1;
  r.x2 = x2;
  r.rho0 = std::log(x1) / lambda;
  r.rho1 = std::log(x2) / lambda;
  r.alpha = -r.rho0;

  const double a = r.coeffs.a;
  const double b = r.coeffs.b;
  r.alpha_quadratic_form = -std::log((1.0 - std::sqrt(1.0 - 4.0 * a * b)) / (2.0 * a)) / lambda;

  const double p = params.p();
  const double k = params.kappa();
  r.alpha_kappa_form =
      1.0 - std::log((k - std::sqrt(k * k - 4.0 * p * (1.0 - p))) / (2.0 * (1.0 - p))) /
                std::log(1.0 + params.gamma());
  return r;
}

SweepParam parse_sweep_param(std::string_view name) {
  if (name == "p") return SweepParam::P;
  if (name == "gamma") return SweepParam::Gamma;
  if (name == "kappa") return SweepParam::Kappa;
  throw Error(ErrorKind::Parse, "unknown sweep parameter '" + std::string(name) +
                                    "' (expected p, gamma or kappa)");
}

std::string_view to_string(SweepParam which) {
  switch (which) {
    case SweepParam::P: return "p";
    case SweepParam::Gamma: return "gamma";
    case SweepParam::Kappa: return "kappa";
  }
  return "?";
}

namespace {

ModelParams with_value(const ModelParams& base, SweepParam which, double v) {
  switch (which) {
    case SweepParam::P: return validate_params(v, base.gamma(), base.kappa());
    case SweepParam::Gamma: return validate_params(base.p(), v, base.kappa());
    case SweepParam::Kappa: return validate_params(base.p(), base.gamma(), v);
  }
  return base;
}

}  // namespace

std::vector<SweepRow> exponent_sweep(const ModelParams& params, SweepParam which,
                                     double from, double to, int steps) {
  if (steps < 1) throw Error(ErrorKind::OutOfRange, "sweep needs at least one step");
  if (!std::isfinite(from) || !std::isfinite(to)) {
    throw Error(ErrorKind::NonFinite, "sweep bounds are not finite");
  }
  std::vector<SweepRow> rows;
  rows.reserve(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) {
    double v = from;
    if (steps > 1) {
      v = (i == steps - 1) ? to : from + (to - from) * static_cast<double>(i) / (steps - 1);
    }
    rows.push_back({v, pareto_exponent(with_value(params, which, v)).alpha});
  }
  return rows;
}

double dalpha_dkappa_fd(const ModelParams& params, double h) {
  if (!(h > 0.0) || !std::isfinite(h)) {
    throw Error(ErrorKind::OutOfRange, "finite-difference step must be positive");
  }
  const double k = params.kappa();
  if (k - h < 1.0) {
    throw Error(ErrorKind::OutOfRange, "kappa - h falls below 1");
  }
  const double up = pareto_exponent(validate_params(params.p(), params.gamma(), k + h)).alpha;
  const double down = pareto_exponent(validate_params(params.p(), params.gamma(), k - h)).alpha;
  return (up - down) / (2.0 * h);
}

}  // namespace paretolab
