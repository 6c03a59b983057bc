#pragma once

// Parameters of the one-class betting model with dissipation, and the
// coefficients of its log-domain functional equation
//   a F(x + lambda) - F(x) + b F(x - lambda) = 0.

namespace paretolab {

class ModelParams {
 public:
  double p() const noexcept { return p_; }
  double gamma() const noexcept { return gamma_; }
  double kappa() const noexcept { return kappa_; }

  // Set when p <= 1/2: the bet has no positive expected gain.
  bool low_p_warning() const noexcept { return p_ <= 0.5; }

  friend ModelParams validate_params(double p, double gamma, double kappa);

 private:
  ModelParams(double p, double gamma, double kappa)
      : p_(p), gamma_(gamma), kappa_(kappa) {}

  double p_;
  double gamma_;
  double kappa_;
};

struct DerivedCoefficients {
  double lambda;  // log(1 + gamma)
  double a;       // (1 - p)(1 + gamma) / kappa, weight of the upward read f((1+gamma) x)
  double b;       // p / (kappa (1 + gamma)), weight of the downward read f(x / (1+gamma))
  // 1 - 4ab, evaluated as 1 - 4p(1-p)/kappa^2 so the degenerate point is exact.
  double discriminant;
};

// Throws Error{OutOfRange} for p outside (0,1), gamma <= 0, kappa < 1 and
// Error{NonFinite} for NaN or infinite inputs.
ModelParams validate_params(double p, double gamma, double kappa);

DerivedCoefficients derive_coefficients(const ModelParams& params);

}  // namespace paretolab
