#include "paretolab/model.hpp"

#include <cmath>
#include <string>

#include "paretolab/error.hpp"

namespace paretolab {

ModelParams validate_params(double p, double gamma, double kappa) {
  if (!std::isfinite(p)) throw Error(ErrorKind::NonFinite, "p is not finite");
  if (!std::isfinite(gamma)) throw Error(ErrorKind::NonFinite, "gamma is not finite");
  if (!std::isfinite(kappa)) throw Error(ErrorKind::NonFinite, "kappa is not finite");
  if (!(p > 0.0 && p < 1.0)) throw Error(ErrorKind::OutOfRange, "p out of range (0,1)");
  if (!(gamma > 0.0)) throw Error(ErrorKind::OutOfRange, "gamma out of range (0,inf)");
  if (!(kappa >= 1.0)) throw Error(ErrorKind::OutOfRange, "kappa out of range [1,inf)");
  return ModelParams(p, gamma, kappa);
}

DerivedCoefficients derive_coefficients(const ModelParams& params) {
  const double p = params.p();
  const double g = params.gamma();
  const double k = params.kappa();
  DerivedCoefficients c{};
  c.lambda = std::log1p(g);
  c.a = (1.0 - p) * (1.0 + g) / k;
  c.b = p / (k * (1.0 + g));
  c.discriminant = 1.0 - 4.0 * p * (1.0 - p) / (k * k);
  return c;
}

}  // namespace paretolab
