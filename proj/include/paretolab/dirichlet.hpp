#pragma once

#include <optional>
#include <vector>

#include "paretolab/model.hpp"

namespace paretolab {

// One population class: wins with probability p (wealth times 1+gamma),
// loses with probability q (wealth divided by 1+gamma).
struct ClassEntry {
  double p;
  double q;
  double gamma;
};

class ClassMix {
 public:
  const std::vector<ClassEntry>& entries() const noexcept { return entries_; }
  double kappa() const noexcept { return kappa_; }

  friend ClassMix validate_mix(std::vector<ClassEntry> entries, double kappa);

 private:
  ClassMix(std::vector<ClassEntry> entries, double kappa)
      : entries_(std::move(entries)), kappa_(kappa) {}

  std::vector<ClassEntry> entries_;
  double kappa_;
};

// Requires at least one entry, p_i, q_i >= 0, gamma_i > 0, kappa >= 1 and
// sum(p_i + q_i) = 1 within 1e-12.
ClassMix validate_mix(std::vector<ClassEntry> entries, double kappa);

// The one-entry mix (p, 1-p, gamma) with the same kappa.
ClassMix single_class(const ModelParams& params);

// Exponential sum  D(rho) = sum_t coeff_t * exp(rate_t * rho)  with
// nonnegative coefficients, hence convex in rho.
class DirichletPolynomial {
 public:
  struct Term {
    double coeff;
    double rate;
  };

  explicit DirichletPolynomial(std::vector<Term> terms);

  double operator()(double rho) const;
  double derivative(double rho) const;
  const std::vector<Term>& terms() const noexcept { return terms_; }
  // |rho| beyond which some term would overflow.
  double rho_limit() const noexcept { return rho_limit_; }

 private:
  std::vector<Term> terms_;
  double rho_limit_;
};

// Terms p_i/(kappa(1+g_i)) e^{-lambda_i rho} and q_i(1+g_i)/kappa e^{lambda_i rho}:
// the coefficients of the multi-class operator, so f = x^rho is invariant
// iff D(rho) = 1.
DirichletPolynomial characteristic_polynomial(const ClassMix& mix);

// D(rho) = (1/kappa) sum_i [ p_i (1+g_i)^(-rho-1) + q_i (1+g_i)^(rho+1) ].
double characteristic_value(const ClassMix& mix, double rho);

struct TailRoot {
  double rho0;         // smaller real root of D = 1, negative
  double alpha;        // -rho0
  double certificate;  // |D(rho0) - 1|
  double rho_min;      // minimizer of D
  double d_min;        // D(rho_min)
  std::optional<double> rho_upper;  // larger root, when D crosses 1 again
};

// Golden-section minimisation of D on an expanding bracket, then bisection on
// each side of the minimiser.
//   NoRoot          min D >= 1 - 1e-12 (no crossing, or a double root)
//   NoNegativeRoot  D stays below 1 to the left, or the smaller root is >= 0
TailRoot find_unit_root(const DirichletPolynomial& poly);

TailRoot find_tail_root(const ClassMix& mix);

}  // namespace paretolab
