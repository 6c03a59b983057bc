#include "paretolab/dirichlet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "paretolab/error.hpp"

namespace paretolab {

namespace {

constexpr double kMixSumTolerance = 1e-12;
constexpr double kDoubleRootBand = 1e-12;

}  // namespace

ClassMix validate_mix(std::vector<ClassEntry> entries, double kappa) {
  if (entries.empty()) throw Error(ErrorKind::OutOfRange, "class mix has no entries");
  if (!std::isfinite(kappa)) throw Error(ErrorKind::NonFinite, "kappa is not finite");
  if (!(kappa >= 1.0)) throw Error(ErrorKind::OutOfRange, "kappa out of range [1,inf)");
  double total = 0.0;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& e = entries[i];
    const std::string where = "class " + std::to_string(i) + ": ";
    if (!std::isfinite(e.p) || !std::isfinite(e.q) || !std::isfinite(e.gamma)) {
      throw Error(ErrorKind::NonFinite, where + "non-finite value");
    }
    if (e.p < 0.0) throw Error(ErrorKind::OutOfRange, where + "p must be >= 0");
    if (e.q < 0.0) throw Error(ErrorKind::OutOfRange, where + "q must be >= 0");
    if (!(e.gamma > 0.0)) throw Error(ErrorKind::OutOfRange, where + "gamma must be > 0");
    total += e.p + e.q;
  }
  if (std::abs(total - 1.0) > kMixSumTolerance) {
    throw Error(ErrorKind::OutOfRange, "class weights sum(p + q) must equal 1");
  }
  return ClassMix(std::move(entries), kappa);
}

ClassMix single_class(const ModelParams& params) {
  return validate_mix({{params.p(), 1.0 - params.p(), params.gamma()}}, params.kappa());
}

DirichletPolynomial::DirichletPolynomial(std::vector<Term> terms) : terms_(std::move(terms)) {
  if (terms_.empty()) throw Error(ErrorKind::OutOfRange, "empty exponential sum");
  double max_rate = 0.0;
  bool any_positive = false;
  for (const auto& t : terms_) {
    if (!std::isfinite(t.coeff) || !std::isfinite(t.rate)) {
      throw Error(ErrorKind::NonFinite, "non-finite term in exponential sum");
    }
    if (t.coeff < 0.0) throw Error(ErrorKind::OutOfRange, "negative coefficient");
    any_positive = any_positive || t.coeff > 0.0;
    max_rate = std::max(max_rate, std::abs(t.rate));
  }
  if (!any_positive) throw Error(ErrorKind::OutOfRange, "all coefficients are zero");
  rho_limit_ = max_rate > 0.0 ? 600.0 / max_rate : std::numeric_limits<double>::infinity();
}

double DirichletPolynomial::operator()(double rho) const {
  double sum = 0.0;
  for (const auto& t : terms_) sum += t.coeff * std::exp(t.rate * rho);
  return sum;
}

double DirichletPolynomial::derivative(double rho) const {
  double sum = 0.0;
  for (const auto& t : terms_) sum += t.coeff * t.rate * std::exp(t.rate * rho);
  return sum;
}

DirichletPolynomial characteristic_polynomial(const ClassMix& mix) {
  std::vector<DirichletPolynomial::Term> terms;
  const double k = mix.kappa();
  for (const auto& e : mix.entries()) {
    const double lambda = std::log1p(e.gamma);
    terms.push_back({e.p / (k * (1.0 + e.gamma)), -lambda});
    terms.push_back({e.q * (1.0 + e.gamma) / k, lambda});
  }
  return DirichletPolynomial(std::move(terms));
}

double characteristic_value(const ClassMix& mix, double rho) {
  return characteristic_polynomial(mix)(rho);
}

namespace {

// Locates the minimiser of a convex function: expand a downhill bracket, then
// golden-section. Returns a clamped point when D is monotone up to the limit.
double minimise(const DirichletPolynomial& d) {
  const double limit = d.rho_limit();
  double a = -1.0, b = 0.0, c = 1.0;
  double fa = d(a), fb = d(b), fc = d(c);
  double step = 1.0;
  while (!(fb <= fa && fb <= fc)) {
    step *= 2.0;
    if (fa < fb) {  // downhill to the left
      c = b; fc = fb;
      b = a; fb = fa;
      a = std::max(b - step, -limit); fa = d(a);
      if (a <= -limit && fa < fb) return a;
    } else {
      a = b; fa = fb;
      b = c; fb = fc;
      c = std::min(b + step, limit); fc = d(c);
      if (c >= limit && fc < fb) return c;
    }
  }
  constexpr double kInvPhi = 0.6180339887498949;
  double lo = a, hi = c;
  double x1 = hi - kInvPhi * (hi - lo), x2 = lo + kInvPhi * (hi - lo);
  double f1 = d(x1), f2 = d(x2);
  for (int it = 0; it < 200 && hi - lo > 1e-13 * (1.0 + std::abs(lo) + std::abs(hi)); ++it) {
    if (f1 <= f2) {
      hi = x2; x2 = x1; f2 = f1;
      x1 = hi - kInvPhi * (hi - lo); f1 = d(x1);
    } else {
      lo = x1; x1 = x2; f1 = f2;
      x2 = lo + kInvPhi * (hi - lo); f2 = d(x2);
    }
  }
  return f1 <= f2 ? x1 : x2;
}

// Bisection for D = 1 between `above` (D > 1) and `below` (D < 1), run until
// the bracket cannot shrink further in double precision.
double bisect_unit(const DirichletPolynomial& d, double above, double below) {
  for (int it = 0; it < 2000; ++it) {
    const double mid = 0.5 * (above + below);
    if (mid == above || mid == below) break;
    if (d(mid) > 1.0) above = mid; else below = mid;
  }
  return std::abs(d(above) - 1.0) <= std::abs(d(below) - 1.0) ? above : below;
}

// Walks away from `from` in direction `dir` until D exceeds 1.
std::optional<double> find_crossing_bound(const DirichletPolynomial& d, double from, double dir) {
  const double limit = d.rho_limit();
  double step = 1.0;
  for (int it = 0; it < 200; ++it) {
    double x = from + dir * step;
    if (std::abs(x) > limit) x = dir * limit;
    if (d(x) > 1.0) return x;
    if (std::abs(x) >= limit) return std::nullopt;
    step *= 2.0;
  }
  return std::nullopt;
}

}  // namespace

TailRoot find_unit_root(const DirichletPolynomial& poly) {
  TailRoot r{};
  r.rho_min = minimise(poly);
  r.d_min = poly(r.rho_min);
  if (r.d_min >= 1.0 - kDoubleRootBand) {
    throw Error(ErrorKind::NoRoot,
                "min D = " + std::to_string(r.d_min) + " >= 1: no simple power-law invariant");
  }
  const auto left = find_crossing_bound(poly, r.rho_min, -1.0);
  if (!left) {
    throw Error(ErrorKind::NoNegativeRoot, "D stays below 1 as rho -> -inf: no decaying branch");
  }
  r.rho0 = bisect_unit(poly, *left, r.rho_min);
  if (r.rho0 >= 0.0) {
    throw Error(ErrorKind::NoNegativeRoot, "both roots of D = 1 are nonnegative");
  }
  r.alpha = -r.rho0;
  r.certificate = std::abs(poly(r.rho0) - 1.0);
  if (const auto right = find_crossing_bound(poly, r.rho_min, 1.0)) {
    r.rho_upper = bisect_unit(poly, *right, r.rho_min);
  }
  return r;
}

TailRoot find_tail_root(const ClassMix& mix) {
  return find_unit_root(characteristic_polynomial(mix));
}

}  // namespace paretolab
