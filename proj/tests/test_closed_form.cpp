#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "paretolab/closed_form.hpp"
#include "paretolab/error.hpp"

using namespace paretolab;

namespace {

// Frozen from the bisection oracle in oracles.hpp at (p, gamma, kappa) = (0.6, 0.5, 1.2),
// where a = 1/2, b = 1/3 and the roots are 1 -+ 1/sqrt(3).
constexpr double kX1 = 0.42264973081037427;
constexpr double kX2 = 1.5773502691896257;
constexpr double kAlpha = 2.124008910494829;
constexpr double kRho1 = 1.124008910494831;

ErrorKind error_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::Io;
}

}  // namespace

TEST_CASE("frozen values agree with the oracle") {
  CHECK(oracle::small_root(0.6, 0.5, 1.2) == doctest::Approx(kX1).epsilon(1e-15));
  CHECK(oracle::large_root(0.6, 0.5, 1.2) == doctest::Approx(kX2).epsilon(1e-15));
  CHECK(oracle::alpha(0.6, 0.5, 1.2) == doctest::Approx(kAlpha).epsilon(1e-14));
}

TEST_CASE("characteristic_roots at the reference point") {
  const auto [x1, x2] = characteristic_roots(derive_coefficients(validate_params(0.6, 0.5, 1.2)));
  CHECK(x1 == doctest::Approx(kX1).epsilon(1e-14));
  CHECK(x2 == doctest::Approx(kX2).epsilon(1e-14));
}

TEST_CASE("kappa = 1 gives x1 = 1/(1+gamma)") {
  for (double p : {0.55, 0.7, 0.9}) {
    for (double g : {0.05, 0.5, 2.0}) {
      const auto [x1, x2] = characteristic_roots(derive_coefficients(validate_params(p, g, 1.0)));
      CHECK(x1 == doctest::Approx(1.0 / (1.0 + g)).epsilon(1e-15));
      (void)x2;
    }
  }
}

TEST_CASE("double root at p = 1/2, kappa = 1") {
  const auto params = validate_params(0.5, 1.0, 1.0);
  CHECK(error_of([&] { characteristic_roots(derive_coefficients(params)); }) ==
        ErrorKind::DegenerateDiscriminant);
  CHECK(error_of([&] { pareto_exponent(params); }) == ErrorKind::DegenerateDiscriminant);
}

TEST_CASE("with p < 1/2 both roots can sit below 1") {
  // At kappa = 1 the roots are 1/(1+g) and p/((1-p)(1+g)); for p < 1/2 the
  // second is the smaller one and alpha = 1 + log((1-p)/p)/log(1+g) > 1.
  const auto params = validate_params(0.3, 0.5, 1.0);
  CHECK(params.low_p_warning());
  const auto r = pareto_exponent(params);
  CHECK(r.x2 == doctest::Approx(1.0 / 1.5).epsilon(1e-14));
  CHECK(r.x1 == doctest::Approx(0.3 / (0.7 * 1.5)).epsilon(1e-14));
  CHECK(r.alpha == doctest::Approx(1.0 + std::log(0.7 / 0.3) / std::log(1.5)).epsilon(1e-13));
  CHECK(std::abs(r.alpha_kappa_form - r.alpha) <= 1e-10);
  CHECK(r.rho1 < 0.0);
}

TEST_CASE("pareto_exponent examples") {
  const auto r = pareto_exponent(validate_params(0.6, 0.5, 1.2));
  CHECK(r.alpha == doctest::Approx(kAlpha).epsilon(1e-13));
  CHECK(r.rho1 == doctest::Approx(kRho1).epsilon(1e-13));
  CHECK(r.rho0 == -r.alpha);
  CHECK(std::abs(r.alpha_quadratic_form - r.alpha) <= 1e-10);
  CHECK(std::abs(r.alpha_kappa_form - r.alpha) <= 1e-10);

  CHECK(std::abs(pareto_exponent(validate_params(0.7, 0.3, 1.0)).alpha - 1.0) <= 1e-12);

  const auto crit = pareto_exponent(validate_params(0.6, 0.5, 1.0));
  CHECK(std::abs(crit.alpha - 1.0) <= 1e-12);
  CHECK(std::abs(crit.rho0 + 1.0) <= 1e-12);
}

TEST_CASE("exponent_sweep") {
  SUBCASE("kappa from 1 to 2 is increasing and starts at 1") {
    const auto rows = exponent_sweep(validate_params(0.6, 0.5, 1.2), SweepParam::Kappa, 1.0, 2.0, 21);
    REQUIRE(rows.size() == 21);
    CHECK(rows.front().value == 1.0);
    CHECK(rows.back().value == 2.0);
    CHECK(std::abs(rows.front().alpha - 1.0) <= 1e-12);
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].alpha > rows[i - 1].alpha);
  }
  SUBCASE("gamma from 0.1 to 1 is decreasing") {
    const auto rows = exponent_sweep(validate_params(0.6, 0.5, 1.2), SweepParam::Gamma, 0.1, 1.0, 10);
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].alpha < rows[i - 1].alpha);
  }
  SUBCASE("a single step reproduces pareto_exponent") {
    const auto base = validate_params(0.6, 0.5, 1.2);
    const auto rows = exponent_sweep(base, SweepParam::P, 0.6, 0.9, 1);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].value == 0.6);
    CHECK(rows[0].alpha == pareto_exponent(base).alpha);
  }
  SUBCASE("invalid points are rejected") {
    const auto base = validate_params(0.6, 0.5, 1.2);
    CHECK(error_of([&] { exponent_sweep(base, SweepParam::Kappa, 0.5, 2.0, 5); }) ==
          ErrorKind::OutOfRange);
    CHECK(error_of([&] { exponent_sweep(base, SweepParam::Kappa, 1.0, 2.0, 0); }) ==
          ErrorKind::OutOfRange);
    CHECK(error_of([] { parse_sweep_param("delta"); }) == ErrorKind::Parse);
  }
}

TEST_CASE("dalpha_dkappa_fd") {
  const auto params = validate_params(0.6, 0.5, 1.2);
  const double h = 1e-5;
  const double fd = dalpha_dkappa_fd(params, h);
  CHECK(fd > 0.0);
  const double oracle_fd =
      (oracle::alpha(0.6, 0.5, 1.2 + h) - oracle::alpha(0.6, 0.5, 1.2 - h)) / (2.0 * h);
  CHECK(fd == doctest::Approx(oracle_fd).epsilon(1e-6));

  // The derivative simplifies to 1 / (log(1+g) sqrt(k^2 - 4p(1-p))).
  const double simplified = 1.0 / (std::log(1.5) * std::sqrt(1.44 - 4.0 * 0.6 * 0.4));
  CHECK(fd == doctest::Approx(simplified).epsilon(1e-6));

  const double coarse = dalpha_dkappa_fd(params, 1e-4);
  const double fine = dalpha_dkappa_fd(params, 1e-6);
  CHECK(std::abs(coarse - fine) <= 0.5e-4 * std::abs(fine));

  CHECK(error_of([] { dalpha_dkappa_fd(validate_params(0.6, 0.5, 1.0), 1e-3); }) ==
        ErrorKind::OutOfRange);
}

TEST_CASE("root and formula properties over random parameters") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> up(0.5000001, 0.99), ug(0.01, 2.0), uk(1.0, 3.0);
  for (int i = 0; i < 10000; ++i) {
    const double p = up(rng), g = ug(rng), k = uk(rng);
    const auto r = pareto_exponent(validate_params(p, g, k));
    const double a = r.coeffs.a, b = r.coeffs.b;
    REQUIRE(std::abs(a * r.x1 * r.x1 - r.x1 + b) <= 1e-12);
    REQUIRE(std::abs(a * r.x2 * r.x2 - r.x2 + b) <= 1e-12);
    REQUIRE(r.x1 > 0.0);
    REQUIRE(r.x1 < 1.0);
    REQUIRE(r.x1 <= r.x2);
    REQUIRE(r.rho0 < 0.0);
    // Straddling 1 needs the characteristic polynomial to be negative there.
    if (a + b < 1.0) {
      REQUIRE(r.x2 > 1.0);
      REQUIRE(r.rho1 > 0.0);
    }
    REQUIRE(std::abs(r.x1 * r.x2 - b / a) <= 1e-12 * (b / a));
    REQUIRE(std::abs(r.x1 + r.x2 - 1.0 / a) <= 1e-12 * (1.0 / a));
    REQUIRE(std::abs(r.alpha_quadratic_form - r.alpha) <= 1e-10);
    REQUIRE(std::abs(r.alpha_kappa_form - r.alpha) <= 1e-10);
    REQUIRE(std::abs(oracle::alpha(p, g, k) - r.alpha) <= 1e-10);
  }
}

TEST_CASE("kappa = 1 criticality over random (p, gamma)") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> up(0.5000001, 0.99), ug(0.01, 2.0);
  for (int i = 0; i < 1000; ++i) {
    const auto r = pareto_exponent(validate_params(up(rng), ug(rng), 1.0));
    REQUIRE(std::abs(r.alpha - 1.0) <= 1e-12);
  }
}

TEST_CASE("monotonicity along grids") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> up(0.51, 0.95), uk(1.01, 2.0), ug(0.01, 1.0);
  for (int i = 0; i < 50; ++i) {
    const double p = up(rng);
    const auto by_gamma = exponent_sweep(validate_params(p, 0.5, uk(rng)), SweepParam::Gamma, 0.01, 1.0, 100);
    for (std::size_t j = 1; j < by_gamma.size(); ++j) {
      REQUIRE(by_gamma[j - 1].alpha - by_gamma[j].alpha >= 1e-12);
    }
    const auto by_kappa = exponent_sweep(validate_params(p, ug(rng), 1.5), SweepParam::Kappa, 1.0, 2.0, 100);
    for (std::size_t j = 1; j < by_kappa.size(); ++j) {
      REQUIRE(by_kappa[j].alpha - by_kappa[j - 1].alpha >= 1e-12);
    }
  }
}
