#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "paretolab/closed_form.hpp"
#include "paretolab/dirichlet.hpp"
#include "paretolab/error.hpp"

using namespace paretolab;

namespace {

// Negative root of D = 1 for the mix (0.3, 0.2, 0.5), (0.3, 0.2, 0.2), kappa = 1.2,
// located by a dense scan of D on [-20, 20] (step 1e-4) and refined by
// 40-digit bisection.
constexpr double kTwoClassRho0 = -2.4706412461961352;

ErrorKind error_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::Io;
}

ClassMix random_mix(std::mt19937_64& rng, double kappa) {
  std::uniform_real_distribution<double> w(0.05, 1.0), g(0.02, 1.5);
  std::uniform_int_distribution<int> n(1, 4);
  std::vector<ClassEntry> entries(static_cast<std::size_t>(n(rng)));
  double total = 0.0;
  for (auto& e : entries) {
    e = {w(rng), w(rng), g(rng)};
    total += e.p + e.q;
  }
  for (auto& e : entries) {
    e.p /= total;
    e.q /= total;
  }
  return validate_mix(entries, kappa);
}

}  // namespace

TEST_CASE("validate_mix") {
  CHECK(error_of([] { validate_mix({}, 1.2); }) == ErrorKind::OutOfRange);
  CHECK(error_of([] { validate_mix({{-0.1, 1.1, 0.5}}, 1.2); }) == ErrorKind::OutOfRange);
  CHECK(error_of([] { validate_mix({{0.6, 0.4, 0.0}}, 1.2); }) == ErrorKind::OutOfRange);
  CHECK(error_of([] { validate_mix({{0.6, 0.3, 0.5}}, 1.2); }) == ErrorKind::OutOfRange);
  CHECK(error_of([] { validate_mix({{0.6, 0.4, 0.5}}, 0.9); }) == ErrorKind::OutOfRange);
  CHECK(error_of([] { validate_mix({{NAN, 0.4, 0.5}}, 1.2); }) == ErrorKind::NonFinite);
  CHECK(validate_mix({{0.3, 0.2, 0.5}, {0.3, 0.2, 0.2}}, 1.2).entries().size() == 2);
}

TEST_CASE("single class reduces to the characteristic quadratic") {
  // D(rho) * y = a y^2 + b with y = exp(rho lambda), so D = 1 iff a y^2 - y + b = 0.
  const auto params = validate_params(0.6, 0.5, 1.2);
  const auto mix = single_class(params);
  const auto c = oracle::coeffs(0.6, 0.5, 1.2);
  for (double rho : {-3.0, -2.0, -0.5, 0.0, 0.7, 2.5}) {
    const double y = std::exp(rho * c.lambda);
    CHECK(characteristic_value(mix, rho) * y == doctest::Approx(c.a * y * y + c.b).epsilon(1e-14));
  }
  CHECK(std::abs(characteristic_value(mix, -2.124008910494829) - 1.0) <= 1e-12);
}

TEST_CASE("D grows without bound in both directions") {
  const auto mix = validate_mix({{0.3, 0.2, 0.5}, {0.3, 0.2, 0.2}}, 1.2);
  CHECK(characteristic_value(mix, -60.0) > 1e6);
  CHECK(characteristic_value(mix, 60.0) > 1e3);
}

TEST_CASE("find_tail_root examples") {
  SUBCASE("single class matches the closed form") {
    const auto params = validate_params(0.6, 0.5, 1.2);
    const auto root = find_tail_root(single_class(params));
    CHECK(std::abs(root.alpha - pareto_exponent(params).alpha) <= 1e-10);
    CHECK(root.certificate <= 1e-12);
  }
  SUBCASE("two incommensurate classes") {
    const auto mix = validate_mix({{0.3, 0.2, 0.5}, {0.3, 0.2, 0.2}}, 1.2);
    const auto root = find_tail_root(mix);
    CHECK(root.rho0 < 0.0);
    CHECK(root.certificate <= 1e-12);
    CHECK(std::abs(characteristic_value(mix, root.rho0) - 1.0) <= 1e-12);
    CHECK(root.rho0 == doctest::Approx(kTwoClassRho0).epsilon(1e-12));
    REQUIRE(root.rho_upper.has_value());
    CHECK(*root.rho_upper > root.rho_min);
  }
  SUBCASE("balanced mix at kappa = 1 has only a double root") {
    // p_i = q_i and kappa = 1: D(-1) = 1 is the minimum of D.
    const auto mix = validate_mix({{0.25, 0.25, 0.5}, {0.25, 0.25, 0.2}}, 1.0);
    CHECK(std::abs(characteristic_value(mix, -1.0) - 1.0) <= 1e-15);
    CHECK(error_of([&] { find_tail_root(mix); }) == ErrorKind::NoRoot);
  }
  SUBCASE("a sum bounded below by 1 has no root") {
    // 2 cosh(rho) >= 2.
    const DirichletPolynomial d({{1.0, 1.0}, {1.0, -1.0}});
    CHECK(error_of([&] { find_unit_root(d); }) == ErrorKind::NoRoot);
  }
  SUBCASE("both roots positive") {
    // 0.8 cosh(rho - 3) = 1 at rho = 3 -+ acosh(1.25).
    const DirichletPolynomial d({{0.4 * std::exp(-3.0), 1.0}, {0.4 * std::exp(3.0), -1.0}});
    CHECK(error_of([&] { find_unit_root(d); }) == ErrorKind::NoNegativeRoot);
  }
  SUBCASE("no crossing on the decaying side") {
    const DirichletPolynomial d({{0.5, 1.0}});
    CHECK(error_of([&] { find_unit_root(d); }) == ErrorKind::NoNegativeRoot);
  }
  SUBCASE("wins only: a single root below -1") {
    const auto mix = validate_mix({{1.0, 0.0, 0.5}}, 1.2);
    const auto root = find_tail_root(mix);
    CHECK(root.rho0 == doctest::Approx(-1.0 - std::log(1.2) / std::log(1.5)).epsilon(1e-12));
  }
}

TEST_CASE("symmetric mixes at kappa = 1 satisfy D(-1) = 1") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> w(0.05, 1.0), g(0.02, 1.5);
  for (int i = 0; i < 100; ++i) {
    std::vector<ClassEntry> e(3);
    double total = 0.0;
    for (auto& c : e) {
      c.p = c.q = w(rng);
      c.gamma = g(rng);
      total += 2.0 * c.p;
    }
    for (auto& c : e) c.p = c.q = c.p / total;
    const auto mix = validate_mix(e, 1.0);
    REQUIRE(std::abs(characteristic_value(mix, -1.0) - 1.0) <= 1e-12);
  }
}

TEST_CASE("reduction, convexity and certificates over random inputs") {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> up(0.51, 0.99), ug(0.01, 2.0), uk(1.0, 3.0);
  for (int i = 0; i < 1000; ++i) {
    const auto params = validate_params(up(rng), ug(rng), uk(rng));
    const auto root = find_tail_root(single_class(params));
    REQUIRE(std::abs(root.alpha - pareto_exponent(params).alpha) <= 1e-10);
    REQUIRE(root.certificate <= 1e-12);
  }
  std::uniform_real_distribution<double> urho(-6.0, 4.0), ukappa(1.01, 2.5);
  for (int i = 0; i < 500; ++i) {
    const auto mix = random_mix(rng, ukappa(rng));
    for (int j = 0; j < 10; ++j) {
      const double r1 = urho(rng), r2 = urho(rng);
      const double mid = characteristic_value(mix, 0.5 * (r1 + r2));
      const double chord = 0.5 * (characteristic_value(mix, r1) + characteristic_value(mix, r2));
      REQUIRE(mid <= chord + 1e-12 * std::max(1.0, chord));
    }
    const auto root = find_tail_root(mix);
    REQUIRE(root.rho0 < 0.0);
    REQUIRE(root.certificate <= 1e-12);
  }
}
