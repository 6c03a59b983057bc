#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "paretolab/error.hpp"
#include "paretolab/model.hpp"

using namespace paretolab;

namespace {

ErrorKind kind_of(double p, double g, double k) {
  try {
    validate_params(p, g, k);
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::Io;
}

}  // namespace

TEST_CASE("validate_params accepts the usual regime without warning") {
  const auto params = validate_params(0.6, 0.5, 1.2);
  CHECK(params.p() == 0.6);
  CHECK(params.gamma() == 0.5);
  CHECK(params.kappa() == 1.2);
  CHECK_FALSE(params.low_p_warning());
}

TEST_CASE("p <= 1/2 is allowed with a warning") {
  CHECK(validate_params(0.4, 0.5, 1.0).low_p_warning());
  CHECK(validate_params(0.5, 0.5, 1.0).low_p_warning());
}

TEST_CASE("out-of-range and non-finite inputs are rejected") {
  CHECK(kind_of(0.6, 0.5, 0.9) == ErrorKind::OutOfRange);
  CHECK(kind_of(0.0, 0.5, 1.2) == ErrorKind::OutOfRange);
  CHECK(kind_of(1.0, 0.5, 1.2) == ErrorKind::OutOfRange);
  CHECK(kind_of(1.2, 0.5, 1.2) == ErrorKind::OutOfRange);
  CHECK(kind_of(0.6, 0.0, 1.2) == ErrorKind::OutOfRange);
  CHECK(kind_of(0.6, -1.0, 1.2) == ErrorKind::OutOfRange);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double inf = std::numeric_limits<double>::infinity();
  CHECK(kind_of(nan, 0.5, 1.2) == ErrorKind::NonFinite);
  CHECK(kind_of(0.6, inf, 1.2) == ErrorKind::NonFinite);
  CHECK(kind_of(0.6, 0.5, inf) == ErrorKind::NonFinite);
}

TEST_CASE("derive_coefficients by direct substitution") {
  const auto c = derive_coefficients(validate_params(0.6, 0.5, 1.2));
  CHECK(c.a == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(c.b == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(c.lambda == doctest::Approx(std::log(1.5)).epsilon(1e-15));

  // p = 1/2, kappa = 1 is the one point where the discriminant vanishes.
  const auto d = derive_coefficients(validate_params(0.5, 1.0, 1.0));
  CHECK(d.a == 1.0);
  CHECK(d.b == 0.25);
  CHECK(d.discriminant == 0.0);
}

TEST_CASE("coefficient invariants over random parameters") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> up(0.01, 0.99), ug(0.001, 3.0), uk(1.0, 5.0);
  for (int i = 0; i < 10000; ++i) {
    const double p = up(rng), g = ug(rng), k = uk(rng);
    const auto c = derive_coefficients(validate_params(p, g, k));
    REQUIRE(c.lambda > 0.0);
    REQUIRE(c.a > 0.0);
    REQUIRE(c.b > 0.0);
    const double expected = p * (1.0 - p) / (k * k);
    REQUIRE(std::abs(c.a * c.b - expected) <= 1e-14 * expected);
    REQUIRE(c.discriminant > 0.0);
    REQUIRE(std::abs(c.discriminant - (1.0 - 4.0 * c.a * c.b)) <= 1e-14);
  }
}
