#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fms/errors.hpp"
#include "fms/gamma_moments.hpp"
#include "fms/special_functions.hpp"

using fms::gamma_shape_from_moment;
using fms::gamma_shape_variance;

namespace {

double exact_moment(double theta, double alpha) {
  return std::exp(fms::sf::ln_gamma(alpha + theta) - fms::sf::ln_gamma(theta));
}

}  // namespace

TEST_CASE("alpha = 1 reduces to the identity") {
  // Gamma(1 + t)/Gamma(t) = t.
  for (double m : {0.25, 1.0, 7.5, 1234.0}) {
    CHECK(gamma_shape_from_moment(m, 1.0) == doctest::Approx(m).epsilon(1e-10));
  }
}

TEST_CASE("alpha = 2 has a quadratic closed form") {
  // Gamma(2 + t)/Gamma(t) = t (t + 1).
  for (double m : {0.5, 2.0, 30.0}) {
    const double expected = (-1.0 + std::sqrt(1.0 + 4.0 * m)) / 2.0;
    CHECK(gamma_shape_from_moment(m, 2.0) == doctest::Approx(expected).epsilon(1e-9));
  }
}

TEST_CASE("round trip through the exact moment map") {
  for (double theta : {0.5, 1.0, 3.0, 10.0}) {
    for (double alpha : {0.5, 0.9, 1.0, 1.5}) {
      const double recovered = gamma_shape_from_moment(exact_moment(theta, alpha), alpha);
      CHECK(std::fabs(recovered - theta) <= 1e-8 * std::max(1.0, theta));
    }
  }
  // Shapes near the top of the bracketed search range still resolve.
  CHECK(gamma_shape_from_moment(5e7, 1.0) == doctest::Approx(5e7).epsilon(1e-8));
  // Reference value: Gamma(3.9)/Gamma(3) from 50-digit arithmetic.
  CHECK(exact_moment(3.0, 0.9) == doctest::Approx(2.6496648669048523).epsilon(1e-12));
  CHECK(gamma_shape_from_moment(2.6496648669048523, 0.9) ==
        doctest::Approx(3.0).epsilon(1e-9));
}

TEST_CASE("moment map is strictly increasing in theta") {
  for (double alpha : {0.5, 1.3}) {
    double previous = 0.0;
    for (double theta = 0.1; theta <= 50.0; theta *= 1.7) {
      const double m = exact_moment(theta, alpha);
      CHECK(m > previous);
      previous = m;
    }
  }
}

TEST_CASE("variance expression") {
  // theta = 2, alpha = 1, D = 1000: (Gamma(4)Gamma(2)/Gamma(3)^2 - 1) = 1/2
  // over (psi(3) - psi(2))^2 = 1/4, scaled by 1/1000 -> exactly 0.002.
  CHECK(gamma_shape_variance(2.0, 1.0, 1000) ==
        doctest::Approx(0.002).epsilon(1e-10));
  // Exact 1/D scaling.
  CHECK(gamma_shape_variance(2.0, 1.0, 2000) ==
        doctest::Approx(0.001).epsilon(1e-12));
  // Monotone increasing in alpha at fixed theta.
  double previous = 0.0;
  for (double alpha : {0.5, 1.0, 1.5, 2.0}) {
    const double v = gamma_shape_variance(2.0, alpha, 1000);
    CHECK(v > previous);
    previous = v;
  }
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(gamma_shape_from_moment(0.0, 1.0), fms::input_error);
  CHECK_THROWS_AS(gamma_shape_from_moment(-2.0, 1.0), fms::input_error);
  CHECK_THROWS_AS(gamma_shape_from_moment(1.0, 0.0), fms::config_error);
  // Outside the bracketed shape range.
  CHECK_THROWS_AS(gamma_shape_from_moment(1e-30, 1.0), fms::input_error);
  CHECK_THROWS_AS(gamma_shape_from_moment(1e100, 1.0), fms::input_error);
  CHECK_THROWS_AS(gamma_shape_variance(0.0, 1.0, 10), fms::config_error);
  CHECK_THROWS_AS(gamma_shape_variance(1.0, 1.0, 0), fms::config_error);
}
