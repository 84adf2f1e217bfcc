#include "fms/special_functions.hpp"

#include <cmath>

#include "fms/errors.hpp"

namespace fms::sf {

namespace {

// Lanczos approximation, g = 7, 9 coefficients (Godfrey's set). Valid for
// x >= 0.5; smaller arguments go through the reflection formula.
constexpr double kLanczosG = 7.0;
constexpr double kLanczos[9] = {
    0.99999999999980993,      676.5203681218851,     -1259.1392167224028,
    771.32342877765313,       -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,     9.9843695780195716e-6, 1.5056327351493116e-7,
};
constexpr double kHalfLogTwoPi = 0.91893853320467274178;  // log(2*pi)/2

double ln_gamma_lanczos(double x) {
  double acc = kLanczos[0];
  for (int i = 1; i < 9; ++i) {
    acc += kLanczos[i] / (x - 1.0 + static_cast<double>(i));
  }
  const double t = x + kLanczosG - 0.5;
  return kHalfLogTwoPi + (x - 0.5) * std::log(t) - t + std::log(acc);
}

// Asymptotic tail of psi(x), accurate to ~1e-14 for x >= 8.
double digamma_asymptotic(double x) {
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  // Bernoulli-number series: B2/2, B4/4, ... over x^{2n}.
  const double series =
      inv2 * (1.0 / 12.0 +
              inv2 * (-1.0 / 120.0 +
                      inv2 * (1.0 / 252.0 +
                              inv2 * (-1.0 / 240.0 +
                                      inv2 * (1.0 / 132.0 +
                                              inv2 * (-691.0 / 32760.0 +
                                                      inv2 * (1.0 / 12.0)))))));
  return std::log(x) - 0.5 * inv - series;
}

}  // namespace

double ln_gamma(double x) {
  if (!(x > 0.0)) {
    throw config_error("ln_gamma: argument must be positive");
  }
  if (x < 0.5) {
    // Reflection: log Gamma(x) = log(pi / sin(pi x)) - log Gamma(1 - x).
    const double pi = 3.14159265358979323846;
    return std::log(pi / std::sin(pi * x)) - ln_gamma_lanczos(1.0 - x);
  }
  return ln_gamma_lanczos(x);
}

double gamma_fn(double x) { return std::exp(ln_gamma(x)); }

double digamma(double x) {
  if (!(x > 0.0)) {
    throw config_error("digamma: argument must be positive");
  }
  double shift = 0.0;
  while (x < 8.0) {
    shift -= 1.0 / x;
    x += 1.0;
  }
  return digamma_asymptotic(x) + shift;
}

}  // namespace fms::sf
