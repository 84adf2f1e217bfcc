#pragma once

namespace fms::sf {

// Euler-Mascheroni constant.
inline constexpr double euler_gamma = 0.5772156649015329;

// log(Gamma(x)) for x > 0. Relative error below 1e-12 on [1e-6, 1e6].
// Throws fms::config_error for x <= 0.
double ln_gamma(double x);

// Gamma(x) for x > 0, computed as exp(ln_gamma(x)).
double gamma_fn(double x);

// Digamma psi(x) = Gamma'(x)/Gamma(x) for x > 0. Absolute error below 1e-10
// on [1e-6, 1e6]. Throws fms::config_error for x <= 0.
double digamma(double x);

}  // namespace fms::sf
