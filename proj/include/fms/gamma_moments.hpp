#pragma once

#include <cstdint>

namespace fms {

// Method-of-moments estimation of the gamma shape parameter from a
// fractional moment: solves Gamma(alpha + theta) / Gamma(theta) = moment_mean
// for theta. The left side is strictly increasing in theta, so the root is
// unique; it is found by bracketed search on [1e-8, 1e8] with relative
// residual below 1e-10. Throws fms::input_error when no root exists in that
// range.
double gamma_shape_from_moment(double moment_mean, double alpha);

// Delta-method variance of the shape estimate from `dimension` samples:
//   (1/D) (Gamma(2a+t) Gamma(t) / Gamma^2(a+t) - 1) / (psi(a+t) - psi(t))^2.
double gamma_shape_variance(double theta, double alpha, std::uint64_t dimension);

}  // namespace fms
