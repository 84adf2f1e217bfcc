#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "fms/keyed_rng.hpp"
#include "fms/moment_order.hpp"

namespace fms {

// Generator of standard stable variates S(alpha, beta, 1) with beta fixed to
// 1 (Skewed) or 0 (Symmetric), parameterized so that the characteristic
// function is exp(-|t|^alpha (1 - i beta sign(t) tan(pi alpha / 2))).
//
// Uses the Chambers-Mallows-Stuck transform of one uniform angle in
// (-pi/2, pi/2) and one unit exponential. All shape constants are
// precomputed; transform() is reentrant and allocation-free.
class StableSampler {
 public:
  StableSampler(MomentOrder alpha, ProjectionKind kind)
      : alpha_(alpha.value()),
        inv_alpha_(1.0 / alpha.value()),
        exp_ratio_((1.0 - alpha.value()) / alpha.value()),
        kind_(kind) {
    constexpr double pi = 3.14159265358979323846;
    if (kind == ProjectionKind::Skewed) {
      // arctan(tan(pi a / 2)) / a reduced to its closed form per branch.
      tilt_ = alpha_ < 1.0 ? pi / 2.0 : pi / 2.0 - pi / alpha_;
      scale_ = std::pow(std::cos(alpha.kappa() * pi / 2.0), -inv_alpha_);
    } else {
      tilt_ = 0.0;
      scale_ = 1.0;
    }
  }

  // CMS transform. `angle` must lie in (-pi/2, pi/2), `expo` must be a
  // positive unit-exponential draw.
  double transform(double angle, double expo) const {
    const double shifted = alpha_ * (angle + tilt_);
    const double log_cos_u = std::log(std::cos(angle));
    const double log_w = std::log(std::cos(angle - shifted) / expo);
    double log_magnitude = exp_ratio_ * log_w - inv_alpha_ * log_cos_u;
    // Near alpha = 0 the tails are so heavy that ~1e-3 of draws would leave
    // the double range and poison accumulators with inf/0. Capping the log
    // magnitude keeps them finite; the induced bias on the fractional
    // moments the estimators consume is below 1e-5 relative.
    log_magnitude = std::clamp(log_magnitude, -690.0, 690.0);
    return scale_ * std::sin(shifted) * std::exp(log_magnitude);
  }

  // Deterministic projection entry r[row, column]: the same arguments always
  // reproduce the same value, so the D x k matrix never has to be stored.
  double entry(Seed seed, std::uint64_t row, std::uint64_t column) const {
    return entry_from_row_digest(rng::row_key(rng::stream_key(seed), row), column);
  }

  // Same as entry() with the per-row digest hoisted out of the column loop.
  double entry_from_row_digest(std::uint64_t row_digest, std::uint64_t column) const {
    constexpr double pi = 3.14159265358979323846;
    rng::CellRng cell(rng::cell_state(row_digest, column));
    const double angle = pi * (cell.next_unit_open() - 0.5);
    const double expo = -std::log(cell.next_unit_open());
    return transform(angle, expo);
  }

  ProjectionKind kind() const { return kind_; }
  double alpha() const { return alpha_; }

 private:
  double alpha_;
  double inv_alpha_;
  double exp_ratio_;
  double tilt_;   // skew shift of the angle
  double scale_;  // cos(kappa pi / 2)^(-1/alpha) for the skewed law
  ProjectionKind kind_;
};

}  // namespace fms
