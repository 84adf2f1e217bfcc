#pragma once

#include <cstdint>
#include <optional>

#include "fms/moment_order.hpp"
#include "fms/sketch.hpp"

namespace fms {

// Moment-domain deviation rates of the transformed tail bounds:
// Pr(overshoot by factor 1+eps)  <= exp(-k * right_rate) and
// Pr(undershoot by factor 1-eps) <= exp(-k * left_rate). The deviations are
// expressed in the moment domain, ((F/D)^eps - 1)^2 and (1 - (D/F)^eps)^2
// over the harmonic-mean constants; they cannot be rewritten in terms of the
// log norm itself.
struct LogNormTailRates {
  double right_rate = 0.0;
  double left_rate = 0.0;

  double right_probability(std::size_t k) const;
  double left_probability(std::size_t k) const;
};

// Approximation of sum_i log(signal[i]) (all entries strictly positive) or
// of sum_i log|a[i] - b[i]| via the small-alpha moment transform. Tail rates
// are attached when an epsilon is supplied at estimation time.
struct LogNormEstimate {
  double value = 0.0;
  double alpha_used = 0.0;
  std::uint64_t dimension = 0;
  std::optional<LogNormTailRates> tail_rates;
};

inline constexpr double kMaxLogFunctionalAlpha = 0.1;
inline constexpr double kDefaultLogFunctionalAlpha = 0.01;

// (dimension / alpha) * log(moment / dimension). The transform error decays
// linearly in alpha on a fixed signal. Throws fms::input_error when the
// moment is not positive.
double log_norm_from_moment(double moment, double alpha, std::uint64_t dimension);

// Log norm from a skewed small-alpha sketch: plugs the harmonic-mean
// (corrected) moment estimate into the transform. `dimension` must be the
// number of (strictly positive) signal entries; the sketch cannot know it.
// With `epsilon` given, the transformed tail rates (computed at the moment
// estimate itself) are attached to the result.
LogNormEstimate estimate_log_norm(const Sketch& sketch, std::uint64_t dimension,
                                  std::optional<double> epsilon = std::nullopt);

// Log distance from a symmetric small-alpha sketch of the difference stream
// (ingest one stream as-is and the other with negated increments). Uses the
// symmetric geometric mean. All differences must be nonzero; an all-zero
// difference signal surfaces as a degenerate moment of 0.
LogNormEstimate estimate_log_distance(const Sketch& sketch, std::uint64_t dimension);

// Tail rates for the transformed estimate given a moment value F_alpha
// (typically the estimate itself). Requires alpha < 1 for the harmonic-mean
// constants.
LogNormTailRates log_norm_tail_rates(MomentOrder alpha, double epsilon,
                                     std::uint64_t dimension, double f_alpha_hint);

}  // namespace fms
