#include "fms/log_functionals.hpp"

#include <algorithm>
#include <cmath>

#include "fms/errors.hpp"
#include "fms/estimators.hpp"
#include "fms/tail_bounds.hpp"

namespace fms {

double LogNormTailRates::right_probability(std::size_t k) const {
  return std::exp(-static_cast<double>(k) * right_rate);
}

double LogNormTailRates::left_probability(std::size_t k) const {
  return std::exp(-static_cast<double>(k) * left_rate);
}

double log_norm_from_moment(double moment, double alpha, std::uint64_t dimension) {
  if (dimension == 0) {
    throw input_error("log norm needs a positive dimension");
  }
  if (!(moment > 0.0)) {
    throw input_error("log norm transform needs a positive moment");
  }
  const double d = static_cast<double>(dimension);
  return d / alpha * std::log(moment / d);
}

namespace {

void check_log_functional_sketch(const Sketch& sketch, ProjectionKind expected) {
  if (sketch.config().kind != expected) {
    throw config_error(expected == ProjectionKind::Skewed
                           ? "log norm needs a skewed sketch"
                           : "log distance needs a symmetric sketch");
  }
  if (sketch.config().alpha.value() > kMaxLogFunctionalAlpha) {
    throw config_error("log functionals need a sketch with alpha <= 0.1");
  }
}

LogNormEstimate from_moment_estimate(const Estimate& moment, double alpha,
                                     std::uint64_t dimension) {
  if (moment.degenerate) {
    throw input_error(
        "degenerate moment estimate (zero accumulator); the signal is empty "
        "or violates the positivity assumption");
  }
  LogNormEstimate out;
  out.value = log_norm_from_moment(moment.value, alpha, dimension);
  out.alpha_used = alpha;
  out.dimension = dimension;
  return out;
}

}  // namespace

LogNormEstimate estimate_log_norm(const Sketch& sketch, std::uint64_t dimension,
                                  std::optional<double> epsilon) {
  check_log_functional_sketch(sketch, ProjectionKind::Skewed);
  const Estimate moment = estimate(sketch, EstimatorKind::HarmonicMeanCorrected);
  LogNormEstimate out =
      from_moment_estimate(moment, sketch.config().alpha.value(), dimension);
  if (epsilon.has_value()) {
    out.tail_rates = log_norm_tail_rates(sketch.config().alpha, *epsilon,
                                         dimension, moment.value);
  }
  return out;
}

LogNormEstimate estimate_log_distance(const Sketch& sketch, std::uint64_t dimension) {
  check_log_functional_sketch(sketch, ProjectionKind::Symmetric);
  const Estimate moment = estimate(sketch, EstimatorKind::SymmetricGeometricMean);
  return from_moment_estimate(moment, sketch.config().alpha.value(), dimension);
}

LogNormTailRates log_norm_tail_rates(MomentOrder alpha, double epsilon,
                                     std::uint64_t dimension, double f_alpha_hint) {
  if (dimension == 0 || !(f_alpha_hint > 0.0)) {
    throw input_error("tail rates need a positive dimension and moment");
  }
  if (!(epsilon >= 0.0)) {
    throw config_error("tail rates need epsilon >= 0");
  }
  if (epsilon == 0.0) {
    return LogNormTailRates{};  // no deviation, both bounds degenerate at 1
  }
  const TailBoundReport right = solve_hm_right(alpha, epsilon);
  const TailBoundReport left = solve_hm_left(alpha, std::min(epsilon, 1.0 - 1e-9));
  const double ratio = f_alpha_hint / static_cast<double>(dimension);
  const double right_dev = std::pow(ratio, epsilon) - 1.0;
  const double left_dev = 1.0 - std::pow(1.0 / ratio, epsilon);
  LogNormTailRates rates;
  rates.right_rate = right_dev * right_dev / right.g_constant;
  rates.left_rate = left_dev * left_dev / left.g_constant;
  return rates;
}

}  // namespace fms
