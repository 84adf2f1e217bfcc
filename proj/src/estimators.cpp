#include "fms/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "fms/errors.hpp"
#include "fms/special_functions.hpp"

namespace fms {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Sum of log|x_j|, accumulated in sorted order so that the estimate is an
// exactly symmetric function of the samples. Sets `degenerate` when a sample
// is exactly zero.
double log_abs_sum(std::span<const double> samples, bool* degenerate) {
  *degenerate = false;
  std::vector<double> logs;
  logs.reserve(samples.size());
  for (double x : samples) {
    if (x == 0.0) {
      *degenerate = true;
      return 0.0;
    }
    logs.push_back(std::log(std::fabs(x)));
  }
  std::sort(logs.begin(), logs.end());
  double sum = 0.0;
  for (double v : logs) sum += v;
  return sum;
}

void check_sample_count(std::span<const double> samples) {
  if (samples.size() < 2) {
    throw config_error("estimators need at least 2 samples");
  }
}

Estimate make_estimate(double value, EstimatorKind kind, MomentOrder alpha,
                       std::size_t k, double variance_factor, bool degenerate) {
  Estimate e;
  e.value = degenerate ? 0.0 : value;
  e.estimator = kind;
  e.alpha = alpha.value();
  e.k = k;
  e.stderr_asymptotic =
      degenerate ? 0.0 : e.value * std::sqrt(variance_factor / static_cast<double>(k));
  e.degenerate = degenerate;
  return e;
}

double hm_log_value(std::span<const double> samples, MomentOrder alpha,
                    bool* degenerate) {
  const double a = alpha.value();
  const std::size_t k = samples.size();
  // log sum exp over -alpha log|x_j|, in sorted order (symmetric function).
  *degenerate = false;
  std::vector<double> exponents;
  exponents.reserve(k);
  for (double x : samples) {
    if (x == 0.0) {
      *degenerate = true;
      return 0.0;
    }
    exponents.push_back(-a * std::log(std::fabs(x)));
  }
  std::sort(exponents.begin(), exponents.end());
  const double max_term = exponents.back();
  double scaled = 0.0;
  for (double e : exponents) {
    scaled += std::exp(e - max_term);
  }
  const double log_power_sum = max_term + std::log(scaled);
  return std::log(static_cast<double>(k)) + std::log(std::cos(a * kPi / 2.0)) -
         sf::ln_gamma(1.0 + a) - log_power_sum;
}

}  // namespace

double gm_log_denominator(MomentOrder alpha, std::size_t k) {
  if (k < 2) {
    throw config_error("gm denominator needs k >= 2");
  }
  const double a = alpha.value();
  const double kap = alpha.kappa();
  const double kd = static_cast<double>(k);
  const double core = std::log(2.0 / kPi) + std::log(std::sin(kPi * a / (2.0 * kd))) +
                      sf::ln_gamma(1.0 - 1.0 / kd) + sf::ln_gamma(a / kd);
  return kd * std::log(std::cos(kap * kPi / (2.0 * kd))) -
         std::log(std::cos(kap * kPi / 2.0)) + kd * core;
}

double gm_denominator(MomentOrder alpha, std::size_t k) {
  return std::exp(gm_log_denominator(alpha, k));
}

double gm_limit_factor(MomentOrder alpha, std::size_t k) {
  return std::exp(gm_log_denominator(alpha, k) +
                  std::log(std::cos(alpha.kappa() * kPi / 2.0)));
}

double sym_gm_log_denominator(MomentOrder alpha, std::size_t k) {
  if (k < 2) {
    throw config_error("sym gm denominator needs k >= 2");
  }
  const double a = alpha.value();
  const double kd = static_cast<double>(k);
  return kd * (std::log(2.0 / kPi) + std::log(std::sin(kPi * a / (2.0 * kd))) +
               sf::ln_gamma(1.0 - 1.0 / kd) + sf::ln_gamma(a / kd));
}

double variance_factor_gm(MomentOrder alpha) {
  const double a = alpha.value();
  const double kap = alpha.kappa();
  return kPi * kPi / 12.0 * (a * a + 2.0 - 3.0 * kap * kap);
}

double variance_factor_hm(MomentOrder alpha) {
  if (!alpha.below_one()) {
    throw unsupported_estimator("harmonic mean estimator requires alpha < 1");
  }
  const double a = alpha.value();
  return 2.0 * std::exp(2.0 * sf::ln_gamma(1.0 + a) - sf::ln_gamma(1.0 + 2.0 * a)) - 1.0;
}

double variance_factor_sym_gm(MomentOrder alpha) {
  const double a = alpha.value();
  return kPi * kPi / 12.0 * (a * a + 2.0);
}

Estimate estimate_gm(std::span<const double> samples, MomentOrder alpha) {
  check_sample_count(samples);
  const std::size_t k = samples.size();
  bool degenerate = false;
  const double lsum = log_abs_sum(samples, &degenerate);
  const double log_value =
      alpha.value() / static_cast<double>(k) * lsum - gm_log_denominator(alpha, k);
  return make_estimate(std::exp(log_value), EstimatorKind::GeometricMean, alpha, k,
                       variance_factor_gm(alpha), degenerate);
}

Estimate estimate_gm_b(std::span<const double> samples, MomentOrder alpha) {
  check_sample_count(samples);
  const std::size_t k = samples.size();
  bool degenerate = false;
  const double lsum = log_abs_sum(samples, &degenerate);
  const double log_value = sf::euler_gamma * (alpha.value() - 1.0) +
                           std::log(std::cos(alpha.kappa() * kPi / 2.0)) +
                           alpha.value() / static_cast<double>(k) * lsum;
  return make_estimate(std::exp(log_value), EstimatorKind::GeometricMeanAsymptotic,
                       alpha, k, variance_factor_gm(alpha), degenerate);
}

Estimate estimate_hm(std::span<const double> samples, MomentOrder alpha) {
  check_sample_count(samples);
  const double variance = variance_factor_hm(alpha);  // also validates alpha < 1
  bool degenerate = false;
  const double log_value = hm_log_value(samples, alpha, &degenerate);
  return make_estimate(std::exp(log_value), EstimatorKind::HarmonicMean, alpha,
                       samples.size(), variance, degenerate);
}

Estimate estimate_hm_c(std::span<const double> samples, MomentOrder alpha) {
  check_sample_count(samples);
  const double variance = variance_factor_hm(alpha);
  bool degenerate = false;
  const double log_value = hm_log_value(samples, alpha, &degenerate);
  const double correction = 1.0 - variance / static_cast<double>(samples.size());
  return make_estimate(std::exp(log_value) * correction,
                       EstimatorKind::HarmonicMeanCorrected, alpha, samples.size(),
                       variance, degenerate);
}

Estimate estimate_sym_gm(std::span<const double> samples, MomentOrder alpha) {
  check_sample_count(samples);
  const std::size_t k = samples.size();
  bool degenerate = false;
  const double lsum = log_abs_sum(samples, &degenerate);
  const double log_value =
      alpha.value() / static_cast<double>(k) * lsum - sym_gm_log_denominator(alpha, k);
  return make_estimate(std::exp(log_value), EstimatorKind::SymmetricGeometricMean,
                       alpha, k, variance_factor_sym_gm(alpha), degenerate);
}

Estimate estimate(const Sketch& sketch, EstimatorKind kind) {
  const bool symmetric_sketch = sketch.config().kind == ProjectionKind::Symmetric;
  const bool symmetric_estimator = kind == EstimatorKind::SymmetricGeometricMean;
  if (symmetric_sketch != symmetric_estimator) {
    throw unsupported_estimator(
        symmetric_sketch
            ? "symmetric sketches support only the symmetric geometric mean"
            : "the symmetric geometric mean needs a symmetric sketch");
  }
  const MomentOrder alpha = sketch.config().alpha;
  switch (kind) {
    case EstimatorKind::GeometricMean:
      return estimate_gm(sketch.samples(), alpha);
    case EstimatorKind::GeometricMeanAsymptotic:
      return estimate_gm_b(sketch.samples(), alpha);
    case EstimatorKind::HarmonicMean:
      return estimate_hm(sketch.samples(), alpha);
    case EstimatorKind::HarmonicMeanCorrected:
      return estimate_hm_c(sketch.samples(), alpha);
    case EstimatorKind::SymmetricGeometricMean:
      return estimate_sym_gm(sketch.samples(), alpha);
  }
  throw config_error("unknown estimator kind");
}

EstimatorKind default_estimator(MomentOrder alpha) {
  return alpha.below_one() ? EstimatorKind::HarmonicMeanCorrected
                           : EstimatorKind::GeometricMean;
}

}  // namespace fms
