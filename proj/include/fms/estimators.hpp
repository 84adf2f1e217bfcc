#pragma once

#include <cstddef>
#include <span>

#include "fms/moment_order.hpp"
#include "fms/sketch.hpp"

namespace fms {

enum class EstimatorKind {
  GeometricMean,            // unbiased at every k >= 2
  GeometricMeanAsymptotic,  // constant-normalized variant used by tail bounds
  HarmonicMean,             // alpha < 1
  HarmonicMeanCorrected,    // alpha < 1, bias O(1/k^2)
  SymmetricGeometricMean,   // symmetric projections (signed data)
};

// Point estimate of the alpha-th frequency moment from k projection samples.
// stderr_asymptotic is value * sqrt(V / k) using the leading-order variance
// factor V of the estimator. A degenerate estimate (some sample exactly zero,
// which has probability zero for any nonempty signal) reports value 0.
struct Estimate {
  double value = 0.0;
  EstimatorKind estimator = EstimatorKind::GeometricMean;
  double alpha = 0.0;
  std::size_t k = 0;
  double stderr_asymptotic = 0.0;
  bool degenerate = false;
};

// Normalizer of the geometric mean estimator,
//   D_gm = (cos^k(kappa pi/2k) / cos(kappa pi/2))
//          * [(2/pi) sin(pi alpha/2k) Gamma(1-1/k) Gamma(alpha/k)]^k,
// evaluated in log space. Requires k >= 2.
double gm_log_denominator(MomentOrder alpha, std::size_t k);
double gm_denominator(MomentOrder alpha, std::size_t k);

// The k-th power factor
//   [cos(kappa pi/2k) (2/pi) Gamma(alpha/k) Gamma(1-1/k) sin(pi alpha/2k)]^k,
// which decreases monotonically in k toward exp(-euler_gamma (alpha-1)).
// Equals gm_denominator * cos(kappa pi / 2).
double gm_limit_factor(MomentOrder alpha, std::size_t k);

// Normalizer of the symmetric-projection geometric mean,
//   D_sym = [(2/pi) sin(pi alpha/2k) Gamma(1-1/k) Gamma(alpha/k)]^k.
double sym_gm_log_denominator(MomentOrder alpha, std::size_t k);

// Leading-order variance factors V in Var = V F^2 / k + O(1/k^2).
double variance_factor_gm(MomentOrder alpha);      // (pi^2/12)(alpha^2+2-3 kappa^2)
double variance_factor_hm(MomentOrder alpha);      // 2 Gamma^2(1+a)/Gamma(1+2a) - 1; a < 1
double variance_factor_sym_gm(MomentOrder alpha);  // (pi^2/12)(alpha^2+2)

// Estimators over raw samples. The caller is responsible for the projection
// kind matching (skewed for gm/gm_b/hm/hm_c, symmetric for sym_gm); the
// Sketch-level overload checks it.
Estimate estimate_gm(std::span<const double> samples, MomentOrder alpha);
Estimate estimate_gm_b(std::span<const double> samples, MomentOrder alpha);
Estimate estimate_hm(std::span<const double> samples, MomentOrder alpha);
Estimate estimate_hm_c(std::span<const double> samples, MomentOrder alpha);
Estimate estimate_sym_gm(std::span<const double> samples, MomentOrder alpha);

// Dispatch with projection-kind validation. GeometricMean* and HarmonicMean*
// require a Skewed sketch, SymmetricGeometricMean a Symmetric one.
Estimate estimate(const Sketch& sketch, EstimatorKind kind);

// Recommended default: harmonic mean (corrected) below alpha = 1, geometric
// mean above.
EstimatorKind default_estimator(MomentOrder alpha);

}  // namespace fms
