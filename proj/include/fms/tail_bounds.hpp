#pragma once

#include <cstddef>

#include "fms/moment_order.hpp"

namespace fms {

enum class TailSide { Right, Left };

// Which estimator's deviation bound is being solved. The geometric-mean
// bounds hold for the constant-normalized variant; the harmonic-mean bounds
// (alpha < 1) hold for the uncorrected harmonic mean.
enum class BoundEstimator { GeometricMeanAsymptotic, HarmonicMean };

// Solved Chernoff bound Pr(relative error beyond epsilon, one side)
//   <= exp(-k * exponent_rate), with exponent_rate = epsilon^2 / g_constant.
// `optimum` is the solved saddle point: C_R or C_L for the geometric mean,
// t1* or t2* for the harmonic mean.
struct TailBoundReport {
  double alpha = 0.0;
  double epsilon = 0.0;
  TailSide side = TailSide::Right;
  BoundEstimator estimator = BoundEstimator::GeometricMeanAsymptotic;
  double optimum = 0.0;
  double exponent_rate = 0.0;
  double g_constant = 0.0;
  // Left tail, alpha < 1 only: the saddle point grows like
  // exp(-log(1-eps)/delta) and can exceed the search cap; the report is then
  // evaluated at the cap, which still yields a valid (conservative) bound.
  bool capped = false;
};

// Geometric-mean bounds: optimality equations in C solved by bracketed
// bisection/secant with residual below 1e-10. Right side accepts any
// epsilon > 0; left side needs epsilon in (0, 1).
TailBoundReport solve_gm_right(MomentOrder alpha, double epsilon);
TailBoundReport solve_gm_left(MomentOrder alpha, double epsilon);

// Chernoff exponent of the geometric-mean bound evaluated at an arbitrary
// admissible point c (not necessarily the optimum). Every admissible c gives
// a valid bound; the solvers maximize these over c. Exposed for convexity
// checks and for capped left-tail reports.
double gm_right_exponent_at(MomentOrder alpha, double epsilon, double c);
double gm_left_exponent_at(MomentOrder alpha, double epsilon, double c);

// Closed-form small-delta approximations of the geometric-mean constants
// (right side; left side for alpha > 1; the alpha < 1 left constant decays
// like delta * exp(-log(1-eps)/delta)). Throws fms::out_of_regime when the
// expansion's denominator is not positive or not representable,
// i.e. roughly delta < log(1+eps)/4 on the right side.
double gm_rate_approx(MomentOrder alpha, double epsilon, TailSide side);

// Harmonic-mean bounds for alpha < 1, built on the moment generating
// function sum_m Gamma^m(1+alpha)/Gamma(1+m alpha) u^m.
TailBoundReport solve_hm_right(MomentOrder alpha, double epsilon);
TailBoundReport solve_hm_left(MomentOrder alpha, double epsilon);

// The series above and its derivative in u. Terms are added until they fall
// below 1e-16 of the partial sum, capped at 1e5 terms; divergence or
// catastrophic cancellation raises fms::solver_error.
double hm_mgf(MomentOrder alpha, double u);
double hm_mgf_derivative(MomentOrder alpha, double u);

// Projections needed for a (1 +/- epsilon)-accurate estimate with failure
// probability at most delta: k = ceil(G log(2/delta) / epsilon^2) with
// G = max(G_right, G_left), floored at 2.
struct SamplePlan {
  double alpha = 0.0;
  double epsilon = 0.0;
  double delta = 0.0;
  double g_constant = 0.0;
  std::size_t k = 0;
};

SamplePlan plan_samples(MomentOrder alpha, double epsilon, double delta,
                        BoundEstimator estimator);

}  // namespace fms
