#include "fms/tail_bounds.hpp"

#include <cmath>
#include <string>

#include "fms/errors.hpp"
#include "fms/root_finding.hpp"
#include "fms/special_functions.hpp"

namespace fms {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kResidualTol = 1e-10;
constexpr double kLeftSearchCap = 1.0686474581524463e13;  // exp(30)

double cot(double x) { return std::cos(x) / std::sin(x); }

// Saddle-point equation of the right geometric-mean bound; decreasing in c
// on (0, 1) from log(1+eps) toward -infinity.
double gm_right_equation(MomentOrder alpha, double epsilon, double c) {
  const double a = alpha.value();
  const double kap = alpha.kappa();
  return -sf::euler_gamma * (a - 1.0) + std::log1p(epsilon) +
         (kap * kPi / 2.0) * std::tan(kap * kPi * c / 2.0) -
         (a * kPi / 2.0) * cot(a * kPi * c / 2.0) - a * sf::digamma(a * c) +
         sf::digamma(1.0 - c);
}

// Saddle-point equation of the left bound. For alpha < 1 the two tangent
// terms cancel exactly (kappa == alpha), which also removes their
// singularities from the search range.
double gm_left_equation(MomentOrder alpha, double epsilon, double c) {
  const double a = alpha.value();
  double v = std::log1p(-epsilon) - sf::euler_gamma * (a - 1.0) -
             a * sf::digamma(a * c) + sf::digamma(c);
  if (a > 1.0) {
    const double kap = alpha.kappa();
    v += -(kap * kPi / 2.0) * std::tan(kap * kPi * c / 2.0) +
         (a * kPi / 2.0) * std::tan(a * kPi * c / 2.0);
  }
  return v;
}

TailBoundReport make_report(MomentOrder alpha, double epsilon, TailSide side,
                            BoundEstimator estimator, double optimum, double rate,
                            bool capped = false) {
  if (!(rate > 0.0)) {
    throw solver_error("tail bound exponent came out non-positive");
  }
  TailBoundReport r;
  r.alpha = alpha.value();
  r.epsilon = epsilon;
  r.side = side;
  r.estimator = estimator;
  r.optimum = optimum;
  r.exponent_rate = rate;
  r.g_constant = epsilon * epsilon / rate;
  r.capped = capped;
  return r;
}

void check_residual(double residual, const char* what) {
  if (!(std::fabs(residual) <= kResidualTol)) {
    throw solver_error(std::string(what) + ": residual " +
                       std::to_string(residual) + " exceeds tolerance");
  }
}

// ---- harmonic-mean moment generating function ----

struct SeriesEval {
  double value = 0.0;  // mgf(u) - 1 resp. mgf'(u)
  double max_term = 0.0;
  int terms = 0;
  bool converged = false;
};

constexpr int kSeriesCap = 100000;

// sum_{m>=1} c_m u^m (derivative = false; the m = 0 term is exactly 1 and is
// left to the caller so that log1p stays accurate near u = 0) or
// sum_{m>=1} m c_m u^{m-1} (derivative = true), with
// c_m = Gamma(1+a)^m / Gamma(1+m a) built by the ratio recurrence
// c_m / c_{m-1} = Gamma(1+a) Gamma(1+(m-1)a) / Gamma(1+m a).
SeriesEval hm_series(double a, double u, bool derivative) {
  SeriesEval out;
  const double log_gamma_1a = sf::ln_gamma(1.0 + a);
  double term = derivative ? 1.0 : u;  // m = 1 term; c_1 = 1
  double sum = term;
  double compensation = 0.0;
  double prev_ln_gamma = log_gamma_1a;  // lnGamma(1 + m a) at m = 1
  const double scale_offset = derivative ? 0.0 : 1.0;  // implicit m = 0 term
  out.max_term = std::fabs(term);
  int m = 1;
  while (++m <= kSeriesCap) {
    const double ln_gamma_m = sf::ln_gamma(1.0 + m * a);
    double ratio = u * std::exp(log_gamma_1a + prev_ln_gamma - ln_gamma_m);
    if (derivative) {
      ratio *= static_cast<double>(m) / static_cast<double>(m - 1);
    }
    prev_ln_gamma = ln_gamma_m;
    term *= ratio;
    // Neumaier-compensated accumulation; the alternating case cancels hard.
    const double t = sum + term;
    if (std::fabs(sum) >= std::fabs(term)) {
      compensation += (sum - t) + term;
    } else {
      compensation += (term - t) + sum;
    }
    sum = t;
    out.max_term = std::max(out.max_term, std::fabs(term));
    if (!std::isfinite(sum) || !std::isfinite(term)) {
      break;  // overflowed; report as non-convergent
    }
    if (m >= 4 &&
        std::fabs(term) <= 1e-16 * (scale_offset + std::fabs(sum))) {
      out.converged = true;
      break;
    }
  }
  out.value = sum + compensation;
  out.terms = m;
  return out;
}

// mgf(u) - 1, with convergence and cancellation guards.
double checked_series_minus_one(MomentOrder alpha, double u) {
  const SeriesEval eval = hm_series(alpha.value(), u, false);
  if (!eval.converged || !std::isfinite(eval.value)) {
    throw solver_error("harmonic-mean series did not converge within the term cap");
  }
  if (eval.max_term > 1e12 * (1.0 + std::fabs(eval.value))) {
    throw solver_error(
        "harmonic-mean series lost precision to cancellation at u = " +
        std::to_string(u));
  }
  return eval.value;
}

double checked_series_derivative(MomentOrder alpha, double u) {
  const SeriesEval eval = hm_series(alpha.value(), u, true);
  if (!eval.converged || !std::isfinite(eval.value)) {
    throw solver_error("harmonic-mean series did not converge within the term cap");
  }
  if (eval.max_term > 1e12 * std::fabs(eval.value)) {
    throw solver_error(
        "harmonic-mean series lost precision to cancellation at u = " +
        std::to_string(u));
  }
  return eval.value;
}

TailBoundReport solve_hm(MomentOrder alpha, double epsilon, TailSide side) {
  if (!alpha.below_one()) {
    throw unsupported_estimator("harmonic-mean tail bounds require alpha < 1");
  }
  if (side == TailSide::Right ? !(epsilon > 0.0)
                              : !(epsilon > 0.0 && epsilon < 1.0)) {
    throw config_error("epsilon out of range for the requested tail");
  }
  const double sign = side == TailSide::Right ? -1.0 : 1.0;
  const double target = side == TailSide::Right ? 1.0 / (1.0 + epsilon)
                                                : 1.0 / (1.0 - epsilon);
  // log-derivative of the MGF along the relevant direction, minus its target;
  // monotone by convexity of the cumulant.
  auto equation = [&](double t) {
    const double u = sign * t;
    return checked_series_derivative(alpha, u) /
               (1.0 + checked_series_minus_one(alpha, u)) -
           target;
  };
  double lo = 1e-12;
  double f_lo = equation(lo);
  double hi = 1.0;
  bool bracketed = false;
  while (hi <= 1e8) {
    double f_hi;
    try {
      f_hi = equation(hi);
    } catch (const solver_error&) {
      break;  // series unusable this far out; the root, if any, is below
    }
    if (f_hi == 0.0 || std::signbit(f_hi) != std::signbit(f_lo)) {
      bracketed = true;
      break;
    }
    lo = hi;
    f_lo = f_hi;
    hi *= 2.0;
  }
  if (!bracketed) {
    throw solver_error("harmonic-mean saddle point not bracketed in evaluable range");
  }
  const RootResult root = find_root(equation, lo, hi);
  check_residual(root.residual, "harmonic-mean saddle equation");
  // Legendre-transform exponent sup_u (u y - log mgf(u)) at y = target;
  // log1p keeps the small-epsilon cancellation under control.
  const double u = sign * root.x;
  const double log_mgf = std::log1p(checked_series_minus_one(alpha, u));
  const double rate = u * target - log_mgf;
  return make_report(alpha, epsilon, side, BoundEstimator::HarmonicMean, root.x,
                     rate);
}

}  // namespace

double gm_right_exponent_at(MomentOrder alpha, double epsilon, double c) {
  const double a = alpha.value();
  const double kap = alpha.kappa();
  if (!(c > 0.0 && c < 1.0)) {
    throw config_error("right exponent point must lie in (0, 1)");
  }
  const double log_moment = std::log(std::cos(kap * kPi * c / 2.0)) +
                            std::log(2.0 / kPi) + sf::ln_gamma(a * c) +
                            sf::ln_gamma(1.0 - c) +
                            std::log(std::sin(kPi * a * c / 2.0));
  return c * std::log1p(epsilon) - c * sf::euler_gamma * (a - 1.0) - log_moment;
}

double gm_left_exponent_at(MomentOrder alpha, double epsilon, double c) {
  const double a = alpha.value();
  if (!(c > 0.0) || (a > 1.0 && !(c < 1.0 / a))) {
    throw config_error("left exponent point outside the admissible range");
  }
  double v = -c * std::log1p(-epsilon) + c * sf::euler_gamma * (a - 1.0) +
             std::log(a) - sf::ln_gamma(c) + sf::ln_gamma(a * c);
  if (a > 1.0) {
    const double kap = alpha.kappa();
    v += std::log(std::cos(kPi * a * c / 2.0)) -
         std::log(std::cos(kap * kPi * c / 2.0));
  }
  return v;
}

TailBoundReport solve_gm_right(MomentOrder alpha, double epsilon) {
  if (!(epsilon > 0.0)) {
    throw config_error("right tail bound needs epsilon > 0");
  }
  auto equation = [&](double c) { return gm_right_equation(alpha, epsilon, c); };
  // The equation decreases from log(1+eps) at 0+ to -infinity at 1-; nudge
  // the endpoints inward if roundoff flips their expected signs.
  double lo = 1e-9;
  while (lo < 1e-3 && !(equation(lo) > 0.0)) lo *= 10.0;
  double hi = 1.0 - 1e-9;
  while (hi > 1.0 - 1e-3 && !(equation(hi) < 0.0)) hi = 1.0 - 10.0 * (1.0 - hi);
  const RootResult root = find_root(equation, lo, hi);
  check_residual(root.residual, "right tail optimality equation");
  return make_report(alpha, epsilon, TailSide::Right,
                     BoundEstimator::GeometricMeanAsymptotic, root.x,
                     gm_right_exponent_at(alpha, epsilon, root.x));
}

TailBoundReport solve_gm_left(MomentOrder alpha, double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw config_error("left tail bound needs epsilon in (0, 1)");
  }
  auto equation = [&](double c) { return gm_left_equation(alpha, epsilon, c); };
  const double a = alpha.value();
  if (a > 1.0) {
    double lo = 1e-9;
    while (lo < 1e-3 && !(equation(lo) < 0.0)) lo *= 10.0;
    double hi = 1.0 / a - 1e-9 / a;
    while (hi > 1.0 / a * (1.0 - 1e-3) && !(equation(hi) > 0.0)) {
      hi = 1.0 / a - 10.0 * (1.0 / a - hi);
    }
    const RootResult root = find_root(equation, lo, hi);
    check_residual(root.residual, "left tail optimality equation");
    return make_report(alpha, epsilon, TailSide::Left,
                       BoundEstimator::GeometricMeanAsymptotic, root.x,
                       gm_left_exponent_at(alpha, epsilon, root.x));
  }
  // alpha < 1: the saddle point grows like exp(-log(1-eps)/delta), so the
  // bracket expands geometrically. Beyond the cap the bound at the cap is
  // still valid and already astronomically strong.
  double hi = 0.0;
  if (!expand_bracket(equation, 1e-9, 2.0, 2.0, kLeftSearchCap, &hi)) {
    return make_report(alpha, epsilon, TailSide::Left,
                       BoundEstimator::GeometricMeanAsymptotic, kLeftSearchCap,
                       gm_left_exponent_at(alpha, epsilon, kLeftSearchCap),
                       /*capped=*/true);
  }
  const RootResult root = find_root(equation, 1e-9, hi);
  check_residual(root.residual, "left tail optimality equation");
  return make_report(alpha, epsilon, TailSide::Left,
                     BoundEstimator::GeometricMeanAsymptotic, root.x,
                     gm_left_exponent_at(alpha, epsilon, root.x));
}

double gm_rate_approx(MomentOrder alpha, double epsilon, TailSide side) {
  const double delta = alpha.delta();
  if (side == TailSide::Right) {
    if (!(epsilon > 0.0)) {
      throw config_error("right tail approximation needs epsilon > 0");
    }
    const double l = std::log1p(epsilon);
    const double denom = l - 2.0 * std::sqrt(delta * l);
    if (!(denom > 0.0)) {
      throw out_of_regime(
          "small-delta right-tail expansion needs delta < log(1+eps)/4");
    }
    return epsilon * epsilon / denom;
  }
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw config_error("left tail approximation needs epsilon in (0, 1)");
  }
  const double m = -std::log1p(-epsilon);
  if (alpha.value() > 1.0) {
    const double denom = m - 2.0 * std::sqrt(2.0 * delta * m);
    if (!(denom > 0.0)) {
      throw out_of_regime(
          "small-delta left-tail expansion needs delta < -log(1-eps)/8");
    }
    return epsilon * epsilon / denom;
  }
  const double log_denom = std::log(delta) + (m / delta - 1.0 - sf::euler_gamma);
  if (log_denom > 700.0 || log_denom < -700.0) {
    throw out_of_regime("left-tail expansion not representable at this delta");
  }
  return epsilon * epsilon * std::exp(-log_denom);
}

TailBoundReport solve_hm_right(MomentOrder alpha, double epsilon) {
  return solve_hm(alpha, epsilon, TailSide::Right);
}

TailBoundReport solve_hm_left(MomentOrder alpha, double epsilon) {
  return solve_hm(alpha, epsilon, TailSide::Left);
}

double hm_mgf(MomentOrder alpha, double u) {
  if (!alpha.below_one()) {
    throw unsupported_estimator("harmonic-mean series requires alpha < 1");
  }
  return 1.0 + checked_series_minus_one(alpha, u);
}

double hm_mgf_derivative(MomentOrder alpha, double u) {
  if (!alpha.below_one()) {
    throw unsupported_estimator("harmonic-mean series requires alpha < 1");
  }
  return checked_series_derivative(alpha, u);
}

SamplePlan plan_samples(MomentOrder alpha, double epsilon, double delta,
                        BoundEstimator estimator) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw config_error("sample planning needs epsilon in (0, 1)");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw config_error("sample planning needs delta in (0, 1)");
  }
  TailBoundReport right, left;
  if (estimator == BoundEstimator::GeometricMeanAsymptotic) {
    right = solve_gm_right(alpha, epsilon);
    left = solve_gm_left(alpha, epsilon);
  } else {
    right = solve_hm_right(alpha, epsilon);
    left = solve_hm_left(alpha, epsilon);
  }
  const double g = std::max(right.g_constant, left.g_constant);
  const double k_real =
      std::ceil(g / (epsilon * epsilon) * std::log(2.0 / delta));
  SamplePlan plan;
  plan.alpha = alpha.value();
  plan.epsilon = epsilon;
  plan.delta = delta;
  plan.g_constant = g;
  plan.k = k_real < 2.0 ? 2 : static_cast<std::size_t>(k_real);
  return plan;
}

}  // namespace fms
