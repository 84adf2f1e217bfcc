#include "fms/root_finding.hpp"

#include <algorithm>
#include <cmath>

#include "fms/errors.hpp"

namespace fms {

RootResult find_root(const std::function<double(double)>& f, double lo, double hi,
                     double f_tol, double tol_abs, double tol_rel,
                     int max_iterations) {
  double f_lo = f(lo);
  double f_hi = f(hi);
  if (f_lo == 0.0) return {lo, 0.0, 0};
  if (f_hi == 0.0) return {hi, 0.0, 0};
  if (std::signbit(f_lo) == std::signbit(f_hi)) {
    throw solver_error("root not bracketed");
  }
  double x = lo;
  double fx = f_lo;
  for (int it = 1; it <= max_iterations; ++it) {
    double candidate;
    const double denom = f_hi - f_lo;
    if (denom != 0.0) {
      candidate = hi - f_hi * (hi - lo) / denom;  // secant through the bracket
    } else {
      candidate = 0.5 * (lo + hi);
    }
    const double width = hi - lo;
    // Fall back to bisection when the secant point hugs an endpoint; this
    // keeps worst-case convergence geometric.
    if (!(candidate > lo + 0.01 * width) || !(candidate < hi - 0.01 * width)) {
      candidate = 0.5 * (lo + hi);
    }
    x = candidate;
    fx = f(x);
    if (fx == 0.0 || std::fabs(fx) <= f_tol) {
      return {x, fx, it};
    }
    if (std::signbit(fx) == std::signbit(f_lo)) {
      lo = x;
      f_lo = fx;
    } else {
      hi = x;
      f_hi = fx;
    }
    if (hi - lo <= tol_abs + tol_rel * std::fabs(0.5 * (lo + hi))) {
      // Report the endpoint with the smaller residual.
      if (std::fabs(f_lo) < std::fabs(fx)) {
        return {lo, f_lo, it};
      }
      if (std::fabs(f_hi) < std::fabs(fx)) {
        return {hi, f_hi, it};
      }
      return {x, fx, it};
    }
  }
  return {x, fx, max_iterations};
}

bool expand_bracket(const std::function<double(double)>& f, double lo,
                    double hi_start, double factor, double cap, double* hi_out) {
  const bool lo_negative = std::signbit(f(lo));
  double hi = hi_start;
  while (true) {
    const double f_hi = f(hi);
    if (f_hi == 0.0 || std::signbit(f_hi) != lo_negative) {
      *hi_out = hi;
      return true;
    }
    if (hi >= cap) {
      return false;
    }
    hi = std::min(hi * factor, cap);  // the cap itself is always probed
  }
}

}  // namespace fms
