#pragma once

#include <functional>

namespace fms {

struct RootResult {
  double x = 0.0;
  double residual = 0.0;
  int iterations = 0;
};

// Derivative-free root finding on a bracketing interval: secant steps
// whenever they stay inside the current bracket and shrink it, bisection
// otherwise. Stops when the bracket narrows below
// tol_abs + tol_rel * |midpoint| or |f| falls below f_tol; capped at
// max_iterations. Requires f(lo) and f(hi) of opposite sign (either order);
// throws fms::solver_error otherwise.
RootResult find_root(const std::function<double(double)>& f, double lo, double hi,
                     double f_tol = 1e-12, double tol_abs = 1e-13,
                     double tol_rel = 1e-13, int max_iterations = 200);

// Expands `hi` geometrically from `hi_start` by `factor` until f changes sign
// against f(lo), giving up above `cap`. Returns true and writes the bracket
// on success.
bool expand_bracket(const std::function<double(double)>& f, double lo,
                    double hi_start, double factor, double cap, double* hi_out);

}  // namespace fms
