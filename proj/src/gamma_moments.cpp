#include "fms/gamma_moments.hpp"

#include <cmath>

#include "fms/errors.hpp"
#include "fms/root_finding.hpp"
#include "fms/special_functions.hpp"

namespace fms {

namespace {

// log of the moment map theta -> Gamma(alpha + theta) / Gamma(theta);
// increasing in theta and overflow-free. Above theta = 1e4 the direct
// ln_gamma difference loses digits to cancellation (two ~theta log theta
// terms for a result of size alpha log theta), so the difference of the
// Stirling expansions is evaluated term by term instead.
double log_moment_map(double theta, double alpha) {
  if (theta < 1e4) {
    return sf::ln_gamma(alpha + theta) - sf::ln_gamma(theta);
  }
  const double ratio = alpha / theta;
  return (theta - 0.5) * std::log1p(ratio) + alpha * std::log(theta + alpha) -
         alpha + (1.0 / (12.0 * (theta + alpha)) - 1.0 / (12.0 * theta));
}

}  // namespace

double gamma_shape_from_moment(double moment_mean, double alpha) {
  if (!(moment_mean > 0.0)) {
    throw input_error("gamma shape estimation needs a positive moment");
  }
  if (!(alpha > 0.0)) {
    throw config_error("gamma shape estimation needs alpha > 0");
  }
  const double log_target = std::log(moment_mean);
  auto equation = [&](double theta) { return log_moment_map(theta, alpha) - log_target; };
  double lo = 1e-8;
  double hi = 1e-8;
  if (equation(lo) > 0.0) {
    throw input_error("moment too small: no gamma shape at or above 1e-8");
  }
  if (!expand_bracket(equation, lo, 1.0, 8.0, 1e8, &hi)) {
    throw input_error("moment too large: no gamma shape at or below 1e8");
  }
  const RootResult root = find_root(equation, lo, hi, 1e-12, 1e-14, 1e-14);
  // |log residual| bounds the relative residual of the moment map itself.
  if (!(std::fabs(root.residual) <= 1e-10)) {
    throw solver_error("gamma shape solve did not reach the residual tolerance");
  }
  return root.x;
}

double gamma_shape_variance(double theta, double alpha, std::uint64_t dimension) {
  if (!(theta > 0.0) || !(alpha > 0.0) || dimension == 0) {
    throw config_error("gamma shape variance needs positive arguments");
  }
  const double spread = std::exp(sf::ln_gamma(2.0 * alpha + theta) +
                                 sf::ln_gamma(theta) -
                                 2.0 * sf::ln_gamma(alpha + theta)) -
                        1.0;
  const double sensitivity = sf::digamma(alpha + theta) - sf::digamma(theta);
  return spread / (sensitivity * sensitivity) / static_cast<double>(dimension);
}

}  // namespace fms
