#pragma once

#include <cmath>

#include "fms/errors.hpp"

namespace fms {

// Which stable law backs the projection entries. Skewed (maximally skewed,
// beta = 1) is the default and feeds the moment estimators; Symmetric
// (beta = 0) is used only for signed-difference functionals.
enum class ProjectionKind { Skewed, Symmetric };

// Validated moment order alpha in (0, 2], alpha != 1, together with the
// branch constant kappa that appears in every skewed-stable moment formula:
// kappa = alpha below 1, kappa = 2 - alpha above 1.
class MomentOrder {
 public:
  explicit MomentOrder(double alpha) : alpha_(alpha) {
    if (!(alpha > 0.0) || !(alpha <= 2.0)) {
      throw config_error("moment order must lie in (0, 2]");
    }
    if (alpha == 1.0) {
      throw config_error(
          "moment order 1 needs no sketch; keep a plain running sum of the "
          "increments instead");
    }
    kappa_ = alpha < 1.0 ? alpha : 2.0 - alpha;
  }

  double value() const { return alpha_; }
  double kappa() const { return kappa_; }

  // Distance to the trivial counter case, |alpha - 1|, in (0, 1].
  double delta() const { return std::fabs(alpha_ - 1.0); }

  bool below_one() const { return alpha_ < 1.0; }

  friend bool operator==(const MomentOrder&, const MomentOrder&) = default;

 private:
  double alpha_;
  double kappa_;
};

}  // namespace fms
