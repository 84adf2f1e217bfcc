#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "fms/keyed_rng.hpp"
#include "fms/moment_order.hpp"
#include "fms/stable_sampler.hpp"
#include "support/mc.hpp"
#include "support/reference.hpp"

using fms::MomentOrder;
using fms::ProjectionKind;
using fms::Seed;
using fms::StableSampler;

namespace {

std::vector<double> draw_entries(double alpha, ProjectionKind kind, Seed seed,
                                 std::size_t n) {
  const StableSampler sampler(MomentOrder(alpha), kind);
  std::vector<double> out(n);
  testsupport::for_each_replica(n, [&](std::size_t i) {
    out[i] = sampler.entry(seed, i, 0);
  });
  return out;
}

}  // namespace

TEST_CASE("projection entries are a pure function of (seed, row, column)") {
  const StableSampler sampler(MomentOrder(0.7), ProjectionKind::Skewed);
  CHECK(sampler.entry(Seed{42}, 5, 3) == sampler.entry(Seed{42}, 5, 3));
  CHECK(sampler.entry(Seed{1}, 0, 0) != sampler.entry(Seed{2}, 0, 0));
  CHECK(sampler.entry(Seed{1}, 0, 0) != sampler.entry(Seed{1}, 1, 0));
  CHECK(sampler.entry(Seed{1}, 0, 0) != sampler.entry(Seed{1}, 0, 1));
}

TEST_CASE("cell rng draws stay inside the open unit interval") {
  fms::rng::CellRng gen(fms::rng::cell_state(fms::rng::row_key(1, 2), 3));
  for (int i = 0; i < 10000; ++i) {
    const double u = gen.next_unit_open();
    CHECK(u > 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("skewed entries below alpha = 1 are strictly positive") {
  const auto z = draw_entries(0.5, ProjectionKind::Skewed, Seed{11}, 1000000);
  std::size_t negative = 0;
  for (double v : z) {
    if (v <= 0.0) ++negative;
  }
  CHECK(negative == 0);
}

TEST_CASE("alpha = 2 reduces to a Gaussian of variance 2") {
  const auto z = draw_entries(2.0, ProjectionKind::Skewed, Seed{12}, 1000000);
  std::vector<double> squares(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) squares[i] = z[i] * z[i];
  const auto ms = testsupport::mean_stderr(squares);
  CHECK(std::fabs(ms.mean - 2.0) <= 3.0 * ms.stderr_of_mean);
}

TEST_CASE("negative-order moment at alpha = 0.5 matches the closed form") {
  // E(Z^{-1/2}) = sqrt(2/pi) for Z ~ S(0.5, 1, 1).
  const auto z = draw_entries(0.5, ProjectionKind::Skewed, Seed{13}, 1000000);
  std::vector<double> roots(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) roots[i] = 1.0 / std::sqrt(z[i]);
  const auto ms = testsupport::mean_stderr(roots);
  const double target = std::sqrt(2.0 / testsupport::kPi);
  CHECK(target ==
        doctest::Approx(testsupport::skewed_positive_moment(0.5, -0.5, 1.0))
            .epsilon(1e-12));
  CHECK(std::fabs(ms.mean - target) <= 3.0 * ms.stderr_of_mean);
}

TEST_CASE("fractional moments match the closed form across the alpha grid") {
  const double alphas[] = {0.25, 0.5, 0.75, 0.9, 1.1, 1.5, 2.0};
  for (double alpha : alphas) {
    const auto z =
        draw_entries(alpha, ProjectionKind::Skewed, Seed{0x5EED + static_cast<std::uint64_t>(100 * alpha)},
                     1000000);
    std::vector<double> powered(z.size());
    for (double lambda : {-alpha / 2.0, alpha / 4.0, alpha / 2.0}) {
      if (lambda <= -1.0) continue;  // the moment does not exist there
      for (std::size_t i = 0; i < z.size(); ++i) {
        powered[i] = std::pow(std::fabs(z[i]), lambda);
      }
      const auto ms = testsupport::mean_stderr(powered);
      const double target = testsupport::stable_abs_moment(alpha, 1.0, lambda, 1.0);
      INFO("alpha=", alpha, " lambda=", lambda, " mean=", ms.mean,
           " target=", target);
      CHECK(std::fabs(ms.mean - target) <= 4.0 * ms.stderr_of_mean);
    }
  }
}

TEST_CASE("symmetric entries match the general moment formula") {
  for (double alpha : {0.5, 1.5}) {
    const auto z = draw_entries(alpha, ProjectionKind::Symmetric,
                                Seed{0xBE7A + static_cast<std::uint64_t>(10 * alpha)}, 500000);
    const double lambda = alpha / 2.0;
    std::vector<double> powered(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) {
      powered[i] = std::pow(std::fabs(z[i]), lambda);
    }
    const auto ms = testsupport::mean_stderr(powered);
    const double target = testsupport::stable_abs_moment(alpha, 0.0, lambda, 1.0);
    CHECK(std::fabs(ms.mean - target) <= 4.0 * ms.stderr_of_mean);
  }
}

TEST_CASE("stability under positive-weighted addition") {
  // C1 Z1 + C2 Z2 ~ S(alpha, beta, C1^alpha + C2^alpha).
  const double c1 = 0.7, c2 = 1.3;
  const std::size_t n = 100000;
  for (double alpha : {0.5, 1.5}) {
    const StableSampler sampler(MomentOrder(alpha), ProjectionKind::Skewed);
    std::vector<double> combined(n), direct(n);
    const double scale = std::pow(c1, alpha) + std::pow(c2, alpha);
    const double scale_root = std::pow(scale, 1.0 / alpha);
    testsupport::for_each_replica(n, [&](std::size_t i) {
      combined[i] =
          c1 * sampler.entry(Seed{21}, i, 0) + c2 * sampler.entry(Seed{22}, i, 0);
      direct[i] = scale_root * sampler.entry(Seed{23}, i, 0);
    });
    const double d = testsupport::ks_statistic(combined, direct);
    CHECK(d <= testsupport::ks_critical(1e-3, n, n));
  }
}
