#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "fms/errors.hpp"
#include "fms/log_functionals.hpp"
#include "fms/oracle.hpp"
#include "fms/sketch.hpp"
#include "support/mc.hpp"
#include "support/reference.hpp"

using fms::MomentOrder;
using fms::ProjectionKind;
using fms::Seed;
using fms::Sketch;
using fms::SketchConfig;
using fms::StreamUpdate;

namespace {

const std::vector<StreamUpdate> kSignal124{{0, 1.0}, {1, 2.0}, {2, 4.0}};

double exact_moment_124(double alpha) {
  return fms::SparseSignal::replay(kSignal124).moment(alpha);
}

}  // namespace

TEST_CASE("transform on exact moments reproduces the reference values") {
  // A = (1, 2, 4): exact log norm is log 8.
  const double exact = std::log(8.0);
  const double at_001 = fms::log_norm_from_moment(exact_moment_124(0.01), 0.01, 3);
  CHECK(at_001 == doctest::Approx(2.0842460525828932).epsilon(1e-10));
  CHECK(std::fabs(at_001 - exact) <= 5e-3);
  const double at_0005 = fms::log_norm_from_moment(exact_moment_124(0.005), 0.005, 3);
  CHECK(at_0005 == doctest::Approx(2.0818438043448988).epsilon(1e-10));
  // Halving alpha roughly halves the error.
  const double ratio = (at_001 - exact) / (at_0005 - exact);
  CHECK(ratio == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("transform error decreases as alpha goes down") {
  const double exact = std::log(8.0);
  double previous = 1e9;
  std::vector<double> error_over_alpha;
  for (double a : {0.05, 0.02, 0.01, 0.005}) {
    const double err =
        std::fabs(fms::log_norm_from_moment(exact_moment_124(a), a, 3) - exact);
    CHECK(err < previous);
    previous = err;
    error_over_alpha.push_back(err / a);
  }
  // First-order error: err/alpha stays within a factor 2 across the grid.
  for (double r : error_over_alpha) {
    CHECK(r <= 2.0 * error_over_alpha.front());
    CHECK(r >= 0.5 * error_over_alpha.front());
  }
}

TEST_CASE("transform basics and errors") {
  CHECK(fms::log_norm_from_moment(3.0, 0.01, 3) == 0.0);  // uniform ones
  CHECK(fms::log_norm_from_moment(3.1, 0.01, 3) >
        fms::log_norm_from_moment(3.05, 0.01, 3));
  CHECK_THROWS_AS(fms::log_norm_from_moment(0.0, 0.01, 3), fms::input_error);
  CHECK_THROWS_AS(fms::log_norm_from_moment(-1.0, 0.01, 3), fms::input_error);
  CHECK_THROWS_AS(fms::log_norm_from_moment(1.0, 0.01, 0), fms::input_error);
}

TEST_CASE("sketch-level log norm estimate on a uniform signal") {
  // Signal c everywhere: exact log norm is D log c. The estimate of the mean
  // over replicas carries an O(V/k) plug-in bias, well inside 4 stderr here.
  const std::size_t dimension = 20;
  const double c = 2.0;
  const auto signal = testsupport::uniform_signal(dimension, c);
  const auto updates = testsupport::updates_for_signal(signal);
  const std::size_t replicas = 1000, k = 1000;
  std::vector<double> estimates(replicas);
  testsupport::for_each_replica(replicas, [&](std::size_t r) {
    Sketch sketch(SketchConfig{MomentOrder(0.01), k,
                               testsupport::replica_seed(0x10C, r),
                               ProjectionKind::Skewed});
    sketch.ingest_serial(updates);
    estimates[r] = fms::estimate_log_norm(sketch, dimension).value;
  });
  const auto ms = testsupport::mean_stderr(estimates);
  const double exact = dimension * std::log(c);
  INFO("mean=", ms.mean, " exact=", exact, " stderr=", ms.stderr_of_mean);
  CHECK(std::fabs(ms.mean - exact) <= 4.0 * ms.stderr_of_mean);
}

TEST_CASE("log norm sketch validation") {
  Sketch wrong_alpha(
      SketchConfig{MomentOrder(0.5), 8, Seed{1}, ProjectionKind::Skewed});
  CHECK_THROWS_AS(fms::estimate_log_norm(wrong_alpha, 3), fms::config_error);
  Sketch wrong_kind(
      SketchConfig{MomentOrder(0.01), 8, Seed{1}, ProjectionKind::Symmetric});
  CHECK_THROWS_AS(fms::estimate_log_norm(wrong_kind, 3), fms::config_error);
  // Empty sketch: all accumulators zero, moment degenerate.
  Sketch empty(SketchConfig{MomentOrder(0.01), 8, Seed{1}, ProjectionKind::Skewed});
  CHECK_THROWS_AS(fms::estimate_log_norm(empty, 3), fms::input_error);
}

TEST_CASE("log distance is symmetric under argument order") {
  const std::vector<StreamUpdate> a{{0, 3.0}, {1, 1.0}, {2, 5.0}};
  const std::vector<StreamUpdate> b{{0, 2.0}, {1, 3.0}, {2, 1.0}};
  auto build = [&](bool a_first) {
    Sketch sketch(
        SketchConfig{MomentOrder(0.01), 16, Seed{4}, ProjectionKind::Symmetric});
    std::vector<StreamUpdate> first = a_first ? a : b;
    std::vector<StreamUpdate> second = a_first ? b : a;
    for (auto& u : second) u.delta = -u.delta;
    sketch.ingest_serial(first);
    sketch.ingest_serial(second);
    return fms::estimate_log_distance(sketch, 3).value;
  };
  CHECK(build(true) == build(false));
}

TEST_CASE("log distance of identical streams is degenerate") {
  const std::vector<StreamUpdate> a{{0, 3.0}, {1, 1.0}};
  Sketch sketch(
      SketchConfig{MomentOrder(0.01), 8, Seed{4}, ProjectionKind::Symmetric});
  sketch.ingest_serial(a);
  std::vector<StreamUpdate> negated = a;
  for (auto& u : negated) u.delta = -u.delta;
  sketch.ingest_serial(negated);
  CHECK_THROWS_AS(fms::estimate_log_distance(sketch, 2), fms::input_error);
}

TEST_CASE("log distance estimate tracks the exact value") {
  // Difference signal (1, 2, 4) again, via B ingested negated.
  const std::vector<StreamUpdate> a{{0, 2.0}, {1, 5.0}, {2, 9.0}};
  const std::vector<StreamUpdate> b{{0, 1.0}, {1, 3.0}, {2, 5.0}};
  const std::size_t replicas = 400, k = 800;
  std::vector<double> estimates(replicas);
  testsupport::for_each_replica(replicas, [&](std::size_t r) {
    Sketch sketch(SketchConfig{MomentOrder(0.01), k,
                               testsupport::replica_seed(0xD15, r),
                               ProjectionKind::Symmetric});
    sketch.ingest_serial(a);
    std::vector<StreamUpdate> negated = b;
    for (auto& u : negated) u.delta = -u.delta;
    sketch.ingest_serial(negated);
    estimates[r] = fms::estimate_log_distance(sketch, 3).value;
  });
  const auto ms = testsupport::mean_stderr(estimates);
  CHECK(std::fabs(ms.mean - std::log(8.0)) <= 4.0 * ms.stderr_of_mean + 5e-3);
}

TEST_CASE("estimation error drops below the transform error at large k") {
  // Spread-out signal: the transform bias stays fixed while the sketch
  // estimation spread shrinks like 1/sqrt(k).
  const std::size_t dimension = 100;
  const double alpha = 0.05;
  std::vector<StreamUpdate> updates(dimension);
  double exact_log_norm = 0.0;
  for (std::size_t i = 0; i < dimension; ++i) {
    const double v = 20.0 * static_cast<double>(i) / (dimension - 1);
    updates[i] = {i, std::exp(v)};
    exact_log_norm += v;
  }
  const double exact_moment =
      fms::SparseSignal::replay(updates).moment(alpha);
  const double transform_error = std::fabs(
      fms::log_norm_from_moment(exact_moment, alpha, dimension) - exact_log_norm);

  const std::size_t replicas = 30, k = 10000;
  std::vector<double> estimates(replicas);
  testsupport::for_each_replica(replicas, [&](std::size_t r) {
    Sketch sketch(SketchConfig{MomentOrder(alpha), k,
                               testsupport::replica_seed(0x5B117, r),
                               ProjectionKind::Skewed});
    sketch.ingest_serial(updates);
    estimates[r] = fms::estimate_log_norm(sketch, dimension).value;
  });
  const auto ms = testsupport::mean_stderr(estimates);
  const double estimation_spread =
      ms.stderr_of_mean * std::sqrt(static_cast<double>(replicas));
  INFO("transform error=", transform_error, " estimation spread=",
       estimation_spread);
  CHECK(estimation_spread < transform_error);
  CHECK(transform_error > 0.0);
}

TEST_CASE("tail rates are attached when an epsilon is supplied") {
  const auto signal = testsupport::uniform_signal(50, 2.0);
  Sketch sketch(
      SketchConfig{MomentOrder(0.05), 300, Seed{77}, ProjectionKind::Skewed});
  sketch.ingest_serial(testsupport::updates_for_signal(signal));
  const auto plain = fms::estimate_log_norm(sketch, 50);
  CHECK(!plain.tail_rates.has_value());
  const auto with_rates = fms::estimate_log_norm(sketch, 50, 0.2);
  REQUIRE(with_rates.tail_rates.has_value());
  CHECK(with_rates.value == plain.value);
  CHECK(with_rates.tail_rates->right_rate > 0.0);
  CHECK(with_rates.tail_rates->left_rate > 0.0);
  CHECK(with_rates.tail_rates->right_probability(sketch.config().k) < 1.0);
}

TEST_CASE("transformed tail rates") {
  const MomentOrder alpha(0.05);
  SUBCASE("vanishing epsilon gives vanishing exponents") {
    const auto rates = fms::log_norm_tail_rates(alpha, 0.0, 100, 250.0);
    CHECK(rates.right_rate == 0.0);
    CHECK(rates.left_rate == 0.0);
    CHECK(rates.right_probability(200) == 1.0);
  }
  SUBCASE("moment equal to dimension degenerates the right bound") {
    const auto rates = fms::log_norm_tail_rates(alpha, 0.3, 100, 100.0);
    CHECK(rates.right_rate == 0.0);
    CHECK(rates.right_probability(500) == 1.0);
  }
  SUBCASE("rates are positive away from the degenerate point") {
    const auto rates = fms::log_norm_tail_rates(alpha, 0.3, 100, 107.0);
    CHECK(rates.right_rate > 0.0);
    CHECK(rates.left_rate > 0.0);
    CHECK(rates.right_probability(100000) < 1.0);
  }
  SUBCASE("input validation") {
    CHECK_THROWS_AS(fms::log_norm_tail_rates(alpha, 0.3, 0, 1.0), fms::input_error);
    CHECK_THROWS_AS(fms::log_norm_tail_rates(alpha, 0.3, 10, -1.0), fms::input_error);
  }
}
