// Command-line front end: sketch JSONL update streams, estimate frequency
// moments with error bars, solve tail-bound constants, plan sample sizes,
// and cross-check against the exact brute-force oracle.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fms/errors.hpp"
#include "fms/estimators.hpp"
#include "fms/gamma_moments.hpp"
#include "fms/log_functionals.hpp"
#include "fms/moment_order.hpp"
#include "fms/oracle.hpp"
#include "fms/sketch.hpp"
#include "fms/tail_bounds.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitModelViolation = 3;
constexpr int kExitSolver = 4;

std::string read_all(const std::string& path) {
  if (path.empty() || path == "-") {
    std::ostringstream buffer;
    buffer << std::cin.rdbuf();
    return buffer.str();
  }
  std::ifstream file(path, std::ios::binary);
  if (!file) {
    throw fms::input_error("cannot open input file: " + path);
  }
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return buffer.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text << "\n";
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) {
    throw fms::input_error("cannot open output file: " + path);
  }
  file << text << "\n";
}

// One update per line: {"i": <unsigned>, "delta": <real>}.
std::vector<fms::StreamUpdate> parse_jsonl(const std::string& text) {
  std::vector<fms::StreamUpdate> updates;
  std::istringstream stream(text);
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(stream, line)) {
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) {
      continue;
    }
    nlohmann::json record;
    try {
      record = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw fms::input_error("line " + std::to_string(line_number) +
                             ": not valid JSON: " + e.what());
    }
    if (!record.is_object() || !record.contains("i") || !record.contains("delta") ||
        !record["i"].is_number_unsigned() || !record["delta"].is_number()) {
      throw fms::input_error("line " + std::to_string(line_number) +
                             ": expected {\"i\": <unsigned>, \"delta\": <real>}");
    }
    updates.push_back({record["i"].get<std::uint64_t>(), record["delta"].get<double>()});
  }
  return updates;
}

struct SketchOptions {
  double alpha = 0.9;
  std::size_t k = 50;
  std::uint64_t seed = 0;
  std::string kind = "skewed";
  std::size_t shards = 1;
};

void add_sketch_options(CLI::App* cmd, SketchOptions* opts) {
  cmd->add_option("--alpha", opts->alpha, "moment order in (0, 2], not 1");
  cmd->add_option("--k", opts->k, "number of projections (>= 2)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--seed", opts->seed, "projection master seed");
  cmd->add_option("--kind", opts->kind, "projection kind")
      ->check(CLI::IsMember({"skewed", "symmetric"}));
  cmd->add_option("--shards", opts->shards,
                  "split the stream round-robin into this many sketches and merge")
      ->check(CLI::PositiveNumber);
}

fms::SketchConfig make_config(const SketchOptions& opts) {
  return fms::SketchConfig{
      fms::MomentOrder(opts.alpha),
      opts.k,
      fms::Seed{opts.seed},
      opts.kind == "skewed" ? fms::ProjectionKind::Skewed
                            : fms::ProjectionKind::Symmetric,
  };
}

fms::Sketch build_sketch(const std::vector<fms::StreamUpdate>& updates,
                         const SketchOptions& opts) {
  const fms::SketchConfig config = make_config(opts);
  if (opts.shards <= 1) {
    fms::Sketch sketch(config);
    sketch.ingest(updates);
    return sketch;
  }
  std::vector<std::vector<fms::StreamUpdate>> parts(opts.shards);
  for (std::size_t t = 0; t < updates.size(); ++t) {
    parts[t % opts.shards].push_back(updates[t]);
  }
  fms::Sketch merged(config);
  for (const auto& part : parts) {
    fms::Sketch shard(config);
    shard.ingest(part);
    merged.merge(shard);
  }
  return merged;
}

const char* estimator_name(fms::EstimatorKind kind) {
  switch (kind) {
    case fms::EstimatorKind::GeometricMean: return "gm";
    case fms::EstimatorKind::GeometricMeanAsymptotic: return "gm_b";
    case fms::EstimatorKind::HarmonicMean: return "hm";
    case fms::EstimatorKind::HarmonicMeanCorrected: return "hm_c";
    case fms::EstimatorKind::SymmetricGeometricMean: return "sym_gm";
  }
  return "?";
}

fms::EstimatorKind parse_estimator(const std::string& name, const fms::Sketch& sketch) {
  if (name == "auto") {
    if (sketch.config().kind == fms::ProjectionKind::Symmetric) {
      return fms::EstimatorKind::SymmetricGeometricMean;
    }
    return fms::default_estimator(sketch.config().alpha);
  }
  if (name == "gm") return fms::EstimatorKind::GeometricMean;
  if (name == "gm_b") return fms::EstimatorKind::GeometricMeanAsymptotic;
  if (name == "hm") return fms::EstimatorKind::HarmonicMean;
  if (name == "hm_c") return fms::EstimatorKind::HarmonicMeanCorrected;
  if (name == "sym_gm") return fms::EstimatorKind::SymmetricGeometricMean;
  throw fms::input_error("unknown estimator: " + name);
}

nlohmann::json estimate_report(const fms::Estimate& estimate) {
  nlohmann::json report;
  report["estimate"] = estimate.value;
  report["estimator"] = estimator_name(estimate.estimator);
  report["alpha"] = estimate.alpha;
  report["k"] = estimate.k;
  report["stderr"] = estimate.stderr_asymptotic;
  if (estimate.degenerate) {
    report["degenerate"] = true;
  }
  return report;
}

nlohmann::json bound_report(const fms::TailBoundReport& bound) {
  nlohmann::json report;
  report["alpha"] = bound.alpha;
  report["epsilon"] = bound.epsilon;
  report["side"] = bound.side == fms::TailSide::Right ? "right" : "left";
  report["estimator"] =
      bound.estimator == fms::BoundEstimator::GeometricMeanAsymptotic ? "gm_b" : "hm";
  report["optimum"] = bound.optimum;
  report["exponent_rate"] = bound.exponent_rate;
  report["g"] = bound.g_constant;
  if (bound.capped) {
    report["capped"] = true;
  }
  return report;
}

int run(int argc, char** argv) {
  CLI::App app{"frequency-moment sketching over signed update streams"};
  app.require_subcommand(1);

  std::string input_path = "-";
  std::string input_path_b;
  std::string sketch_path;
  std::string out_path;
  std::string estimator_flag = "auto";
  bool counter_mode = false;
  double epsilon = 0.1;
  double delta = 0.05;
  double moment = 0.0;
  std::uint64_t dimension = 0;
  SketchOptions opts;
  SketchOptions log_opts;  // log functionals default to a much smaller alpha
  log_opts.alpha = fms::kDefaultLogFunctionalAlpha;
  std::string bound_estimator = "gm";

  CLI::App* cmd_sketch = app.add_subcommand(
      "sketch", "ingest a JSONL update stream into a sketch file");
  cmd_sketch->add_option("input", input_path, "JSONL stream ('-' = stdin)");
  add_sketch_options(cmd_sketch, &opts);
  cmd_sketch->add_flag("--counter", counter_mode,
                       "plain running sum of the increments (the alpha = 1 path)");
  cmd_sketch->add_option("--out", out_path, "output path (default stdout)");

  CLI::App* cmd_estimate =
      app.add_subcommand("estimate", "point estimate from a sketch file");
  cmd_estimate->add_option("sketch", sketch_path, "sketch file")->required();
  cmd_estimate->add_option("--estimator", estimator_flag,
                           "gm | gm_b | hm | hm_c | sym_gm | auto");
  cmd_estimate->add_option("--out", out_path, "output path (default stdout)");

  CLI::App* cmd_plan = app.add_subcommand(
      "plan", "projections needed for (epsilon, delta) accuracy");
  cmd_plan->add_option("--alpha", opts.alpha, "moment order")->required();
  cmd_plan->add_option("--epsilon", epsilon, "relative error")->required();
  cmd_plan->add_option("--delta", delta, "failure probability")->required();
  cmd_plan->add_option("--estimator", bound_estimator, "gm | hm");
  cmd_plan->add_option("--out", out_path, "output path (default stdout)");

  CLI::App* cmd_bounds =
      app.add_subcommand("bounds", "solved tail bound constants, both sides");
  cmd_bounds->add_option("--alpha", opts.alpha, "moment order")->required();
  cmd_bounds->add_option("--epsilon", epsilon, "relative error")->required();
  cmd_bounds->add_option("--estimator", bound_estimator, "gm | hm");
  cmd_bounds->add_option("--out", out_path, "output path (default stdout)");

  CLI::App* cmd_compare = app.add_subcommand(
      "compare", "sketch estimate vs the exact moment of the replayed stream");
  cmd_compare->add_option("input", input_path, "JSONL stream ('-' = stdin)");
  add_sketch_options(cmd_compare, &opts);
  cmd_compare->add_option("--estimator", estimator_flag,
                          "gm | gm_b | hm | hm_c | auto");
  cmd_compare->add_option("--out", out_path, "output path (default stdout)");

  CLI::App* cmd_lognorm = app.add_subcommand(
      "lognorm", "approximate the logarithmic norm of the replayed stream");
  cmd_lognorm->add_option("input", input_path, "JSONL stream ('-' = stdin)");
  add_sketch_options(cmd_lognorm, &log_opts);
  double lognorm_epsilon = 0.0;
  CLI::Option* lognorm_eps_opt = cmd_lognorm->add_option(
      "--epsilon", lognorm_epsilon, "also report the transformed tail rates");
  cmd_lognorm->add_option("--out", out_path, "output path (default stdout)");

  CLI::App* cmd_logdist = app.add_subcommand(
      "logdist", "approximate the logarithmic distance between two streams");
  cmd_logdist->add_option("input", input_path, "JSONL stream A")->required();
  cmd_logdist->add_option("--b", input_path_b, "JSONL stream B")->required();
  add_sketch_options(cmd_logdist, &log_opts);
  cmd_logdist->add_option("--out", out_path, "output path (default stdout)");

  CLI::App* cmd_gamma = app.add_subcommand(
      "gamma-shape", "gamma shape parameter from a fractional moment mean");
  cmd_gamma->add_option("--moment", moment, "observed mean of value^alpha")->required();
  cmd_gamma->add_option("--alpha", opts.alpha, "moment order used")->required();
  cmd_gamma->add_option("--dimension", dimension,
                        "sample count; adds the estimator variance to the report");
  cmd_gamma->add_option("--out", out_path, "output path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  if (cmd_sketch->parsed()) {
    if (counter_mode) {
      const auto updates = parse_jsonl(read_all(input_path));
      double sum = 0.0, compensation = 0.0;
      for (const auto& u : updates) {
        const double t = sum + u.delta;
        compensation += std::fabs(sum) >= std::fabs(u.delta) ? (sum - t) + u.delta
                                                             : (u.delta - t) + sum;
        sum = t;
      }
      write_output(out_path, nlohmann::json(sum + compensation).dump());
      return kExitOk;
    }
    if (opts.alpha == 1.0) {
      throw fms::input_error(
          "alpha = 1 is a plain sum; rerun with --counter instead of a sketch");
    }
    const auto updates = parse_jsonl(read_all(input_path));
    write_output(out_path, build_sketch(updates, opts).to_json());
    return kExitOk;
  }

  if (cmd_estimate->parsed()) {
    const fms::Sketch sketch = fms::Sketch::from_json(read_all(sketch_path));
    const auto kind = parse_estimator(estimator_flag, sketch);
    write_output(out_path, estimate_report(fms::estimate(sketch, kind)).dump());
    return kExitOk;
  }

  if (cmd_plan->parsed()) {
    const fms::MomentOrder alpha(opts.alpha);
    const auto estimator = bound_estimator == "hm"
                               ? fms::BoundEstimator::HarmonicMean
                               : fms::BoundEstimator::GeometricMeanAsymptotic;
    const fms::SamplePlan plan = fms::plan_samples(alpha, epsilon, delta, estimator);
    nlohmann::json report;
    report["alpha"] = plan.alpha;
    report["epsilon"] = plan.epsilon;
    report["delta"] = plan.delta;
    report["g"] = plan.g_constant;
    report["k"] = plan.k;
    write_output(out_path, report.dump());
    return kExitOk;
  }

  if (cmd_bounds->parsed()) {
    const fms::MomentOrder alpha(opts.alpha);
    nlohmann::json report;
    if (bound_estimator == "hm") {
      report["right"] = bound_report(fms::solve_hm_right(alpha, epsilon));
      report["left"] = bound_report(fms::solve_hm_left(alpha, epsilon));
    } else {
      report["right"] = bound_report(fms::solve_gm_right(alpha, epsilon));
      report["left"] = bound_report(fms::solve_gm_left(alpha, epsilon));
    }
    write_output(out_path, report.dump());
    return kExitOk;
  }

  if (cmd_compare->parsed()) {
    const auto updates = parse_jsonl(read_all(input_path));
    const fms::SparseSignal signal = fms::SparseSignal::replay(updates);
    const fms::Sketch sketch = build_sketch(updates, opts);
    const auto kind = parse_estimator(estimator_flag, sketch);
    const fms::Estimate estimate = fms::estimate(sketch, kind);
    nlohmann::json report;
    report["estimate"] = estimate.value;
    report["estimator"] = estimator_name(kind);
    if (signal.has_negative_entry()) {
      std::cerr << "warning: replayed signal has negative entries at evaluation; "
                   "the moment estimate is not meaningful here\n";
      report["exact"] = nullptr;
      report["relative_error"] = nullptr;
      report["model_violation"] = true;
      write_output(out_path, report.dump());
      return kExitModelViolation;
    }
    const double exact = signal.moment(opts.alpha);
    report["exact"] = exact;
    report["relative_error"] =
        exact == 0.0 ? 0.0 : std::fabs(estimate.value - exact) / exact;
    report["model_violation"] = false;
    write_output(out_path, report.dump());
    return kExitOk;
  }

  if (cmd_lognorm->parsed()) {
    const auto updates = parse_jsonl(read_all(input_path));
    const fms::SparseSignal signal = fms::SparseSignal::replay(updates);
    const double exact = signal.log_norm();  // also validates positivity
    log_opts.kind = "skewed";
    const fms::Sketch sketch = build_sketch(updates, log_opts);
    const std::optional<double> epsilon =
        lognorm_eps_opt->count() > 0 ? std::optional<double>(lognorm_epsilon)
                                     : std::nullopt;
    const auto result =
        fms::estimate_log_norm(sketch, signal.nonzero_count(), epsilon);
    nlohmann::json report;
    report["estimate"] = result.value;
    report["exact"] = exact;
    report["alpha"] = result.alpha_used;
    report["k"] = log_opts.k;
    report["dimension"] = result.dimension;
    if (result.tail_rates.has_value()) {
      report["tail"] = {
          {"epsilon", *epsilon},
          {"right_rate", result.tail_rates->right_rate},
          {"left_rate", result.tail_rates->left_rate},
          {"right_probability", result.tail_rates->right_probability(log_opts.k)},
          {"left_probability", result.tail_rates->left_probability(log_opts.k)},
      };
    }
    write_output(out_path, report.dump());
    return kExitOk;
  }

  if (cmd_logdist->parsed()) {
    const auto updates_a = parse_jsonl(read_all(input_path));
    const auto updates_b = parse_jsonl(read_all(input_path_b));
    const fms::SparseSignal signal_a = fms::SparseSignal::replay(updates_a);
    const fms::SparseSignal signal_b = fms::SparseSignal::replay(updates_b);
    const double exact = fms::SparseSignal::log_distance(signal_a, signal_b);
    std::size_t support = 0;  // union support = count of nonzero differences
    {
      auto ia = signal_a.entries().begin();
      auto ib = signal_b.entries().begin();
      while (ia != signal_a.entries().end() || ib != signal_b.entries().end()) {
        if (ib == signal_b.entries().end() ||
            (ia != signal_a.entries().end() && ia->first < ib->first)) {
          ++ia;
        } else if (ia == signal_a.entries().end() || ib->first < ia->first) {
          ++ib;
        } else {
          ++ia;
          ++ib;
        }
        ++support;
      }
    }
    log_opts.kind = "symmetric";
    fms::Sketch sketch(make_config(log_opts));
    sketch.ingest(updates_a);
    std::vector<fms::StreamUpdate> negated = updates_b;
    for (auto& u : negated) {
      u.delta = -u.delta;
    }
    sketch.ingest(negated);
    const auto result = fms::estimate_log_distance(sketch, support);
    nlohmann::json report;
    report["estimate"] = result.value;
    report["exact"] = exact;
    report["alpha"] = result.alpha_used;
    report["k"] = log_opts.k;
    report["dimension"] = result.dimension;
    write_output(out_path, report.dump());
    return kExitOk;
  }

  if (cmd_gamma->parsed()) {
    const double theta = fms::gamma_shape_from_moment(moment, opts.alpha);
    nlohmann::json report;
    report["theta"] = theta;
    report["alpha"] = opts.alpha;
    report["moment"] = moment;
    if (dimension > 0) {
      report["variance"] = fms::gamma_shape_variance(theta, opts.alpha, dimension);
    }
    write_output(out_path, report.dump());
    return kExitOk;
  }

  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const fms::model_violation& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitModelViolation;
  } catch (const fms::solver_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSolver;
  } catch (const fms::out_of_regime& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSolver;
  } catch (const fms::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
}
