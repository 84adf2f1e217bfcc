#include "fms/sketch.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

#include <json.hpp>

namespace fms {

namespace {

void check_config(const SketchConfig& config) {
  if (config.k < 2) {
    throw config_error("sketch needs at least 2 projections");
  }
}

void check_update(const StreamUpdate& update) {
  if (!std::isfinite(update.delta)) {
    throw input_error("stream increment must be finite");
  }
}

std::string to_hex_float(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%a", v);
  return buf;
}

double from_hex_float(const std::string& text) {
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end == text.c_str() || *end != '\0') {
    throw input_error("malformed accumulator value: " + text);
  }
  return v;
}

}  // namespace

Sketch::Sketch(const SketchConfig& config)
    : config_(config),
      sampler_(config.alpha, config.kind),
      accumulators_(config.k, 0.0) {
  check_config(config);
}

void Sketch::apply(const StreamUpdate& update) {
  check_update(update);
  const std::uint64_t row_digest =
      rng::row_key(rng::stream_key(config_.seed), update.index);
  for (std::size_t j = 0; j < accumulators_.size(); ++j) {
    accumulators_[j] += sampler_.entry_from_row_digest(row_digest, j) * update.delta;
  }
  ++update_count_;
}

void Sketch::ingest_serial(std::span<const StreamUpdate> batch) {
  for (const StreamUpdate& update : batch) {
    apply(update);
  }
}

void Sketch::ingest(std::span<const StreamUpdate> batch) {
  for (const StreamUpdate& update : batch) {
    check_update(update);
  }
  // Row digests are shared by all accumulators; hoist them out of the scan.
  std::vector<std::uint64_t> row_digests(batch.size());
  const std::uint64_t stream_digest = rng::stream_key(config_.seed);
  for (std::size_t t = 0; t < batch.size(); ++t) {
    row_digests[t] = rng::row_key(stream_digest, batch[t].index);
  }
  const std::ptrdiff_t k = static_cast<std::ptrdiff_t>(accumulators_.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t j = 0; j < k; ++j) {
    double acc = accumulators_[j];
    for (std::size_t t = 0; t < batch.size(); ++t) {
      acc += sampler_.entry_from_row_digest(row_digests[t], j) * batch[t].delta;
    }
    accumulators_[j] = acc;
  }
  update_count_ += batch.size();
}

void Sketch::merge(const Sketch& other) {
  if (!(config_ == other.config_)) {
    throw merge_error("cannot merge sketches with different configurations");
  }
  for (std::size_t j = 0; j < accumulators_.size(); ++j) {
    accumulators_[j] += other.accumulators_[j];
  }
  update_count_ += other.update_count_;
}

std::string Sketch::to_json() const {
  nlohmann::json record;
  record["version"] = 1;
  record["alpha"] = config_.alpha.value();
  record["k"] = config_.k;
  record["seed"] = config_.seed.value;
  record["kind"] = config_.kind == ProjectionKind::Skewed ? "skewed" : "symmetric";
  record["update_count"] = update_count_;
  nlohmann::json acc = nlohmann::json::array();
  for (double v : accumulators_) {
    acc.push_back(to_hex_float(v));
  }
  record["accumulators"] = std::move(acc);
  return record.dump();
}

Sketch Sketch::from_json(std::string_view text) {
  nlohmann::json record;
  try {
    record = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw input_error(std::string("malformed sketch record: ") + e.what());
  }
  try {
    if (record.at("version").get<int>() != 1) {
      throw input_error("unsupported sketch record version");
    }
    const std::string kind_name = record.at("kind").get<std::string>();
    if (kind_name != "skewed" && kind_name != "symmetric") {
      throw input_error("unknown projection kind: " + kind_name);
    }
    SketchConfig config{
        MomentOrder(record.at("alpha").get<double>()),
        record.at("k").get<std::size_t>(),
        Seed{record.at("seed").get<std::uint64_t>()},
        kind_name == "skewed" ? ProjectionKind::Skewed : ProjectionKind::Symmetric,
    };
    Sketch sketch(config);
    const auto& acc = record.at("accumulators");
    if (acc.size() != config.k) {
      throw input_error("accumulator count does not match k");
    }
    for (std::size_t j = 0; j < config.k; ++j) {
      sketch.accumulators_[j] = from_hex_float(acc.at(j).get<std::string>());
    }
    sketch.update_count_ = record.at("update_count").get<std::uint64_t>();
    return sketch;
  } catch (const nlohmann::json::exception& e) {
    throw input_error(std::string("malformed sketch record: ") + e.what());
  }
}

}  // namespace fms
