#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fms/errors.hpp"
#include "fms/keyed_rng.hpp"
#include "fms/moment_order.hpp"
#include "fms/stable_sampler.hpp"

namespace fms {

// One event of a signed update stream: signal[index] += delta.
struct StreamUpdate {
  std::uint64_t index = 0;
  double delta = 0.0;
};

struct SketchConfig {
  MomentOrder alpha;
  std::size_t k = 0;  // number of projections, at least 2
  Seed seed;
  ProjectionKind kind = ProjectionKind::Skewed;

  friend bool operator==(const SketchConfig&, const SketchConfig&) = default;
};

// Streaming summary of a signal under a lazily generated stable projection:
// k running inner products accumulators[j] = sum_i r[i, j] * signal[i].
// State is O(k) regardless of the index space or the stream length, and two
// sketches with identical configs merge by entrywise addition.
//
// Single writer per sketch; shard the stream across sketches with identical
// configs and merge when ingesting concurrently. Reads of a quiescent sketch
// are safe from any thread.
class Sketch {
 public:
  explicit Sketch(const SketchConfig& config);

  // Applies one update. The increment must be finite.
  void apply(const StreamUpdate& update);

  // Serial reference kernel: applies updates one by one in order.
  void ingest_serial(std::span<const StreamUpdate> batch);

  // Parallel kernel: each accumulator sweeps the batch independently, so the
  // per-accumulator addition order matches ingest_serial and the resulting
  // state is bit-identical to it for any thread count.
  void ingest(std::span<const StreamUpdate> batch);

  // Entrywise sum with a sketch of identical config (alpha, k, seed, kind).
  void merge(const Sketch& other);

  std::span<const double> samples() const { return accumulators_; }
  const SketchConfig& config() const { return config_; }
  std::uint64_t update_count() const { return update_count_; }

  // Canonical JSON record {accumulators, alpha, k, kind, seed, update_count,
  // version}. Accumulators are hex-float strings, so the round trip restores
  // them bit for bit and re-serializing reproduces identical bytes.
  std::string to_json() const;
  static Sketch from_json(std::string_view text);

 private:
  SketchConfig config_;
  StableSampler sampler_;
  std::vector<double> accumulators_;
  std::uint64_t update_count_ = 0;
};

}  // namespace fms
