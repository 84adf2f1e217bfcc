#pragma once

#include <cstdint>
#include <map>
#include <span>

#include "fms/sketch.hpp"

namespace fms {

// Exact brute-force reference: the dense signal replayed from an update
// stream, with exact moments and log functionals. The signal must fit in
// memory; used by tests and the compare mode as ground truth against the
// sketch pipeline.
class SparseSignal {
 public:
  SparseSignal() = default;

  // Replays updates in order; entries that return to exactly zero are pruned.
  static SparseSignal replay(std::span<const StreamUpdate> updates);

  // sum over entries of value^alpha. All entries must be non-negative at the
  // point of evaluation (fms::model_violation otherwise); that is the one
  // place the sketch's validity precondition can actually be checked.
  double moment(double alpha) const;

  // sum of log(value); every entry must be strictly positive.
  double log_norm() const;

  // sum over the union support of log|a[i] - b[i]|; every difference must be
  // nonzero.
  static double log_distance(const SparseSignal& a, const SparseSignal& b);

  bool has_negative_entry() const;
  std::size_t nonzero_count() const { return entries_.size(); }
  const std::map<std::uint64_t, double>& entries() const { return entries_; }

 private:
  // Ordered map: iteration order is the index order, which together with
  // compensated summation keeps every aggregate reproducible.
  std::map<std::uint64_t, double> entries_;
};

}  // namespace fms
