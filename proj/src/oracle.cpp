#include "fms/oracle.hpp"

#include <cmath>

#include "fms/errors.hpp"

namespace fms {

namespace {

// Neumaier-compensated accumulator.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
      compensation_ += (sum_ - t) + x;
    } else {
      compensation_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  double value() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

}  // namespace

SparseSignal SparseSignal::replay(std::span<const StreamUpdate> updates) {
  SparseSignal signal;
  for (const StreamUpdate& update : updates) {
    if (!std::isfinite(update.delta)) {
      throw input_error("stream increment must be finite");
    }
    auto [it, inserted] = signal.entries_.try_emplace(update.index, update.delta);
    if (!inserted) {
      it->second += update.delta;
      if (it->second == 0.0) {
        signal.entries_.erase(it);
      }
    } else if (it->second == 0.0) {
      signal.entries_.erase(it);
    }
  }
  return signal;
}

double SparseSignal::moment(double alpha) const {
  CompensatedSum sum;
  for (const auto& [index, value] : entries_) {
    if (value < 0.0) {
      throw model_violation("signal entry " + std::to_string(index) +
                            " is negative at evaluation time");
    }
    sum.add(std::pow(value, alpha));
  }
  return sum.value();
}

double SparseSignal::log_norm() const {
  CompensatedSum sum;
  for (const auto& [index, value] : entries_) {
    if (!(value > 0.0)) {
      throw input_error("log norm needs strictly positive entries; entry " +
                        std::to_string(index) + " is not");
    }
    sum.add(std::log(value));
  }
  return sum.value();
}

double SparseSignal::log_distance(const SparseSignal& a, const SparseSignal& b) {
  CompensatedSum sum;
  auto ia = a.entries_.begin();
  auto ib = b.entries_.begin();
  auto consume = [&sum](double diff) {
    if (diff == 0.0) {
      throw input_error("log distance needs nonzero differences everywhere");
    }
    sum.add(std::log(std::fabs(diff)));
  };
  while (ia != a.entries_.end() || ib != b.entries_.end()) {
    if (ib == b.entries_.end() || (ia != a.entries_.end() && ia->first < ib->first)) {
      consume(ia->second);
      ++ia;
    } else if (ia == a.entries_.end() || ib->first < ia->first) {
      consume(-ib->second);
      ++ib;
    } else {
      consume(ia->second - ib->second);
      ++ia;
      ++ib;
    }
  }
  return sum.value();
}

bool SparseSignal::has_negative_entry() const {
  for (const auto& [index, value] : entries_) {
    if (value < 0.0) {
      return true;
    }
  }
  return false;
}

}  // namespace fms
