#pragma once

#include <stdexcept>
#include <string>

namespace fms {

// Base class for all library errors so callers can catch one type.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid construction parameters (alpha out of range, k too small, ...).
class config_error : public error {
 public:
  using error::error;
};

// Malformed or out-of-domain input data (non-finite increment, bad file, ...).
class input_error : public error {
 public:
  using error::error;
};

// Attempt to merge sketches with different configurations.
class merge_error : public error {
 public:
  using error::error;
};

// A numerical solve failed (no bracketed root, series did not converge, ...).
class solver_error : public error {
 public:
  using error::error;
};

// The reconstructed signal violates the non-negativity requirement that the
// moment definition assumes at evaluation time.
class model_violation : public error {
 public:
  using error::error;
};

// Estimator requested outside its domain (harmonic mean needs alpha < 1).
class unsupported_estimator : public error {
 public:
  using error::error;
};

// A closed-form approximation was evaluated outside its asymptotic regime.
class out_of_regime : public error {
 public:
  using error::error;
};

}  // namespace fms
