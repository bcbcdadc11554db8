/**************************************************************************************************
 * Apache License, Version 2.0
 * Copyright (c) 2026 the radixlab authors
 **************************************************************************************************/

#pragma once

#include <stdexcept>
#include <string>

namespace radixlab {

/// Rejected system parameters; the message names the violated constraint.
struct InvalidSpec : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Overflow/underflow abort the run instead of saturating. With the standard word-32
// systems (range 2^+-256) and the experiment data distributions neither can occur,
// so seeing one means the harness itself is broken.
struct OverflowError : std::range_error {
  using std::range_error::range_error;
};

struct UnderflowError : std::range_error {
  using std::range_error::range_error;
};

struct DivideByZero : std::domain_error {
  using std::domain_error::domain_error;
};

struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

/// An exactly zero pivot in Gaussian elimination. Experiments redraw the trial.
struct SingularMatrix : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// QL iteration exceeded its sweep budget for one eigenvalue. Experiments redraw the trial.
struct NoConvergence : std::runtime_error {
  explicit NoConvergence(int eigen_index)
      : std::runtime_error("QL iteration failed to converge for eigenvalue index " +
                           std::to_string(eigen_index)),
        index(eigen_index) {}
  int index;
};

/// A provable error bound was exceeded; signals an arithmetic bug, never a bad draw.
struct BoundViolated : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace radixlab
