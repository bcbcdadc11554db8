/**************************************************************************************************
 * Apache License, Version 2.0
 * Copyright (c) 2026 the radixlab authors
 **************************************************************************************************/

#pragma once

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <string>
#include <string_view>

#include "radixlab/errors.hpp"

namespace radixlab {

/// Reference arithmetic standing in for exact real arithmetic. True results are formed
/// here before they are rounded into a simulated system, and all error metrics are
/// evaluated here. On x86-64 `long double` is the 80-bit extended format: a 64-bit
/// significand with correctly rounded +, -, *, /, sqrt, which is more than twice the
/// fraction length of any supported system, so passing values through Real never
/// perturbs a simulated rounding except on sets the experiments cannot hit.
using Real = long double;

static_assert(std::numeric_limits<Real>::digits >= 64,
              "reference arithmetic requires a significand of at least 64 bits");
static_assert(std::numeric_limits<Real>::max_exponent >= 1024,
              "reference arithmetic requires exponent range beyond 2^+-300");

constexpr int kRefSignificandBits = std::numeric_limits<Real>::digits;

inline Real ref_add(Real a, Real b) { return a + b; }
inline Real ref_sub(Real a, Real b) { return a - b; }
inline Real ref_mul(Real a, Real b) { return a * b; }

inline Real ref_div(Real a, Real b) {
  if (b == 0.0L) throw DivideByZero("ref_div: divisor is zero");
  return a / b;
}

inline Real ref_sqrt(Real a) {
  if (a < 0.0L) throw DomainError("ref_sqrt: negative argument");
  return std::sqrt(a);
}

/// Faithfully rounded; feeds only logarithmic-system encoding where the resulting
/// code error is far below one half unit.
inline Real ref_log2(Real a) {
  if (a <= 0.0L) throw DomainError("ref_log2: argument must be positive");
  return std::log2(a);
}

inline Real ref_abs(Real a) { return a < 0.0L ? -a : a; }

/// Decimal formatting with 21 significant digits: enough to round-trip any 64-bit
/// significand value through text fixtures.
inline std::string ref_to_string(Real x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.21Lg", x);
  return buf;
}

inline Real ref_from_string(std::string_view text) {
  std::string owned(text);
  char* end = nullptr;
  Real v = std::strtold(owned.c_str(), &end);
  if (end == owned.c_str() || end == nullptr || *end != '\0')
    throw DomainError("ref_from_string: unparsable real \"" + owned + "\"");
  return v;
}

}  // namespace radixlab
