/**************************************************************************************************
 * Apache License, Version 2.0
 * Copyright (c) 2026 the radixlab authors
 **************************************************************************************************/

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "radixlab/refarith.hpp"

namespace radixlab {

/// How a real is mapped onto the nearest-or-chopped representable value.
///
/// RStar            round to nearest; an exact tie is resolved so that the least
///                  significant fraction bit of the result is one (ties to odd).
/// TruncateTowardZero  drop everything below one unit in the last place.
/// TruncateDownward    round toward negative infinity.
/// VonNeumann       truncate toward zero, then force the last fraction bit to one;
///                  exactly representable inputs pass through unchanged unless the
///                  spec disables that exception.
enum class RoundingMode { RStar, TruncateTowardZero, TruncateDownward, VonNeumann };

std::string to_string(RoundingMode mode);
RoundingMode rounding_mode_from_string(std::string_view name);

/// A parametric floating-point system with base beta = 2^k, a u-bit fraction, and
/// exponent e constrained to e_min < e <= e_max. Nonzero values are
///
///     sign * F * 2^(k*e - u)   with   2^(u-k) <= F < 2^u,
///
/// i.e. at least one of the leading k fraction bits is set. `p` = 2 marks the
/// implicit-first-bit convention (possible only for base 2); it changes the word
/// budget and the theoretical error ratios, not the represented value set.
struct SystemSpec {
  int k = 1;
  int u = 1;
  int p = 1;
  int e_min = 0;  // exclusive lower bound
  int e_max = 0;  // inclusive upper bound
  RoundingMode mode = RoundingMode::RStar;
  int w = 0;  // word length in bits; 0 disables the budget check
  bool vn_exact_exception = true;

  int beta() const { return 1 << k; }

  friend bool operator==(const SystemSpec&, const SystemSpec&) = default;
};

/// Validates and returns a SystemSpec; throws InvalidSpec naming the violated
/// constraint. The word budget, checked only when w > 0, is
/// u - log2(p) + 1 + ceil(log2(e_max - e_min)) <= w.
SystemSpec make_system(int k, int u, int p, int e_min, int e_max, RoundingMode mode, int w = 0);

/// One representable value: sign, exponent and integer significand.
/// F == 0 is the distinguished zero (sign +1, e 0 by convention).
struct FpValue {
  int sign = +1;
  int e = 0;
  std::uint64_t F = 0;

  bool is_zero() const { return F == 0; }
  static FpValue zero() { return FpValue{}; }

  friend bool operator==(const FpValue&, const FpValue&) = default;
};

/// Exact real value sign * F * 2^(k*e - u); exact because u is far below the
/// reference significand width.
Real value_of(const SystemSpec& spec, const FpValue& v);

Real f_max(const SystemSpec& spec);  // 2^(k*e_max) * (1 - 2^-u)
Real f_min(const SystemSpec& spec);  // 2^(k*e_min)
Real range(const SystemSpec& spec);          // nominal R = k * (e_max - e_min)
Real range_exact(const SystemSpec& spec);    // log2(f_max / f_min), 2^-u term kept

/// Rounds a finite real into the system under its rounding mode.
/// Throws UnderflowError when 0 < |x| < f_min and OverflowError when the rounded
/// result exceeds f_max in magnitude; both are fatal configuration errors here.
FpValue fl(const SystemSpec& spec, Real x);

/// A logarithmic system: nonzero representable values are sign * 2^((|code|-b)/a)
/// for integer codes 1 .. 2^(w-1)-1. Multiplication and division are exact by
/// construction; addition has no shortcut and must re-encode.
struct LogSystemSpec {
  std::int64_t a = 1;
  std::int64_t b = 1;
  int w = 2;

  std::int64_t max_code() const { return (std::int64_t{1} << (w - 1)) - 1; }

  friend bool operator==(const LogSystemSpec&, const LogSystemSpec&) = default;
};

LogSystemSpec make_log_system(std::int64_t a, std::int64_t b, int w);

/// Signed integer code; 0 encodes zero.
struct LogValue {
  std::int64_t lambda = 0;

  bool is_zero() const { return lambda == 0; }

  friend bool operator==(const LogValue&, const LogValue&) = default;
};

Real value_of(const LogSystemSpec& spec, const LogValue& v);

/// Nearest code to a*log2|x| + b, signed by sign(x); ties go to the even code.
/// Zero maps to code 0. Codes outside [1, 2^(w-1)-1] in magnitude raise
/// OverflowError / UnderflowError.
LogValue fl_log(const LogSystemSpec& spec, Real x);

Real log_f_max(const LogSystemSpec& spec);  // 2^((2^(w-1)-1-b)/a)
Real log_f_min(const LogSystemSpec& spec);  // 2^((1-b)/a)
Real log_range(const LogSystemSpec& spec);  // (2^(w-1)-2)/a

/// A system under a canonical or user-supplied name.
struct NamedSystem {
  std::string name;
  std::variant<SystemSpec, LogSystemSpec> spec;

  bool is_log() const { return std::holds_alternative<LogSystemSpec>(spec); }
};

/// The word-32, range-512 reference set: S0 (logarithmic, a=2^22, b=2^30), S1
/// (base 2, implicit bit), S2 (base 4), S3 (base 2 explicit), S4 (base 16), S4T
/// (S4 with truncation toward zero) and S5 (base 256). Exponent ranges are
/// symmetric, e_max = -e_min = 256/k, so every system spans exactly 2^-256..2^256.
std::vector<NamedSystem> standard_systems();

/// Resolves a canonical name ("S0".."S5", "S4T") or parses the inline syntax
///   "k=4,u=24,p=1,emin=-64,emax=64,mode=rstar[,w=32][,vnexact=0]"
///   "log:a=4194304,b=1073741824,w=32"
NamedSystem parse_system(std::string_view text);

/// Inline-syntax rendering, the inverse of parse_system for spec values.
std::string to_string(const SystemSpec& spec);
std::string to_string(const LogSystemSpec& spec);

}  // namespace radixlab
