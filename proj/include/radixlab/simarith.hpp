/**************************************************************************************************
 * Apache License, Version 2.0
 * Copyright (c) 2026 the radixlab authors
 **************************************************************************************************/

#pragma once

#include <cmath>
#include <string>

#include "radixlab/numsys.hpp"
#include "radixlab/refarith.hpp"

namespace radixlab {

/// Arithmetic route for a simulated computation: every operation is evaluated
/// exactly in reference arithmetic and the result is rounded back into the chosen
/// system. The reference context skips the rounding and so reproduces refarith
/// bit for bit. Contexts are immutable values.
class ArithContext {
 public:
  enum class Kind { Reference, Floating, Logarithmic };

  static ArithContext reference() { return ArithContext(Kind::Reference); }
  static ArithContext floating(const SystemSpec& spec) {
    ArithContext ctx(Kind::Floating);
    ctx.fp_ = spec;
    return ctx;
  }
  static ArithContext logarithmic(const LogSystemSpec& spec) {
    ArithContext ctx(Kind::Logarithmic);
    ctx.log_ = spec;
    return ctx;
  }
  static ArithContext for_system(const NamedSystem& named) {
    if (named.is_log()) return logarithmic(std::get<LogSystemSpec>(named.spec));
    return floating(std::get<SystemSpec>(named.spec));
  }

  Kind kind() const { return kind_; }
  bool is_reference() const { return kind_ == Kind::Reference; }
  const SystemSpec& fp_spec() const { return fp_; }
  const LogSystemSpec& log_spec() const { return log_; }

  /// Quantizes a real into the context's system (identity for the reference context).
  Real round(Real x) const {
    switch (kind_) {
      case Kind::Reference: return x;
      case Kind::Floating: return value_of(fp_, fl(fp_, x));
      case Kind::Logarithmic: return value_of(log_, fl_log(log_, x));
    }
    return x;
  }

  /// Worst relative error of a single rounded operation in this context.
  Real worst_relative_error() const {
    switch (kind_) {
      case Kind::Reference:
        return std::ldexp(1.0L, -kRefSignificandBits);
      case Kind::Floating:
        // One unit for chopping and the forced-bit rule, half a unit for nearest.
        return spec_mode_is_nearest()
                   ? std::ldexp(1.0L, fp_.k - fp_.u - 1)
                   : std::ldexp(1.0L, fp_.k - fp_.u);
      case Kind::Logarithmic:
        return std::exp2(0.5L / static_cast<Real>(log_.a)) - 1.0L;
    }
    return 0.0L;
  }

  std::string describe() const {
    switch (kind_) {
      case Kind::Reference: return "ref";
      case Kind::Floating: return to_string(fp_);
      case Kind::Logarithmic: return to_string(log_);
    }
    return {};
  }

 private:
  explicit ArithContext(Kind kind) : kind_(kind) {}
  bool spec_mode_is_nearest() const { return fp_.mode == RoundingMode::RStar; }

  Kind kind_;
  SystemSpec fp_{};
  LogSystemSpec log_{};
};

inline Real sim_add(const ArithContext& ctx, Real a, Real b) { return ctx.round(ref_add(a, b)); }
inline Real sim_sub(const ArithContext& ctx, Real a, Real b) { return ctx.round(ref_sub(a, b)); }
inline Real sim_mul(const ArithContext& ctx, Real a, Real b) { return ctx.round(ref_mul(a, b)); }
inline Real sim_div(const ArithContext& ctx, Real a, Real b) { return ctx.round(ref_div(a, b)); }
inline Real sim_sqrt(const ArithContext& ctx, Real a) { return ctx.round(ref_sqrt(a)); }

// Sign manipulation and comparison never round.
inline Real sim_abs(const ArithContext&, Real a) { return ref_abs(a); }
inline Real sim_neg(const ArithContext&, Real a) { return -a; }
inline int sim_cmp(const ArithContext&, Real a, Real b) { return a < b ? -1 : (a > b ? 1 : 0); }

}  // namespace radixlab
