/**************************************************************************************************
 * Apache License, Version 2.0
 * Copyright (c) 2026 the radixlab authors
 **************************************************************************************************/

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "radixlab/numsys.hpp"
#include "radixlab/rng.hpp"
#include "radixlab/theory.hpp"

using namespace radixlab;

namespace {

const RoundingMode kAllModes[] = {RoundingMode::RStar, RoundingMode::TruncateTowardZero,
                                  RoundingMode::TruncateDownward, RoundingMode::VonNeumann};

SystemSpec tiny(int k, int u, RoundingMode mode) { return make_system(k, u, 1, -8, 8, mode); }

// All significands of one normalized binade.
std::vector<std::uint64_t> binade(const SystemSpec& spec) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t F = std::uint64_t{1} << (spec.u - spec.k); F < (std::uint64_t{1} << spec.u); ++F)
    out.push_back(F);
  return out;
}

}  // namespace

TEST_CASE("make_system validates the word budget and parameter domains") {
  SystemSpec s1 = make_system(1, 23, 2, -256, 256, RoundingMode::RStar, 32);
  CHECK(s1.beta() == 2);

  CHECK_THROWS_AS(make_system(2, 23, 2, -128, 128, RoundingMode::RStar, 32), InvalidSpec);

  SystemSpec s4 = make_system(4, 24, 1, -64, 64, RoundingMode::RStar, 32);
  CHECK(s4.beta() == 16);

  CHECK_THROWS_AS(make_system(0, 23, 1, -256, 256, RoundingMode::RStar), InvalidSpec);
  CHECK_THROWS_AS(make_system(4, 3, 1, -64, 64, RoundingMode::RStar), InvalidSpec);
  CHECK_THROWS_AS(make_system(1, 23, 1, 256, -256, RoundingMode::RStar), InvalidSpec);
  CHECK_THROWS_AS(make_system(1, 23, 1, -256, 256, RoundingMode::RStar, 32), InvalidSpec);
  CHECK_THROWS_AS(make_system(1, 23, 3, -256, 256, RoundingMode::RStar), InvalidSpec);
}

TEST_CASE("standard systems carry the word-32 range-512 parameters") {
  auto systems = standard_systems();
  REQUIRE(systems.size() == 7);
  CHECK(systems[0].name == "S0");
  REQUIRE(systems[0].is_log());
  const auto& s0 = std::get<LogSystemSpec>(systems[0].spec);
  CHECK(s0.a == (std::int64_t{1} << 22));
  CHECK(s0.b == (std::int64_t{1} << 30));
  CHECK(s0.w == 32);

  const auto& s2 = std::get<SystemSpec>(systems[2].spec);
  CHECK(systems[2].name == "S2");
  CHECK(s2.k == 2);
  CHECK(s2.u == 23);
  CHECK(s2.p == 1);

  for (auto& named : systems) {
    if (named.is_log()) continue;
    const auto& spec = std::get<SystemSpec>(named.spec);
    CHECK(range(spec) == 512.0L);
    CHECK(f_min(spec) == std::ldexp(1.0L, -256));
  }
  const auto& s4t = std::get<SystemSpec>(systems[5].spec);
  CHECK(systems[5].name == "S4T");
  CHECK(s4t.mode == RoundingMode::TruncateTowardZero);
}

TEST_CASE("value_of evaluates the significand form") {
  SystemSpec spec = make_system(1, 23, 2, -256, 256, RoundingMode::RStar, 32);
  CHECK(value_of(spec, FpValue::zero()) == 0.0L);
  CHECK(value_of(spec, FpValue{+1, 1, std::uint64_t{1} << 22}) == 1.0L);
  CHECK(value_of(spec, FpValue{-1, 0, std::uint64_t{3} << 21}) == -0.75L);
}

TEST_CASE("f_max, f_min and range follow the closed forms") {
  SystemSpec s4 = make_system(4, 24, 1, -64, 64, RoundingMode::RStar, 32);
  CHECK(f_min(s4) == std::ldexp(1.0L, -256));

  SystemSpec s1 = make_system(1, 23, 2, -256, 256, RoundingMode::RStar, 32);
  CHECK(range(s1) == 512.0L);

  SystemSpec s2 = make_system(2, 23, 1, -128, 128, RoundingMode::RStar, 32);
  CHECK(f_max(s2) == std::ldexp(1.0L, 256) * (1.0L - std::ldexp(1.0L, -23)));
  CHECK(range_exact(s2) < range(s2));
  CHECK(range(s2) - range_exact(s2) < 1e-6L);
}

TEST_CASE("fl resolves ties so the last fraction bit is one") {
  SystemSpec spec = tiny(1, 3, RoundingMode::RStar);
  // 0.1011b: halfway with an odd truncation -> keep
  FpValue kept = fl(spec, 0.6875L);
  CHECK(kept == FpValue{+1, 0, 5});
  // 0.1001b: halfway with an even truncation -> round up to odd
  FpValue bumped = fl(spec, 0.5625L);
  CHECK(bumped == FpValue{+1, 0, 5});
  // just below and above the tie go to the nearest
  CHECK(fl(spec, 0.5625L - 0.001L) == FpValue{+1, 0, 4});
  CHECK(fl(spec, 0.5625L + 0.001L) == FpValue{+1, 0, 5});
}

TEST_CASE("von Neumann rounding truncates and forces the last bit") {
  SystemSpec spec = tiny(1, 3, RoundingMode::VonNeumann);
  CHECK(fl(spec, 0.8125L) == FpValue{+1, 0, 7});  // 0.1101b -> 0.111b
  // exactly representable values pass through
  CHECK(fl(spec, 0.75L) == FpValue{+1, 0, 6});
  // unless the exception is disabled
  spec.vn_exact_exception = false;
  CHECK(fl(spec, 0.75L) == FpValue{+1, 0, 7});
}

TEST_CASE("exactly representable inputs are identities in all four modes") {
  for (RoundingMode mode : kAllModes) {
    SystemSpec spec = tiny(2, 6, mode);
    for (std::uint64_t F : binade(spec))
      for (int e : {-1, 0, 2}) {
        FpValue v{+1, e, F};
        CHECK(fl(spec, value_of(spec, v)) == v);
        FpValue neg{-1, e, F};
        CHECK(fl(spec, value_of(spec, neg)) == neg);
      }
  }
}

TEST_CASE("carry out of the fraction renormalizes") {
  SystemSpec spec = tiny(2, 6, RoundingMode::RStar);
  // just below 1.0: 63.75/64 rounds up to F=64 -> renormalized to F=16, e+1
  Real x = std::ldexp(63.9L, -6);
  FpValue v = fl(spec, x);
  CHECK(v == FpValue{+1, 1, 16});
  CHECK(value_of(spec, v) == 1.0L);
}

TEST_CASE("overflow and underflow are fatal configuration errors") {
  SystemSpec spec = tiny(1, 4, RoundingMode::RStar);
  CHECK_THROWS_AS(fl(spec, std::ldexp(1.0L, 9)), OverflowError);
  CHECK_THROWS_AS(fl(spec, std::ldexp(1.0L, -9)), UnderflowError);
  // slightly above f_max still rounds back down to it
  CHECK(value_of(spec, fl(spec, f_max(spec) * 1.0001L)) == f_max(spec));
  CHECK(fl(spec, f_min(spec)) == FpValue{+1, -7, 8});
  CHECK_THROWS_AS(fl(spec, f_min(spec) * 0.999L), UnderflowError);
  // exactly half an ulp above f_max ties back down to f_max (last bit already one)
  CHECK(value_of(spec, fl(spec, f_max(spec) + std::ldexp(1.0L, 8 - 4 - 1))) == f_max(spec));
  // anything beyond the tie rounds up past f_max and overflows rather than saturating
  CHECK_THROWS_AS(fl(spec, f_max(spec) + std::ldexp(1.0L, 8 - 4 - 1) + 1.0L), OverflowError);
}

TEST_CASE("round trip holds for every value and mode by enumeration at u <= 8") {
  for (RoundingMode mode : kAllModes) {
    for (auto [k, u] : {std::pair{1, 7}, std::pair{2, 8}, std::pair{3, 6}}) {
      SystemSpec spec = tiny(k, u, mode);
      for (std::uint64_t F : binade(spec))
        for (int e : {-2, 0, 1}) {
          FpValue pos{+1, e, F};
          CHECK(fl(spec, value_of(spec, pos)) == pos);
          FpValue neg{-1, e, F};
          CHECK(fl(spec, value_of(spec, neg)) == neg);
        }
    }
  }
}

TEST_CASE("R* rounding is sign symmetric") {
  SystemSpec spec = tiny(2, 8, RoundingMode::RStar);
  RngStream stream(21, "numsys", 0);
  for (int i = 0; i < 20000; ++i) {
    Real x = static_cast<Real>(stream.uniform_sym(4.0));
    if (x == 0.0L || ref_abs(x) < f_min(spec)) continue;
    FpValue plus = fl(spec, x);
    FpValue minus = fl(spec, -x);
    CHECK(value_of(spec, minus) == -value_of(spec, plus));
  }
}

TEST_CASE("R* picks the nearest representable value, ties to odd, by enumeration") {
  SystemSpec spec = tiny(2, 6, RoundingMode::RStar);
  // candidate values across three adjacent exponents
  std::vector<Real> candidates;
  for (int e : {-1, 0, 1})
    for (std::uint64_t F : binade(spec)) candidates.push_back(value_of(spec, FpValue{+1, e, F}));

  for (std::uint64_t F : binade(spec))
    for (int off = 0; off <= 8; ++off) {
      Real ulp = std::ldexp(1.0L, -spec.u);  // e = 0 binade
      Real x = static_cast<Real>(F) * ulp + static_cast<Real>(off) * ulp / 8.0L;
      if (x >= 1.0L) continue;
      Real rounded = value_of(spec, fl(spec, x));
      Real err = ref_abs(x - rounded);
      for (Real v : candidates) CHECK(err <= ref_abs(x - v));
      if (off == 4) {  // exact tie: result's last significand bit must be one
        CHECK((fl(spec, x).F & 1) == 1);
      }
    }
}

TEST_CASE("tie rounding is unbiased: exactly half of all ties round up in magnitude") {
  for (auto [k, u] : {std::pair{1, 8}, std::pair{2, 8}, std::pair{4, 8}}) {
    SystemSpec spec = tiny(k, u, RoundingMode::RStar);
    int up = 0, down = 0;
    for (std::uint64_t F : binade(spec)) {
      Real ulp = std::ldexp(1.0L, -spec.u);
      Real x = static_cast<Real>(F) * ulp + ulp / 2.0L;  // exact midpoint above F
      std::uint64_t rounded_to = fl(spec, x).F;
      if (rounded_to == F)
        ++down;
      else
        ++up;
    }
    CHECK(up == down);
  }
}

TEST_CASE("fl is monotone in every mode") {
  for (RoundingMode mode : kAllModes) {
    SystemSpec spec = tiny(2, 6, mode);
    std::vector<Real> xs;
    for (std::uint64_t F : binade(spec))
      for (int off = 0; off < 8; ++off)
        for (int e : {-1, 0}) {
          Real ulp = std::ldexp(1.0L, 2 * e - spec.u);
          xs.push_back(static_cast<Real>(F) * ulp + static_cast<Real>(off) * ulp / 8.0L);
        }
    std::sort(xs.begin(), xs.end());
    Real prev = -f_max(spec);
    for (Real x : xs) {
      Real rounded = value_of(spec, fl(spec, x));
      CHECK(rounded >= prev);
      prev = rounded;
      // negatives mirror: check the downward sweep too
    }
    std::vector<Real> negs;
    for (Real x : xs) negs.push_back(-x);
    std::sort(negs.begin(), negs.end());
    prev = -f_max(spec);
    for (Real x : negs) {
      Real rounded = value_of(spec, fl(spec, x));
      CHECK(rounded >= prev);
      prev = rounded;
    }
  }
}

TEST_CASE("truncation inequalities") {
  SystemSpec chop = tiny(2, 7, RoundingMode::TruncateTowardZero);
  SystemSpec down = tiny(2, 7, RoundingMode::TruncateDownward);
  RngStream stream(22, "numsys", 1);
  for (int i = 0; i < 20000; ++i) {
    Real x = static_cast<Real>(stream.uniform_sym(8.0));
    if (x == 0.0L || ref_abs(x) < f_min(chop)) continue;
    CHECK(ref_abs(value_of(chop, fl(chop, x))) <= ref_abs(x));
    CHECK(value_of(down, fl(down, x)) <= x);
  }
}

TEST_CASE("worst relative error by exhaustive search over one binade at u <= 10") {
  for (auto [k, u] : {std::pair{1, 10}, std::pair{2, 10}, std::pair{4, 8}}) {
    SystemSpec rstar = tiny(k, u, RoundingMode::RStar);
    SystemSpec chop = tiny(k, u, RoundingMode::TruncateTowardZero);
    Real ulp = std::ldexp(1.0L, -u);  // e = 0 binade
    Real worst_rstar = 0.0L, worst_chop = 0.0L;
    for (std::uint64_t F : binade(rstar)) {
      Real v = static_cast<Real>(F) * ulp;
      Real tie = v + ulp / 2.0L;
      Real err = ref_abs(tie - value_of(rstar, fl(rstar, tie))) / tie;
      worst_rstar = std::max(worst_rstar, err);
      Real nearly_up = v + ulp * (1.0L - std::ldexp(1.0L, -12));
      if (nearly_up < 1.0L) {
        Real cerr = ref_abs(nearly_up - value_of(chop, fl(chop, nearly_up))) / nearly_up;
        worst_chop = std::max(worst_chop, cerr);
      }
    }
    // the exact suprema are eps/(1+eps) and 2eps/(1+2eps); the closed forms drop
    // the second-order term, so allow for it explicitly
    auto eps = static_cast<Real>(theory::eps_worst(k, u));
    CHECK(worst_rstar <= eps);
    CHECK(worst_rstar >= eps * (1.0L - 2.0L * eps));
    CHECK(worst_chop <= 2.0L * eps);
    CHECK(worst_chop >= 2.0L * eps * (1.0L - 4.0L * eps - 0.001L));
  }
}

TEST_CASE("sampled worst case approaches 2^(k-u-1) for the standard systems") {
  for (auto& named : standard_systems()) {
    if (named.is_log()) continue;
    const auto& spec = std::get<SystemSpec>(named.spec);
    if (spec.mode != RoundingMode::RStar) continue;
    RngStream stream(23, "numsys", fnv1a64(named.name));
    Real worst = 0.0L;
    for (int i = 0; i < 1000000; ++i) {
      Real x = std::exp2(static_cast<Real>(spec.k) * (static_cast<Real>(stream.uniform01()) - 1.0L));
      Real err = ref_abs(x - value_of(spec, fl(spec, x))) / x;
      worst = std::max(worst, err);
    }
    auto eps = static_cast<Real>(theory::eps_worst(spec.k, spec.u));
    CHECK(worst <= eps);
    CHECK(worst >= 0.95L * eps);
  }
}

TEST_CASE("logarithmic encoding follows the code formula") {
  LogSystemSpec s0 = make_log_system(std::int64_t{1} << 22, std::int64_t{1} << 30, 32);
  CHECK(fl_log(s0, 0.0L) == LogValue{0});
  CHECK(fl_log(s0, 1.0L) == LogValue{std::int64_t{1} << 30});
  CHECK(fl_log(s0, 2.0L) == LogValue{(std::int64_t{1} << 30) + (std::int64_t{1} << 22)});
  CHECK(fl_log(s0, -2.0L) == LogValue{-((std::int64_t{1} << 30) + (std::int64_t{1} << 22))});

  CHECK(ref_abs(log_f_max(s0) / std::ldexp(1.0L, 256) - 1.0L) < 1e-4L);
  CHECK(ref_abs(log_f_min(s0) / std::ldexp(1.0L, -256) - 1.0L) < 1e-4L);
  CHECK(ref_abs(log_range(s0) - 512.0L) < 1e-3L);

  CHECK_THROWS_AS(make_log_system(0, 1, 32), InvalidSpec);
  CHECK_THROWS_AS(make_log_system(4, 0, 32), InvalidSpec);
  CHECK_THROWS_AS(make_log_system(4, std::int64_t{1} << 40, 32), InvalidSpec);
}

TEST_CASE("log-system relative error never exceeds 2^(1/2a) - 1") {
  LogSystemSpec s0 = make_log_system(std::int64_t{1} << 22, std::int64_t{1} << 30, 32);
  Real bound = std::exp2(0.5L / static_cast<Real>(s0.a)) - 1.0L;
  RngStream stream(24, "numsys", 2);
  for (int i = 0; i < 200000; ++i) {
    Real x = std::exp2(static_cast<Real>(stream.uniform_sym(250.0)));
    Real err = ref_abs(x - value_of(s0, fl_log(s0, x))) / x;
    CHECK(err <= bound);
  }
}

TEST_CASE("log-system codes are uniformly spaced in log2 with spacing 1/a") {
  LogSystemSpec spec = make_log_system(64, 4096, 16);
  Real spacing = 1.0L / 64.0L;
  for (std::int64_t code = 1000; code < 1100; ++code) {
    Real lo = value_of(spec, LogValue{code});
    Real hi = value_of(spec, LogValue{code + 1});
    CHECK(ref_abs(ref_log2(hi) - ref_log2(lo) - spacing) < 1e-15L);
    CHECK(fl_log(spec, lo) == LogValue{code});
  }
}

TEST_CASE("log-system overflow and underflow") {
  LogSystemSpec spec = make_log_system(64, 4096, 16);
  CHECK_THROWS_AS(fl_log(spec, log_f_max(spec) * 2.0L), OverflowError);
  CHECK_THROWS_AS(fl_log(spec, log_f_min(spec) / 2.0L), UnderflowError);
}

TEST_CASE("parse_system resolves names and the inline syntaxes") {
  NamedSystem s2 = parse_system("S2");
  REQUIRE(!s2.is_log());
  CHECK(std::get<SystemSpec>(s2.spec).k == 2);

  NamedSystem inline_fp = parse_system("k=4,u=24,p=1,emin=-64,emax=64,mode=rstar");
  REQUIRE(!inline_fp.is_log());
  const auto& spec = std::get<SystemSpec>(inline_fp.spec);
  CHECK(spec.k == 4);
  CHECK(spec.u == 24);
  CHECK(spec.e_min == -64);
  CHECK(parse_system(to_string(spec)).name == inline_fp.name);

  NamedSystem inline_log = parse_system("log:a=4194304,b=1073741824,w=32");
  REQUIRE(inline_log.is_log());
  CHECK(std::get<LogSystemSpec>(inline_log.spec).a == 4194304);

  NamedSystem vn = parse_system("k=4,u=24,p=1,emin=-64,emax=64,mode=vn,vnexact=0");
  CHECK(std::get<SystemSpec>(vn.spec).mode == RoundingMode::VonNeumann);
  CHECK(!std::get<SystemSpec>(vn.spec).vn_exact_exception);

  CHECK_THROWS_AS(parse_system(""), InvalidSpec);
  CHECK_THROWS_AS(parse_system("k=1"), InvalidSpec);
  CHECK_THROWS_AS(parse_system("k=1,u=23,emin=-256,emax=256,mode=sideways"), InvalidSpec);
  CHECK_THROWS_AS(parse_system("log:a=4"), InvalidSpec);
}
