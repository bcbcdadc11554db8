/**************************************************************************************************
 * Apache License, Version 2.0
 * Copyright (c) 2026 the radixlab authors
 **************************************************************************************************/

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <string>

#include "radixlab/numsys.hpp"
#include "radixlab/rng.hpp"
#include "radixlab/theory.hpp"

using namespace radixlab;

namespace {

std::string sig3(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// Composite Simpson over [lo, hi].
double integrate(int k, int u, double lo, double hi, int panels, int power) {
  auto f = [&](double d) {
    double w = theory::delta_density(k, u, d);
    for (int t = 0; t < power; ++t) w *= d;
    return w;
  };
  double h = (hi - lo) / panels;
  double acc = f(lo) + f(hi);
  for (int i = 1; i < panels; ++i) acc += f(lo + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
  return acc * h / 3.0;
}

}  // namespace

TEST_CASE("worst-case and ideal error formulas") {
  CHECK(theory::eps_worst(4, 24) == std::ldexp(1.0, -21));
  CHECK(theory::eps_worst(1, 1) == 0.5);
  CHECK(theory::eps0(512, 32) == doctest::Approx(8.2625e-8).epsilon(1e-4));
  CHECK(theory::eps0(4294967296.0, 32) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(theory::delta0(512, 32) == doctest::Approx(4.7703e-8).epsilon(1e-4));
  CHECK(theory::delta0(512, 32) == theory::eps0(512, 32) / std::sqrt(3.0));
}

TEST_CASE("the penalty columns reproduce the published three-figure values") {
  CHECK(sig3(theory::f1(1, 2)) == "1.44");
  CHECK(sig3(theory::f1(1, 1)) == "2.89");
  CHECK(sig3(theory::f1(2, 1)) == "2.89");
  CHECK(sig3(theory::f1(3, 1)) == "3.85");
  CHECK(sig3(theory::f1(4, 1)) == "5.77");
  CHECK(sig3(theory::f1(5, 1)) == "9.23");
  CHECK(sig3(theory::f1(6, 1)) == "15.4");
  CHECK(sig3(theory::f1(7, 1)) == "26.4");
  CHECK(sig3(theory::f1(8, 1)) == "46.2");

  CHECK(sig3(theory::f2(1, 2)) == "1.06");
  CHECK(sig3(theory::f2(1, 1)) == "2.12");
  CHECK(sig3(theory::f2(2, 1)) == "1.68");
  CHECK(sig3(theory::f2(3, 1)) == "1.87");
  CHECK(sig3(theory::f2(4, 1)) == "2.45");
  CHECK(sig3(theory::f2(5, 1)) == "3.51");
  CHECK(sig3(theory::f2(6, 1)) == "5.34");
  CHECK(sig3(theory::f2(7, 1)) == "8.47");
  CHECK(sig3(theory::f2(8, 1)) == "13.9");
}

TEST_CASE("rms formulas") {
  CHECK(theory::delta_rms(4, 24) == doctest::Approx(1.1668e-7).epsilon(1e-4));
  CHECK(theory::delta_rms(1, 20) ==
        doctest::Approx(std::ldexp(0.424660900144, -20)).epsilon(1e-9));
}

TEST_CASE("table ordering properties") {
  auto rows = theory::table1();
  REQUIRE(rows.size() == 9);
  CHECK(rows[0].k == 1);
  CHECK(rows[0].p == 2);
  CHECK(rows[1].k == 1);
  CHECK(rows[1].p == 1);

  for (int k = 1; k <= 8; ++k) CHECK(theory::f1(1, 2) < theory::f1(k, 1));
  CHECK(theory::f1(1, 1) == theory::f1(2, 1));

  // implicit base 2 best; base 4 best explicit, then 8, then explicit 2, then 16 up
  CHECK(theory::f2(1, 2) < theory::f2(2, 1));
  CHECK(theory::f2(2, 1) < theory::f2(3, 1));
  CHECK(theory::f2(3, 1) < theory::f2(1, 1));
  CHECK(theory::f2(1, 1) < theory::f2(4, 1));
  CHECK(theory::f2(4, 1) < theory::f2(5, 1));
  CHECK(theory::f2(5, 1) < theory::f2(6, 1));
  CHECK(theory::f2(6, 1) < theory::f2(7, 1));
  CHECK(theory::f2(7, 1) < theory::f2(8, 1));
}

TEST_CASE("the error density is a normalized, even, mean-free density") {
  for (auto [k, u] : {std::pair{1, 22}, std::pair{2, 23}, std::pair{4, 24}, std::pair{8, 25}}) {
    double outer = std::ldexp(1.0, k - u - 1);
    double total = integrate(k, u, -outer, outer, 1 << 16, 0);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-6));

    double mean = integrate(k, u, -outer, outer, 1 << 16, 1);
    CHECK(std::fabs(mean) < 1e-12 * outer);

    double second = integrate(k, u, -outer, outer, 1 << 16, 2);
    double rms = theory::delta_rms(k, u);
    CHECK(second == doctest::Approx(rms * rms).epsilon(1e-5));

    CHECK(theory::delta_density(k, u, 0.3 * outer) == theory::delta_density(k, u, -0.3 * outer));
  }
}

TEST_CASE("the density's middle branch is live for base 2") {
  int u = 22;
  double d = 0.75 * std::ldexp(1.0, -u);
  CHECK(theory::delta_density(1, u, d) > 0.0);
  CHECK(theory::delta_density(1, u, std::ldexp(1.2, -u)) == 0.0);
}

TEST_CASE("product error bound") {
  CHECK(theory::product_error_bound(1, 0.25) == 0.25);
  CHECK(theory::product_error_bound(50, std::ldexp(1.0, -22)) == 50 * std::ldexp(1.0, -22));
}

TEST_CASE("truncation doubles the worst case") {
  for (int k : {1, 2, 4, 8})
    CHECK(2.0 * theory::eps_worst(k, 24) == std::ldexp(1.0, k - 24));
}

TEST_CASE("delta_rms matches a Monte Carlo estimate within half a percent") {
  for (auto [k, u] : {std::pair{1, 23}, std::pair{4, 24}}) {
    SystemSpec spec = make_system(k, u, 1, -256 / k, 256 / k, RoundingMode::RStar, 0);
    RngStream stream(41, "theory", static_cast<std::uint64_t>(k));
    double sum_sq = 0.0;
    const int samples = 1000000;
    for (int i = 0; i < samples; ++i) {
      Real x = std::exp2(static_cast<Real>(k) * (static_cast<Real>(stream.uniform01()) - 1.0L));
      auto delta = static_cast<double>(ref_sub(x, value_of(spec, fl(spec, x))) / x);
      sum_sq += delta * delta;
    }
    double empirical = std::sqrt(sum_sq / samples);
    CHECK(empirical == doctest::Approx(theory::delta_rms(k, u)).epsilon(0.005));
  }
}

TEST_CASE("delta0 matches the logarithmic system's Monte Carlo rms within half a percent") {
  LogSystemSpec spec = make_log_system(std::int64_t{1} << 22, std::int64_t{1} << 30, 32);
  RngStream stream(42, "theory", 9);
  double sum_sq = 0.0;
  const int samples = 1000000;
  for (int i = 0; i < samples; ++i) {
    Real x = std::exp2(static_cast<Real>(8.0 * stream.uniform01() - 4.0));
    auto delta = static_cast<double>(ref_sub(x, value_of(spec, fl_log(spec, x))) / x);
    sum_sq += delta * delta;
  }
  double empirical = std::sqrt(sum_sq / samples);
  CHECK(empirical == doctest::Approx(theory::delta0(512, 32)).epsilon(0.005));
}
