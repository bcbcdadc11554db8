/**************************************************************************************************
 * Apache License, Version 2.0
 * Copyright (c) 2026 the radixlab authors
 **************************************************************************************************/

#include "radixlab/theory.hpp"

#include <cmath>

namespace radixlab::theory {
namespace {
constexpr double kLn2 = 0.69314718055994530942;
}

double eps_worst(int k, int u) { return std::ldexp(1.0, k - u - 1); }

double eps0(double R, int w) { return R * std::ldexp(kLn2, -w); }

double f1(int k, int p) { return std::ldexp(1.0, k) / (k * p * kLn2); }

double delta0(double R, int w) { return eps0(R, w) / std::sqrt(3.0); }

double delta_rms(int k, int u) {
  double four_k = std::ldexp(1.0, 2 * k);
  return std::ldexp(std::sqrt((four_k - 1.0) / (24.0 * k * kLn2)), -u);
}

double f2(int k, int p) {
  double four_k = std::ldexp(1.0, 2 * k);
  double kl = k * kLn2;
  return std::sqrt((four_k - 1.0) / (2.0 * p * p * kl * kl * kl));
}

double delta_density(int k, int u, double delta) {
  double ad = std::fabs(delta);
  double inner = std::ldexp(1.0, -u - 1);
  double outer = std::ldexp(1.0, k - u - 1);
  if (ad < inner) return std::ldexp(1.0 - std::ldexp(1.0, -k), u) / (k * kLn2);
  if (ad < outer) return (0.5 / ad - std::ldexp(1.0, u - k)) / (k * kLn2);
  return 0.0;
}

double product_error_bound(int n, double eps) { return n * eps; }

std::vector<TheoryRow> table1() {
  std::vector<TheoryRow> rows;
  rows.push_back({1, 2, 2, f1(1, 2), f2(1, 2)});
  for (int k = 1; k <= 8; ++k) rows.push_back({k, 1, 1 << k, f1(k, 1), f2(k, 1)});
  return rows;
}

}  // namespace radixlab::theory
