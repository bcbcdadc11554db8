/**************************************************************************************************
 * Apache License, Version 2.0
 * Copyright (c) 2026 the radixlab authors
 **************************************************************************************************/

#pragma once

#include <vector>

namespace radixlab::theory {

// Closed-form worst-case and rms relative representation errors for base-2^k
// systems with a u-bit fraction, and the corresponding ideals of a logarithmic
// system with the same range R and word length w. All logarithms are natural.
// First-order expressions: terms of order 2^-2u and a^-2 are neglected.

/// Worst relative error of rounding to nearest: 2^(k-u-1). Chopping doubles it.
double eps_worst(int k, int u);

/// Best possible worst-case error at range R and word length w: R * 2^-w * ln 2.
double eps0(double R, int w);

/// Worst-case penalty ratio eps/eps0 = 2^k / (k * p * ln 2).
double f1(int k, int p);

/// Rms error of the logarithmic ideal: eps0 / sqrt(3).
double delta0(double R, int w);

/// Rms relative error under a log-uniform operand distribution:
/// 2^-u * sqrt((4^k - 1) / (24 k ln 2)).
double delta_rms(int k, int u);

/// Rms penalty ratio delta_rms/delta0 = sqrt((4^k - 1) / (2 p^2 (k ln 2)^3)).
double f2(int k, int p);

/// Probability density of the relative rounding error delta for round-to-nearest:
/// flat at 2^u (1 - 2^-k) / (k ln 2) inside |delta| < 2^(-u-1), then
/// (1/(2|delta|) - 2^(u-k)) / (k ln 2) out to 2^(k-u-1), zero beyond.
double delta_density(int k, int u, double delta);

/// First-order bound on the relative error of a chain of n rounded
/// multiplications: n * eps (the neglected term is of order n^2 eps^2).
double product_error_bound(int n, double eps);

struct TheoryRow {
  int k;
  int p;
  int beta;
  double f1;
  double f2;
};

/// The nine (k, p) penalty rows: implicit-bit base 2 first, then explicit bases
/// 2, 4, 8, ..., 256.
std::vector<TheoryRow> table1();

}  // namespace radixlab::theory
