/**************************************************************************************************
 * Apache License, Version 2.0
 * Copyright (c) 2026 the radixlab authors
 **************************************************************************************************/

#pragma once

#include <vector>

#include "radixlab/simarith.hpp"

namespace radixlab {

using Vec = std::vector<Real>;

/// Dense square matrix, row major. Elements are values of whatever system the
/// kernels' context simulates.
struct Mat {
  int n = 0;
  std::vector<Real> a;

  Mat() = default;
  explicit Mat(int size) : n(size), a(static_cast<size_t>(size) * size, 0.0L) {}

  Real& at(int r, int c) { return a[static_cast<size_t>(r) * n + c]; }
  Real at(int r, int c) const { return a[static_cast<size_t>(r) * n + c]; }
};

/// Solves A y = b by Gaussian elimination with complete pivoting, every multiply,
/// subtract and divide routed through the context. Row and column permutations
/// are tracked exactly; equal-magnitude pivot candidates resolve to the smallest
/// row index, then the smallest column index. Throws SingularMatrix on an exactly
/// zero pivot.
Vec gauss_solve_complete_pivot(const ArithContext& ctx, Mat A, Vec b);

/// Tridiagonal form of a symmetric matrix: diag[i] and offdiag[i] = T(i, i-1),
/// with offdiag[0] = 0.
struct Tridiag {
  Vec diag;
  Vec offdiag;
};

/// Householder reduction of a symmetric matrix to tridiagonal form (TRED1-style,
/// without accumulating transformations). The reflector sign is chosen so the
/// leading element grows instead of cancelling. A 2x2 input passes through
/// unchanged.
Tridiag householder_tridiagonalize(const ArithContext& ctx, Mat A);

/// Eigenvalues of a symmetric tridiagonal matrix by the shifted QL iteration
/// (TQL1-style), ascending. The deflation test compares subdiagonal entries
/// against macheps times a local scale and is the same formula for every
/// context; tol guards the shift division against degenerate denominators. At
/// most 30 sweeps per eigenvalue, then NoConvergence. n == 2 uses the closed
/// form to avoid pointless rounding.
Vec tridiag_eigen_ql(const ArithContext& ctx, Vec diag, Vec offdiag, Real macheps, Real tol);

/// Convenience: tridiagonalize then QL.
Vec symmetric_eigenvalues(const ArithContext& ctx, const Mat& A, Real macheps, Real tol);

Real frobenius_norm(const ArithContext& ctx, const Mat& A);
Real two_norm(const ArithContext& ctx, const Vec& v);

}  // namespace radixlab
