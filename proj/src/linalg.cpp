/**************************************************************************************************
 * Apache License, Version 2.0
 * Copyright (c) 2026 the radixlab authors
 **************************************************************************************************/

#include "radixlab/linalg.hpp"

#include <algorithm>
#include <utility>

namespace radixlab {

Vec gauss_solve_complete_pivot(const ArithContext& ctx, Mat A, Vec b) {
  const int n = A.n;
  if (b.size() != static_cast<size_t>(n))
    throw InvalidSpec("gauss_solve_complete_pivot: matrix/vector size mismatch");
  std::vector<int> col_of(n);  // col_of[j]: original column now in position j
  for (int j = 0; j < n; ++j) col_of[j] = j;

  for (int s = 0; s < n; ++s) {
    // Largest |a(r,c)| over the remaining submatrix; first hit wins ties.
    int pr = s, pc = s;
    Real best = sim_abs(ctx, A.at(s, s));
    for (int r = s; r < n; ++r)
      for (int c = s; c < n; ++c) {
        Real mag = sim_abs(ctx, A.at(r, c));
        if (mag > best) {
          best = mag;
          pr = r;
          pc = c;
        }
      }
    if (best == 0.0L) throw SingularMatrix("zero pivot at elimination step " + std::to_string(s));

    if (pr != s) {
      for (int c = 0; c < n; ++c) std::swap(A.at(s, c), A.at(pr, c));
      std::swap(b[s], b[pr]);
    }
    if (pc != s) {
      for (int r = 0; r < n; ++r) std::swap(A.at(r, s), A.at(r, pc));
      std::swap(col_of[s], col_of[pc]);
    }

    for (int r = s + 1; r < n; ++r) {
      if (A.at(r, s) == 0.0L) continue;
      Real factor = sim_div(ctx, A.at(r, s), A.at(s, s));
      for (int c = s + 1; c < n; ++c)
        A.at(r, c) = sim_sub(ctx, A.at(r, c), sim_mul(ctx, factor, A.at(s, c)));
      b[r] = sim_sub(ctx, b[r], sim_mul(ctx, factor, b[s]));
    }
  }

  Vec y(n, 0.0L);
  for (int r = n - 1; r >= 0; --r) {
    Real acc = b[r];
    for (int c = r + 1; c < n; ++c)
      acc = sim_sub(ctx, acc, sim_mul(ctx, A.at(r, c), y[c]));
    y[r] = sim_div(ctx, acc, A.at(r, r));
  }

  Vec x(n, 0.0L);
  for (int j = 0; j < n; ++j) x[col_of[j]] = y[j];
  return x;
}

Tridiag householder_tridiagonalize(const ArithContext& ctx, Mat A) {
  const int n = A.n;
  Tridiag t;
  t.diag.assign(n, 0.0L);
  t.offdiag.assign(n, 0.0L);

  Vec v(n, 0.0L), q(n, 0.0L);
  for (int i = n - 1; i >= 1; --i) {
    if (i == 1) {
      // Nothing left to annihilate; copying avoids pointless rounding at n == 2.
      t.offdiag[1] = A.at(1, 0);
      break;
    }

    Real scale = 0.0L;
    for (int k = 0; k < i; ++k) scale = sim_add(ctx, scale, sim_abs(ctx, A.at(i, k)));
    if (scale == 0.0L) {
      t.offdiag[i] = 0.0L;
      continue;
    }

    // Scaled Householder vector and its squared length.
    Real h = 0.0L;
    for (int k = 0; k < i; ++k) {
      v[k] = sim_div(ctx, A.at(i, k), scale);
      h = sim_add(ctx, h, sim_mul(ctx, v[k], v[k]));
    }
    Real f = v[i - 1];
    Real g = sim_sqrt(ctx, h);
    if (f > 0.0L) g = sim_neg(ctx, g);  // opposite sign to f, so f - g cannot cancel
    t.offdiag[i] = sim_mul(ctx, scale, g);
    h = sim_sub(ctx, h, sim_mul(ctx, f, g));
    v[i - 1] = sim_sub(ctx, f, g);

    // p = A v / h over the leading i x i block (symmetric, lower triangle held),
    // then q = p - v * (v.p) / (2h) and the rank-two update A -= v q^T + q v^T.
    Real vp = 0.0L;
    for (int j = 0; j < i; ++j) {
      Real p = 0.0L;
      for (int k = 0; k <= j; ++k) p = sim_add(ctx, p, sim_mul(ctx, A.at(j, k), v[k]));
      for (int k = j + 1; k < i; ++k) p = sim_add(ctx, p, sim_mul(ctx, A.at(k, j), v[k]));
      q[j] = sim_div(ctx, p, h);
      vp = sim_add(ctx, vp, sim_mul(ctx, q[j], v[j]));
    }
    Real kappa = sim_div(ctx, vp, sim_add(ctx, h, h));
    for (int j = 0; j < i; ++j) q[j] = sim_sub(ctx, q[j], sim_mul(ctx, kappa, v[j]));
    for (int j = 0; j < i; ++j)
      for (int k = 0; k <= j; ++k) {
        A.at(j, k) = sim_sub(ctx, A.at(j, k), sim_mul(ctx, v[j], q[k]));
        A.at(j, k) = sim_sub(ctx, A.at(j, k), sim_mul(ctx, v[k], q[j]));
      }
  }

  for (int i = 0; i < n; ++i) t.diag[i] = A.at(i, i);
  return t;
}

namespace {

// Closed-form 2x2 symmetric eigenvalues through the context. The eigenvalues
// are written as d0 - t and d1 + t with the cancellation-free correction
// t = sign(d1-d0) * 2e^2 / (sqrt((d1-d0)^2 + 4e^2) + |d1-d0|), so every rounded
// intermediate has a generic magnitude and only the two final operations work
// at the scale of the eigenvalues themselves.
Vec eigen_2x2(const ArithContext& ctx, Real d0, Real d1, Real e) {
  if (e == 0.0L) {
    if (d0 > d1) std::swap(d0, d1);
    return {d0, d1};
  }
  Real diff = sim_sub(ctx, d1, d0);
  Real e2 = sim_add(ctx, e, e);
  Real disc = sim_sqrt(ctx, sim_add(ctx, sim_mul(ctx, diff, diff), sim_mul(ctx, e2, e2)));
  Real t = sim_div(ctx, sim_mul(ctx, e2, e), sim_add(ctx, disc, sim_abs(ctx, diff)));
  if (diff < 0.0L) t = sim_neg(ctx, t);
  Real lo = sim_sub(ctx, d0, t);
  Real hi = sim_add(ctx, d1, t);
  if (lo > hi) std::swap(lo, hi);
  return {lo, hi};
}

}  // namespace

Vec tridiag_eigen_ql(const ArithContext& ctx, Vec d, Vec e, Real macheps, Real tol) {
  const int n = static_cast<int>(d.size());
  if (e.size() != d.size()) throw InvalidSpec("tridiag_eigen_ql: diag/offdiag length mismatch");
  if (n == 0) return {};
  if (n == 1) return {d[0]};
  if (n == 2) return eigen_2x2(ctx, d[0], d[1], e[1]);

  Real eps = ctx.round(macheps);
  Real guard = ctx.round(tol);

  // Shift the subdiagonal down one slot; e[n-1] = 0 terminates the deflation scan.
  for (int i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = 0.0L;

  Real shift_total = 0.0L;
  Real floor_b = 0.0L;
  for (int l = 0; l < n; ++l) {
    int sweeps = 0;
    Real h = sim_mul(ctx, eps, sim_add(ctx, sim_abs(ctx, d[l]), sim_abs(ctx, e[l])));
    if (floor_b < h) floor_b = h;

    int m = l;
    while (m < n - 1 && sim_abs(ctx, e[m]) > floor_b) ++m;

    if (m != l) {
      do {
        if (sweeps == 30) throw NoConvergence(l);
        ++sweeps;

        // Shift from the leading 2x2; denominator sign chosen against cancellation.
        Real g = d[l];
        Real p = sim_div(ctx, sim_sub(ctx, d[l + 1], g), sim_add(ctx, e[l], e[l]));
        Real r = sim_sqrt(ctx, sim_add(ctx, sim_mul(ctx, p, p), ctx.round(1.0L)));
        Real den = p < 0.0L ? sim_sub(ctx, p, r) : sim_add(ctx, p, r);
        if (sim_abs(ctx, den) < guard) den = den < 0.0L ? sim_neg(ctx, guard) : guard;
        d[l] = sim_div(ctx, e[l], den);
        h = sim_sub(ctx, g, d[l]);
        for (int i = l + 1; i < n; ++i) d[i] = sim_sub(ctx, d[i], h);
        shift_total = sim_add(ctx, shift_total, h);

        // One QL sweep of plane rotations, bottom up.
        p = d[m];
        Real c = ctx.round(1.0L);
        Real s = 0.0L;
        for (int i = m - 1; i >= l; --i) {
          g = sim_mul(ctx, c, e[i]);
          h = sim_mul(ctx, c, p);
          if (sim_abs(ctx, p) >= sim_abs(ctx, e[i])) {
            // p == 0 here forces e[i] == 0 as well: the sweep has split and the
            // rotation is undefined. Surface it as a convergence failure.
            if (p == 0.0L) throw NoConvergence(l);
            c = sim_div(ctx, e[i], p);
            r = sim_sqrt(ctx, sim_add(ctx, sim_mul(ctx, c, c), ctx.round(1.0L)));
            e[i + 1] = sim_mul(ctx, sim_mul(ctx, s, p), r);
            s = sim_div(ctx, c, r);
            c = sim_div(ctx, ctx.round(1.0L), r);
          } else {
            c = sim_div(ctx, p, e[i]);
            r = sim_sqrt(ctx, sim_add(ctx, sim_mul(ctx, c, c), ctx.round(1.0L)));
            e[i + 1] = sim_mul(ctx, sim_mul(ctx, s, e[i]), r);
            s = sim_div(ctx, ctx.round(1.0L), r);
            c = sim_div(ctx, c, r);
          }
          p = sim_sub(ctx, sim_mul(ctx, c, d[i]), sim_mul(ctx, s, g));
          d[i + 1] = sim_add(ctx, h, sim_mul(ctx, s, sim_add(ctx, sim_mul(ctx, c, g), sim_mul(ctx, s, d[i]))));
        }
        e[l] = sim_mul(ctx, s, p);
        d[l] = sim_mul(ctx, c, p);
      } while (sim_abs(ctx, e[l]) > floor_b);
    }

    d[l] = sim_add(ctx, d[l], shift_total);
  }

  std::sort(d.begin(), d.end());
  return d;
}

Vec symmetric_eigenvalues(const ArithContext& ctx, const Mat& A, Real macheps, Real tol) {
  Tridiag t = householder_tridiagonalize(ctx, A);
  return tridiag_eigen_ql(ctx, std::move(t.diag), std::move(t.offdiag), macheps, tol);
}

Real frobenius_norm(const ArithContext& ctx, const Mat& A) {
  Real acc = 0.0L;
  for (int r = 0; r < A.n; ++r)
    for (int c = 0; c < A.n; ++c)
      acc = sim_add(ctx, acc, sim_mul(ctx, A.at(r, c), A.at(r, c)));
  return sim_sqrt(ctx, acc);
}

Real two_norm(const ArithContext& ctx, const Vec& v) {
  Real acc = 0.0L;
  for (Real x : v) acc = sim_add(ctx, acc, sim_mul(ctx, x, x));
  return sim_sqrt(ctx, acc);
}

}  // namespace radixlab
