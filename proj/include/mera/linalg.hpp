// SPDX-License-Identifier: MIT
//
// Dense complex linear algebra at working precision: matrices, linear
// solves, least squares, one-sided Jacobi SVD, and null-space extraction.
//
// The SVD uses one-sided Jacobi rotations on columns: slower than
// Golub-Kahan but delivers high relative accuracy for small singular
// values, which is exactly what graded Hankel spectra need.

#pragma once

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "mera/complex.hpp"

namespace mera {

/// Dense complex matrix, row-major entry order.
struct CMatrix {
  long rows = 0, cols = 0;
  std::vector<Complex> a;

  CMatrix() = default;
  CMatrix(long r, long c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}

  Complex& operator()(long i, long j) { return a[static_cast<size_t>(i) * cols + j]; }
  const Complex& operator()(long i, long j) const {
    return a[static_cast<size_t>(i) * cols + j];
  }

  static CMatrix identity(long n) {
    CMatrix m(n, n);
    for (long i = 0; i < n; ++i) m(i, i) = Complex(1L);
    return m;
  }

  CMatrix conj_transpose() const {
    CMatrix m(cols, rows);
    for (long i = 0; i < rows; ++i)
      for (long j = 0; j < cols; ++j) m(j, i) = conj((*this)(i, j));
    return m;
  }

  /// max_ij |a_ij| (cheap scale estimate).
  Real max_abs() const {
    Real m(0L);
    for (const Complex& z : a) {
      Real v = abs(z);
      if (v > m) m = v;
    }
    return m;
  }

  friend CMatrix operator*(const CMatrix& x, const CMatrix& y) {
    if (x.cols != y.rows) throw std::invalid_argument("CMatrix: shape mismatch");
    CMatrix r(x.rows, y.cols);
    for (long i = 0; i < x.rows; ++i)
      for (long k = 0; k < x.cols; ++k) {
        const Complex& xik = x(i, k);
        if (xik.is_zero()) continue;
        for (long j = 0; j < y.cols; ++j) r(i, j) += xik * y(k, j);
      }
    return r;
  }
};

inline std::vector<Complex> matvec(const CMatrix& m, const std::vector<Complex>& v) {
  if (m.cols != static_cast<long>(v.size()))
    throw std::invalid_argument("matvec: shape mismatch");
  std::vector<Complex> r(m.rows);
  for (long i = 0; i < m.rows; ++i) {
    Complex s;
    for (long j = 0; j < m.cols; ++j) s += m(i, j) * v[j];
    r[i] = s;
  }
  return r;
}

inline Real vec_norm(const std::vector<Complex>& v) {
  Real s(0L);
  for (const Complex& z : v) s += norm(z);
  return sqrt(s);
}

/// Solve A x = b by Gaussian elimination with partial pivoting.
/// Throws std::domain_error when a pivot collapses below
/// 2^(-mantissa_bits+8) times the matrix scale (treated as singular).
inline std::vector<Complex> lin_solve(CMatrix A, std::vector<Complex> b,
                                      const PrecisionContext& ctx = {}) {
  if (A.rows != A.cols || A.rows != static_cast<long>(b.size()))
    throw std::invalid_argument("lin_solve: shape mismatch");
  const long n = A.rows;
  Real tiny = A.max_abs() * two_pow(-ctx.mantissa_bits + 8);
  for (long k = 0; k < n; ++k) {
    long piv = k;
    Real best = abs(A(k, k));
    for (long i = k + 1; i < n; ++i) {
      Real v = abs(A(i, k));
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    if (best <= tiny) throw std::domain_error("lin_solve: singular system");
    if (piv != k) {
      for (long j = k; j < n; ++j) std::swap(A(k, j), A(piv, j));
      std::swap(b[k], b[piv]);
    }
    for (long i = k + 1; i < n; ++i) {
      Complex f = A(i, k) / A(k, k);
      if (f.is_zero()) continue;
      for (long j = k + 1; j < n; ++j) A(i, j) -= f * A(k, j);
      b[i] -= f * b[k];
    }
  }
  std::vector<Complex> x(n);
  for (long i = n - 1; i >= 0; --i) {
    Complex s = b[i];
    for (long j = i + 1; j < n; ++j) s -= A(i, j) * x[j];
    x[i] = s / A(i, i);
  }
  return x;
}

/// Solve A x = b (square, or overdetermined in the least-squares sense) by
/// Householder QR with column pivoting.  Pivoting keeps graded systems --
/// Hankel-type moment matrices above all -- numerically honest: a collapsed
/// pivot norm means genuine rank deficiency and throws std::domain_error.
inline std::vector<Complex> qr_solve(CMatrix A, std::vector<Complex> b,
                                     const PrecisionContext& ctx = {}) {
  const long m = A.rows, n = A.cols;
  if (m < n || m != static_cast<long>(b.size()))
    throw std::invalid_argument("qr_solve: shape mismatch");
  if (n == 0) return {};
  std::vector<long> perm(n);
  std::iota(perm.begin(), perm.end(), 0L);
  const Real tiny = A.max_abs() * two_pow(-ctx.mantissa_bits + 8) * n;

  for (long k = 0; k < n; ++k) {
    // Column pivot: largest remaining 2-norm among columns k..n-1.
    long piv = k;
    Real best(-1L);
    for (long j = k; j < n; ++j) {
      Real s(0L);
      for (long i = k; i < m; ++i) s += norm(A(i, j));
      if (s > best) {
        best = s;
        piv = j;
      }
    }
    Real colnorm = sqrt(best);
    if (colnorm <= tiny) throw std::domain_error("qr_solve: rank deficient");
    if (piv != k) {
      for (long i = 0; i < m; ++i) std::swap(A(i, k), A(i, piv));
      std::swap(perm[k], perm[piv]);
    }
    // Householder vector v = x + phase(x_0)|x| e1, stored with v_0 kept
    // separately and the tail overwriting column k below the diagonal.
    Complex akk = A(k, k);
    Complex phase = akk.is_zero() ? Complex(1L) : akk / abs(akk);
    Complex alpha = -(phase * colnorm);
    Complex v0 = akk - alpha;
    Real vnorm2 = norm(v0);
    for (long i = k + 1; i < m; ++i) vnorm2 += norm(A(i, k));
    A(k, k) = alpha;
    if (vnorm2.is_zero()) continue;  // column already upper triangular
    Real two_over = 2 / vnorm2;
    auto reflect = [&](auto&& get, auto&& set) {
      Complex tau = conj(v0) * get(k);
      for (long i = k + 1; i < m; ++i) tau += conj(A(i, k)) * get(i);
      tau *= two_over;
      if (tau.is_zero()) return;
      set(k, get(k) - tau * v0);
      for (long i = k + 1; i < m; ++i) set(i, get(i) - tau * A(i, k));
    };
    for (long j = k + 1; j < n; ++j)
      reflect([&](long i) { return A(i, j); },
              [&](long i, const Complex& v) { A(i, j) = v; });
    reflect([&](long i) { return b[i]; },
            [&](long i, const Complex& v) { b[i] = v; });
  }

  std::vector<Complex> y(n);
  for (long i = n - 1; i >= 0; --i) {
    Complex s = b[i];
    for (long j = i + 1; j < n; ++j) s -= A(i, j) * y[j];
    y[i] = s / A(i, i);
  }
  std::vector<Complex> x(n);
  for (long k = 0; k < n; ++k) x[perm[k]] = y[k];
  return x;
}

struct SvdResult {
  std::vector<Real> sigma;  // descending
  CMatrix U;                // rows x k
  CMatrix V;                // cols x k, M = U diag(sigma) V*
};

namespace detail {

/// One-sided Jacobi on the columns of A (rows >= cols required).
inline SvdResult svd_tall(CMatrix A, const PrecisionContext& ctx) {
  const long m = A.rows, n = A.cols;
  CMatrix V = CMatrix::identity(n);
  const Real eps = two_pow(-ctx.mantissa_bits + 6);
  const long max_sweeps = 60;

  // Column-major working copies keep the rotation loops contiguous.
  std::vector<std::vector<Complex>> col(n);
  for (long j = 0; j < n; ++j) {
    col[j].resize(m);
    for (long i = 0; i < m; ++i) col[j][i] = A(i, j);
  }
  std::vector<std::vector<Complex>> vcol(n);
  for (long j = 0; j < n; ++j) {
    vcol[j].resize(n);
    for (long i = 0; i < n; ++i) vcol[j][i] = V(i, j);
  }

  for (long sweep = 0; sweep < max_sweeps; ++sweep) {
    bool rotated = false;
    for (long p = 0; p < n - 1; ++p) {
      for (long q = p + 1; q < n; ++q) {
        // Gram entries for the (p,q) column pair.
        Real alpha(0L), beta(0L);
        Complex gam;
        for (long i = 0; i < m; ++i) {
          alpha += norm(col[p][i]);
          beta += norm(col[q][i]);
          gam += conj(col[p][i]) * col[q][i];
        }
        Real g = abs(gam);
        if (g <= eps * sqrt(alpha * beta) || g.is_zero()) continue;
        rotated = true;
        // Phase that makes the Gram matrix real, then a classical Jacobi
        // angle. J = [[c, s],[-s e^{-i phi}, c e^{-i phi}]] with
        // e^{i phi} = gam/|gam|.
        Complex phase = gam / g;
        Real tau = (beta - alpha) / (2 * g);
        Real t = (tau.sign() >= 0 ? Real(1) : Real(-1)) /
                 (abs(tau) + sqrt(1 + tau * tau));
        Real c = 1 / sqrt(1 + t * t);
        Real s = t * c;
        Complex cphase = conj(phase);
        Complex sp = s * cphase, cp = c * cphase;
        for (long i = 0; i < m; ++i) {
          Complex xp = col[p][i], xq = col[q][i];
          col[p][i] = c * xp - sp * xq;
          col[q][i] = s * xp + cp * xq;
        }
        for (long i = 0; i < n; ++i) {
          Complex xp = vcol[p][i], xq = vcol[q][i];
          vcol[p][i] = c * xp - sp * xq;
          vcol[q][i] = s * xp + cp * xq;
        }
      }
    }
    if (!rotated) break;
  }

  // Singular values and sort order (descending).
  std::vector<Real> sig(n);
  for (long j = 0; j < n; ++j) {
    Real s2(0L);
    for (long i = 0; i < m; ++i) s2 += norm(col[j][i]);
    sig[j] = sqrt(s2);
  }
  std::vector<long> order(n);
  std::iota(order.begin(), order.end(), 0L);
  std::sort(order.begin(), order.end(),
            [&](long x, long y) { return sig[y] < sig[x]; });

  SvdResult r;
  r.sigma.reserve(n);
  r.U = CMatrix(m, n);
  r.V = CMatrix(n, n);
  for (long jj = 0; jj < n; ++jj) {
    long j = order[jj];
    r.sigma.push_back(sig[j]);
    if (sig[j].is_zero()) continue;  // U column stays zero
    for (long i = 0; i < m; ++i) r.U(i, jj) = col[j][i] / sig[j];
    for (long i = 0; i < n; ++i) r.V(i, jj) = vcol[j][i];
  }
  // Zero singular values: copy V columns anyway (they are still orthonormal).
  for (long jj = 0; jj < n; ++jj) {
    long j = order[jj];
    if (sig[j].is_zero())
      for (long i = 0; i < n; ++i) r.V(i, jj) = vcol[j][i];
  }
  return r;
}

}  // namespace detail

/// Singular value decomposition M = U diag(sigma) V*, sigma descending.
inline SvdResult svd(const CMatrix& M, const PrecisionContext& ctx = {}) {
  for (const Complex& z : M.a)
    if (!z.is_finite()) throw std::invalid_argument("svd: non-finite entry");
  if (M.rows >= M.cols) return detail::svd_tall(M, ctx);
  SvdResult r = detail::svd_tall(M.conj_transpose(), ctx);
  std::swap(r.U, r.V);
  return r;
}

/// Unit right singular vector for the smallest singular value of M.
inline std::vector<Complex> nullspace_solve(const CMatrix& M,
                                            const PrecisionContext& ctx = {}) {
  if (M.cols < 1) throw std::invalid_argument("nullspace_solve: no columns");
  // Pad wide systems with zero rows: the economy SVD of a wide matrix has
  // no columns for the kernel directions, which are exactly what we want.
  if (M.rows < M.cols) {
    CMatrix P(M.cols, M.cols);
    for (long i = 0; i < M.rows; ++i)
      for (long j = 0; j < M.cols; ++j) P(i, j) = M(i, j);
    return nullspace_solve(P, ctx);
  }
  SvdResult r = svd(M, ctx);
  long k = static_cast<long>(r.sigma.size());
  std::vector<Complex> v(M.cols);
  for (long i = 0; i < M.cols; ++i) v[i] = r.V(i, k - 1);
  // V columns are unitary by construction; normalize defensively.
  Real nrm = vec_norm(v);
  for (Complex& z : v) z /= nrm;
  return v;
}

/// Least-squares solve min ||A x - b|| via normal equations (the kernel
/// works far above double precision, so the squared conditioning is
/// acceptable for the small systems this library builds).
inline std::vector<Complex> lstsq(const CMatrix& A, const std::vector<Complex>& b,
                                  const PrecisionContext& ctx = {}) {
  if (A.rows < A.cols) throw std::invalid_argument("lstsq: underdetermined");
  CMatrix At = A.conj_transpose();
  CMatrix G = At * A;
  std::vector<Complex> rhs = matvec(At, b);
  return lin_solve(std::move(G), std::move(rhs), ctx);
}

}  // namespace mera
