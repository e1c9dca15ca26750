// SPDX-License-Identifier: MIT
//
// Non-Hermitian orthogonal polynomials for complex varying weights on a
// segment: moment computation, the monic Hankel solve (with a nullspace
// fallback for singular systems), functions of the second kind, and the
// strong-asymptotics predictor built from Szego data.

#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mera/errors.hpp"
#include "mera/geometry.hpp"
#include "mera/linalg.hpp"
#include "mera/model.hpp"
#include "mera/poly.hpp"

namespace mera {

/// A base measure on [c,d] modified by a smooth extra factor and divided by
/// a polynomial whose roots avoid the segment:
///   d nu(t) = extra_smooth(t) / divisor(t) d mu_base(t).
/// m_shift carries the rational-part degree for use-site degree checks.
struct VaryingWeight {
  MeasureSpec base;
  Expr extra_smooth;  // invalid() means the constant 1
  Poly divisor = Poly::constant(Complex(1L));
  long m_shift = 0;
  std::vector<Complex> divisor_roots;  // cached at make()

  static VaryingWeight make(MeasureSpec base_in, Expr extra = {},
                            Poly divisor_in = Poly::constant(Complex(1L)),
                            long m_shift_in = 0,
                            const PrecisionContext& ctx = {}) {
    base_in.validate();
    if (m_shift_in < 0)
      throw std::invalid_argument("varying weight: m_shift must be nonnegative");
    divisor_in.trim();
    if (divisor_in.is_zero())
      throw std::invalid_argument("varying weight: zero divisor");
    VaryingWeight w;
    w.base = std::move(base_in);
    w.extra_smooth = std::move(extra);
    w.divisor = std::move(divisor_in);
    w.m_shift = m_shift_in;
    if (w.divisor.degree() >= 1) {
      w.divisor_roots = poly_roots(w.divisor, ctx);
      Real excl = Real("1e-6") * (w.base.d - w.base.c);
      for (const Complex& r : w.divisor_roots)
        if (CauchyFunction::dist_to_segment(r, w.base.c, w.base.d) <= excl)
          throw std::invalid_argument(
              "varying weight: divisor root on or near the segment");
    }
    return w;
  }

  /// extra_smooth(t) / divisor(t); the part of the weight that multiplies
  /// the base density pointwise.
  Complex extra_factor(const Real& t) const {
    Complex v = extra_smooth.valid() ? extra_smooth(t) : Complex(1L);
    return v / divisor(t);
  }
};

/// Moments mu_k = int t^k d nu(t), k = 0..K-1, by doubling quadrature over
/// the base measure's pieces (endpoint exponents absorbed into the rules).
inline std::vector<Complex> weight_moments(const VaryingWeight& nu, long K,
                                           const PrecisionContext& ctx = {}) {
  if (K < 1) throw std::invalid_argument("weight_moments: need K >= 1");
  const Real tol = ctx.convergence_tol();
  std::vector<Complex> prev, cur;
  Real delta(0L);
  bool have_prev = false;
  for (long n = K + 48; n <= 16384; n *= 2) {
    cur.assign(K, Complex(0L));
    for (const MeasurePiece& piece : nu.base.pieces) {
      std::vector<Complex> piece_moments(K);
      detail::integrate_piece(nu.base, piece, n,
                              [&](const Real& t, const Complex& w, Complex&) {
                                Complex pw = w * nu.extra_factor(t);
                                for (long k = 0; k < K; ++k) {
                                  piece_moments[k] += pw;
                                  if (k + 1 < K) pw *= t;
                                }
                              });
      for (long k = 0; k < K; ++k) cur[k] += piece_moments[k];
    }
    if (have_prev) {
      delta = Real(0L);
      Real scale(1L);
      for (long k = 0; k < K; ++k) {
        delta = mera::max(delta, abs(cur[k] - prev[k]));
        scale = mera::max(scale, abs(cur[k]));
      }
      if (delta <= tol * scale) return cur;
    }
    prev = cur;
    have_prev = true;
  }
  throw AccuracyError("weight_moments: quadrature did not stabilize",
                      std::move(cur), delta);
}

/// Monic degree-n solution of the Hankel system
///   sum_{i<n} u_i mu_{i+j} = -mu_{n+j},  j = 0..n-1,
/// or, when that system is singular, the unit-norm kernel vector of the
/// n x (n+1) homogeneous system (monic = false then).
struct HankelSolution {
  Poly u;
  bool monic = true;
};

inline HankelSolution hankel_poly(const std::vector<Complex>& mu, long n,
                                  const PrecisionContext& ctx = {}) {
  if (n < 0) throw std::invalid_argument("hankel_poly: need n >= 0");
  if (static_cast<long>(mu.size()) < 2 * n)
    throw std::invalid_argument("hankel_poly: need at least 2n moments");
  HankelSolution out;
  if (n == 0) {
    out.u = Poly::constant(Complex(1L));
    return out;
  }
  CMatrix A(n, n);
  std::vector<Complex> b(n);
  for (long j = 0; j < n; ++j) {
    for (long i = 0; i < n; ++i) A(j, i) = mu[i + j];
    b[j] = -mu[n + j];
  }
  try {
    std::vector<Complex> coef = qr_solve(std::move(A), std::move(b), ctx);
    coef.push_back(Complex(1L));
    out.u = Poly(std::move(coef));
    return out;
  } catch (const std::domain_error&) {
    CMatrix M(n, n + 1);
    for (long j = 0; j < n; ++j)
      for (long i = 0; i <= n; ++i) M(j, i) = mu[i + j];
    out.u = Poly(nullspace_solve(M, ctx));
    out.u.trim();
    out.monic = false;
    return out;
  }
}

/// The computed orthogonal polynomial with its normalization constant
/// gamma = int t^n u(t) d nu(t) and the orthogonality residuals
/// |int t^j u d nu|, j < n (scaled checks belong to the caller).
struct OrthoResult {
  Poly u;
  Complex gamma;
  bool monic = true;
  std::vector<Real> residuals;
  Real moment_scale{1L};
};

/// Solve the n-th non-Hermitian orthogonality conditions for nu.
inline OrthoResult orthogonal_poly(const VaryingWeight& nu, long n,
                                   const PrecisionContext& ctx = {}) {
  if (n < 0) throw std::invalid_argument("orthogonal_poly: need n >= 0");
  if (nu.divisor.degree() > 2 * (n + nu.m_shift))
    throw std::invalid_argument(
        "orthogonal_poly: divisor degree exceeds 2(n + m_shift)");
  std::vector<Complex> mu = weight_moments(nu, 2 * n + 1, ctx);
  HankelSolution hs = hankel_poly(mu, n, ctx);

  OrthoResult out;
  out.u = std::move(hs.u);
  out.monic = hs.monic;
  for (const Complex& m : mu) out.moment_scale = max(out.moment_scale, abs(m));
  const long deg = out.u.degree();
  out.residuals.reserve(n);
  for (long j = 0; j < n; ++j) {
    Complex r;
    for (long i = 0; i <= deg; ++i) r += out.u.c[i] * mu[i + j];
    out.residuals.push_back(abs(r));
  }
  for (long i = 0; i <= deg; ++i) out.gamma += out.u.c[i] * mu[n + i];
  return out;
}

/// Function of the second kind R(z) = int u(t) d nu(t) / (z - t) for z off
/// the segment, by doubling quadrature.
inline Complex second_kind(const VaryingWeight& nu, const Poly& u,
                           const Complex& z, const PrecisionContext& ctx = {}) {
  const Real excl = Real("1e-6") * (nu.base.d - nu.base.c);
  if (CauchyFunction::dist_to_segment(z, nu.base.c, nu.base.d) <= excl)
    throw std::domain_error("second_kind: point on or near the segment");
  const Real tol = ctx.convergence_tol();
  Complex prev;
  bool have_prev = false;
  Real delta(0L);
  for (long n = 64; n <= 16384; n *= 2) {
    Complex cur;
    for (const MeasurePiece& piece : nu.base.pieces)
      cur += detail::integrate_piece(
          nu.base, piece, n, [&](const Real& t, const Complex& w, Complex& total) {
            total += w * nu.extra_factor(t) * u(t) / (z - t);
          });
    if (have_prev) {
      delta = abs(cur - prev);
      if (delta <= tol * (1 + abs(cur))) return cur;
    }
    prev = cur;
    have_prev = true;
  }
  throw AccuracyError("second_kind: quadrature did not stabilize", {prev}, delta);
}

namespace detail {

/// Szego data of the piecewise-smooth weight factor
///   f(t) = base.smooth_h(t) * extra_smooth(t)
/// through the Cauchy-kernel representation against the arcsine measure:
///   log S(z) = ( w(z) C(z) - g0 ) / 2,
///   C(z) = int Lf(t)/(z-t) d omega(t),   g0 = int Lf d omega,
/// where Lf is the per-piece branch-continued log.  Works for weights whose
/// smooth factor jumps at piece joints (where the Fourier route stalls).
/// Returns {C(z), g0}.
inline std::pair<Complex, Complex> szego_cauchy_log(const VaryingWeight& nu,
                                                    const Complex& z,
                                                    const PrecisionContext& ctx) {
  const Real tol = ctx.convergence_tol();
  const Real& c = nu.base.c;
  const Real& d = nu.base.d;
  auto f = [&](const Real& t) {
    Complex v = nu.base.smooth_h(t);
    if (nu.extra_smooth.valid()) v *= nu.extra_smooth(t);
    return v;
  };
  Complex prev_c, prev_g;
  bool have_prev = false;
  Real delta(0L);
  for (long n = 64; n <= 16384; n *= 2) {
    Complex C, g0;
    bool resolved = true;
    for (const MeasurePiece& piece : nu.base.pieces) {
      const bool at_c = piece.lo == c;
      const bool at_d = piece.hi == d;
      QuadRule rule = jacobi_quadrature(piece.lo, piece.hi,
                                        at_c ? Real(-1L) / 2 : Real(0L),
                                        at_d ? Real(-1L) / 2 : Real(0L), n);
      Real prev_arg;
      bool have_arg = false;
      for (size_t i = 0; i < rule.nodes.size(); ++i) {
        const Real& t = rule.nodes[i];
        Complex fv = f(t);
        if (fv.is_zero())
          throw std::invalid_argument("szego data: weight vanishes on the segment");
        Complex lg = log(fv);
        if (have_arg) {
          Real k = floor((prev_arg - lg.im) / (2 * pi()) + Real(1L) / 2);
          lg.im += 2 * pi() * k;
          if (abs(lg.im - prev_arg) > pi() / 2) resolved = false;
        }
        prev_arg = lg.im;
        have_arg = true;
        Real leftover = 1 / pi();
        if (!at_c) leftover /= sqrt(t - c);
        if (!at_d) leftover /= sqrt(d - t);
        Complex wlg = (rule.weights[i] * leftover) * lg;
        g0 += wlg;
        C += wlg / (z - t);
      }
    }
    if (resolved && have_prev) {
      delta = max(abs(C - prev_c), abs(g0 - prev_g));
      if (delta <= tol * (1 + max(abs(C), abs(g0)))) return {C, g0};
    }
    if (resolved) {
      prev_c = C;
      prev_g = g0;
      have_prev = true;
    }
  }
  throw AccuracyError("szego data: quadrature did not stabilize",
                      {prev_c, prev_g}, delta);
}

}  // namespace detail

/// Predicted strong-asymptotics data at z off the segment:
///   S_n(z) = S_weight(z) * (ell psi(z))^n,
///   gamma  = 2 ell^{-2n} * (geometric mean of the weight),
/// where the weight is the full density of nu against the arcsine measure.
/// The caller compares u_n(z) S_n(z) against 1 and R_n w/(gamma S_n)
/// against 1.
struct OrthoPrediction {
  Complex S_n;
  Complex gamma;
};

inline OrthoPrediction predict_ortho(const VaryingWeight& nu, long n,
                                     const Complex& z,
                                     const CondenserGeometry& geom,
                                     const PrecisionContext& ctx = {}) {
  if (!(geom.c == nu.base.c && geom.d == nu.base.d))
    throw std::invalid_argument("predict_ortho: geometry built for another segment");
  MapValues mv = map_values(nu.base.c, nu.base.d, z);
  if (mv.w.is_zero())
    throw std::domain_error("predict_ortho: point at a segment endpoint");
  const Real& ell = geom.ell;
  Real log_ell = log(ell);

  // Smooth factor h * extra: Fourier route for a single smooth piece,
  // Cauchy-kernel route when joints make the weight only piecewise smooth.
  Complex logS, log_gmean;
  if (nu.base.pieces.size() == 1) {
    const MeasurePiece& piece = nu.base.pieces.front();
    SzegoFunction sf(
        nu.base.c, nu.base.d,
        [&](const Real& t) {
          Complex v = piece.h(t);
          if (nu.extra_smooth.valid()) v *= nu.extra_smooth(t);
          return v;
        },
        1024, ctx);
    log_gmean = sf.log_gmean();
    const std::vector<Complex>& a = sf.coefficients();
    Complex acc;
    for (size_t k = a.size(); k-- > 1;) acc = (acc + a[k]) * mv.psi;
    logS = acc / 2;
  } else {
    auto [C, g0] = detail::szego_cauchy_log(nu, z, ctx);
    log_gmean = g0;
    logS = (mv.w * C - g0) / 2;
  }

  // Endpoint and interior algebraic factors, in closed form.
  Real alg_exponent = nu.base.alpha_c + nu.base.alpha_d;
  logS += szego_endpoint_log(mv.psi, nu.base.alpha_c, nu.base.alpha_d);
  for (const InteriorZero& iz : nu.base.interior) {
    logS += szego_interior_log(mv.psi, interior_angle(nu.base.c, nu.base.d, iz.x),
                               iz.alpha);
    alg_exponent += 2 * iz.alpha;
  }
  Complex gmean = exp(log_gmean - Complex(alg_exponent * log_ell));

  // Divisor: the weight divides by it, so its Szego data divides out.
  PolySzego ps = szego_poly(nu.base.c, nu.base.d, nu.divisor, ctx);
  logS -= ps.logS(mv.psi);
  gmean /= ps.gmean();

  OrthoPrediction out;
  out.S_n = exp(logS) * pow(ell * mv.psi, n);
  out.gamma = 2 * pow(ell, -2 * n) * gmean;
  return out;
}

}  // namespace mera
