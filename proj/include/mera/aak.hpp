// SPDX-License-Identifier: MIT
//
// Best-meromorphic (Hankel singular vector) approximants on the unit
// circle for Cauchy transforms whose support and poles lie inside the
// open unit disk.  The transform's Laurent coefficients at infinity
// are exactly the Fourier coefficients of its boundary values on the
// circle, so finite Hankel truncations H_{j,k} = c_{j+k} carry the
// whole approximation problem:
//
//   * sigma_n, the (n+1)-st singular value of the truncation, is the
//     degree-n approximation error on the circle;
//   * the matching right singular vector, read as a polynomial v_n,
//     has at most n zeros inside the disk (the approximant's poles);
//   * g_n = P_+(f v_n) / v_n is the approximant itself, where P_+
//     keeps nonnegative powers of the coefficient convolution.
//
// Division by v_n is always performed pointwise at evaluation sites;
// a global coefficient division would amplify the (intentionally)
// near-singular structure of v_n.

#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "mera/complex.hpp"
#include "mera/fft.hpp"
#include "mera/linalg.hpp"
#include "mera/model.hpp"
#include "mera/poly.hpp"
#include "mera/real.hpp"

namespace mera {

/// Finite section of the Hankel matrix of a Cauchy transform, with a
/// fitted bound on the coefficients left out of the truncation.
struct HankelTruncation {
  long N = 0;              // section size is (N+1) x (N+1)
  CMatrix H;               // H(j,k) = c_{j+k}, 0 <= j,k <= N
  std::vector<Complex> c;  // Laurent coefficients c_0..c_{2N}

  // Least-squares model |c_k| <= coeff_scale * decay_rate^k, fitted
  // over the last half of the computed coefficients and lifted so the
  // bound holds on that window.  tail_bound estimates
  // sum_{k > 2N} |c_k|; it is +inf when the fit shows no decay and 0
  // when the window is identically zero.
  Real coeff_scale{0L};
  Real decay_rate{0L};
  Real tail_bound{0L};
};

inline HankelTruncation hankel_matrix(const CauchyFunction& F, long N,
                                      const PrecisionContext& ctx = {}) {
  if (N < 1) throw std::invalid_argument("hankel_matrix: N must be positive");
  if (!F.inside_unit_disk())
    throw std::domain_error(
        "hankel_matrix: measure support and rational poles must lie inside "
        "the open unit disk");
  HankelTruncation t;
  t.N = N;
  t.c = moments(F, 2 * N + 1, ctx);
  t.H = CMatrix(N + 1, N + 1);
  for (long j = 0; j <= N; ++j)
    for (long k = 0; k <= N; ++k) t.H(j, k) = t.c[j + k];

  // Decay fit over the trailing window (at least two points).
  // Coefficients at the working-precision noise floor relative to the
  // window's largest entry are excluded: exact structural zeros (odd
  // moments of a symmetric weight, say) only survive quadrature as
  // roundoff residue and would wreck a log-scale fit.
  const long win = std::max<long>(N / 2, 2);
  const long lo = std::max<long>(0, 2 * N - win + 1);
  Real win_max{0L};
  for (long k = lo; k <= 2 * N; ++k) win_max = max(win_max, abs(t.c[k]));
  Real noise = ldexp(win_max, -(ctx.mantissa_bits / 2));
  std::vector<Real> ks, ys;
  for (long k = lo; k <= 2 * N; ++k) {
    Real m = abs(t.c[k]);
    if (m > noise) {
      ks.push_back(Real(k));
      ys.push_back(log(m));
    }
  }
  if (ks.size() >= 2) {
    Real kbar, ybar;
    for (size_t i = 0; i < ks.size(); ++i) {
      kbar += ks[i];
      ybar += ys[i];
    }
    kbar /= static_cast<long>(ks.size());
    ybar /= static_cast<long>(ks.size());
    Real num, den;
    for (size_t i = 0; i < ks.size(); ++i) {
      num += (ks[i] - kbar) * (ys[i] - ybar);
      den += (ks[i] - kbar) * (ks[i] - kbar);
    }
    Real slope = num / den;
    t.decay_rate = exp(slope);
    // Lift the intercept so |c_k| <= M r^k holds on the whole window.
    Real log_m = ys[0] - slope * ks[0];
    for (size_t i = 1; i < ks.size(); ++i) log_m = max(log_m, ys[i] - slope * ks[i]);
    t.coeff_scale = exp(log_m);
    if (t.decay_rate < Real(1L))
      t.tail_bound = t.coeff_scale * pow(t.decay_rate, Real(2 * N + 1)) /
                     (Real(1L) - t.decay_rate);
    else
      t.tail_bound = Real(1L) / Real(0L);  // no decay detected
  }
  return t;
}

/// Truncation plus its singular value decomposition.  Sweeps over the
/// approximation degree n share one of these: the SVD is the dominant
/// cost and does not depend on n.
struct HankelDecomposition {
  HankelTruncation trunc;
  SvdResult svd;
};

inline HankelDecomposition hankel_decompose(const CauchyFunction& F, long N,
                                            const PrecisionContext& ctx = {}) {
  HankelDecomposition hd;
  hd.trunc = hankel_matrix(F, N, ctx);
  hd.svd = svd(hd.trunc.H, ctx);
  return hd;
}

namespace detail {

/// Copy of p with leading coefficients at the relative noise floor
/// removed.  Singular vectors of symmetric symbols have exact parity,
/// so their polynomial reads carry top coefficients that are pure
/// roundoff; root extraction on such a near-degree-drop chases
/// phantom roots instead of the meaningful ones.
inline Poly strip_roundoff_lead(const Poly& p, const PrecisionContext& ctx) {
  Real floor = ldexp(p.max_abs_coeff(), -(ctx.mantissa_bits / 2));
  long d = p.degree();
  while (d > 0 && abs(p.c[d]) <= floor) --d;
  return Poly(std::vector<Complex>(p.c.begin(), p.c.begin() + d + 1));
}

}  // namespace detail

/// Degree-n best-meromorphic approximant data.  `poles` are the roots
/// of v strictly inside the disk (|root| < 1 - 1e-8); roots whose
/// modulus falls in the band 1 +- 1e-8 are reported separately as
/// `indeterminate` rather than silently assigned to either side.
struct AakApproximant {
  long n = 0;  // meromorphic degree (number of allowed poles)
  long N = 0;  // Hankel truncation order used
  Real sigma{0L};
  Poly v;        // singular-vector polynomial, degree <= N
  Poly g_numer;  // P_+(f v): numerator of the approximant
  std::vector<Complex> symbol;  // c_0..c_{2N} defining the truncated symbol
  std::vector<Complex> poles;
  std::vector<Complex> indeterminate;

  // Laurent coefficients of g on the unit circle, recovered by FFT
  // from pointwise samples: g_analytic[m] multiplies z^m (m >= 0),
  // g_principal[l] multiplies z^(-l-1).  Left empty when v comes too
  // close to zero on the sampling grid to resolve them.
  std::vector<Complex> g_analytic;
  std::vector<Complex> g_principal;

  Real gap{0L};             // (sigma_n - sigma_{n+1}) / sigma_n
  bool non_simple = false;  // sigma_n too close to a neighbor
  bool irreducible = false;

  /// Truncated symbol f_N(tau) = sum_{k=0}^{2N} c_k tau^(-k-1).
  Complex symbol_value(const Complex& tau) const {
    Complex inv = Complex(1L) / tau;
    Complex acc;
    for (size_t k = symbol.size(); k-- > 0;) acc = acc * inv + symbol[k];
    return acc * inv;
  }

  /// Approximant value: pointwise division, never a coefficient one.
  Complex g(const Complex& tau) const { return g_numer(tau) / v(tau); }

  Complex error_value(const Complex& tau) const { return symbol_value(tau) - g(tau); }
};

inline AakApproximant aak_approximant(const CauchyFunction& F, long n,
                                      const HankelDecomposition& hd,
                                      const PrecisionContext& ctx = {}) {
  (void)F;
  const long N = hd.trunc.N;
  if (n < 0 || n >= N)
    throw std::invalid_argument("aak_approximant: need 0 <= n < N");

  AakApproximant a;
  a.n = n;
  a.N = N;
  a.symbol = hd.trunc.c;
  a.sigma = hd.svd.sigma[n];

  std::vector<Complex> vc(N + 1);
  for (long i = 0; i <= N; ++i) vc[i] = hd.svd.V(i, n);
  a.v = Poly(std::move(vc));

  // Relative distances to the neighboring singular values.  sigma_n
  // is only meaningful as an approximation error when it is simple.
  const Real band("1e-8");
  if (a.sigma > Real(0L)) {
    a.gap = (a.sigma - hd.svd.sigma[n + 1]) / a.sigma;
    if (a.gap < band) a.non_simple = true;
    if (n > 0 && (hd.svd.sigma[n - 1] - a.sigma) / hd.svd.sigma[n - 1] < band)
      a.non_simple = true;
  } else {
    a.non_simple = true;
  }

  a.g_numer = detail::polynomial_part(a.v, a.symbol);

  Poly v_eff = detail::strip_roundoff_lead(a.v, ctx);
  if (v_eff.degree() >= 1) {
    for (const Complex& r : poly_roots(v_eff, ctx)) {
      Real m = abs(r);
      if (m < Real(1L) - band)
        a.poles.push_back(r);
      else if (m <= Real(1L) + band)
        a.indeterminate.push_back(r);
    }
  }

  // Irreducibility: exactly n poles, all of them sitting away from
  // the numerator's zeros (a nearby zero signals pole-zero
  // cancellation; it can only be detected, not certified, here).  Any
  // indeterminate root leaves the in-disk count uncertain, so the
  // flag stays down.
  if (static_cast<long>(a.poles.size()) == n && a.indeterminate.empty()) {
    Real min_dist = Real(1L) / Real(0L);
    Poly num_eff = detail::strip_roundoff_lead(a.g_numer, ctx);
    if (!a.poles.empty() && num_eff.degree() >= 1)
      for (const Complex& z : poly_roots(num_eff, ctx))
        for (const Complex& p : a.poles) min_dist = min(min_dist, abs(z - p));
    a.irreducible = min_dist > Real("1e-6");
  }

  // Laurent coefficients of g by FFT of pointwise samples.  The grid
  // must out-resolve the numerator/denominator degrees; 1024 covers
  // every N this library targets (doubling once if not).
  size_t grid = 1024;
  while (grid < 4 * static_cast<size_t>(N + 1)) grid *= 2;
  Real floor_v = ldexp(Real(1L) + a.v.max_abs_coeff(), -(ctx.mantissa_bits / 2));
  std::vector<Complex> samples(grid);
  bool resolved = true;
  for (size_t j = 0; j < grid && resolved; ++j) {
    Complex tau = polar(Real(1L), 2 * pi() * static_cast<long>(j) / static_cast<long>(grid));
    Complex den = a.v(tau);
    if (abs(den) <= floor_v)
      resolved = false;
    else
      samples[j] = a.g_numer(tau) / den;
  }
  if (resolved) {
    fft(samples, -1);
    Real scale{0L};
    for (const Complex& b : samples) scale = max(scale, abs(b));
    Real drop = ldexp(scale, -(ctx.mantissa_bits / 2));
    const size_t half = grid / 2;
    a.g_analytic.reserve(half);
    for (size_t m = 0; m < half; ++m)
      a.g_analytic.push_back(samples[m] / static_cast<long>(grid));
    a.g_principal.reserve(half);
    for (size_t l = 1; l <= half; ++l)
      a.g_principal.push_back(samples[grid - l] / static_cast<long>(grid));
    auto trim = [&](std::vector<Complex>& coeffs) {
      while (!coeffs.empty() && abs(coeffs.back()) * static_cast<long>(grid) <= drop)
        coeffs.pop_back();
    };
    trim(a.g_analytic);
    trim(a.g_principal);
  }
  return a;
}

inline AakApproximant aak_approximant(const CauchyFunction& F, long n, long N,
                                      const PrecisionContext& ctx = {}) {
  return aak_approximant(F, n, hankel_decompose(F, N, ctx), ctx);
}

/// Moduli of the circle error f_N - g_n at given unimodular samples.
/// For an irreducible degree-n approximant of an (effectively)
/// rank-exact symbol the modulus is constant equal to sigma_n; the
/// deviation field quantifies how far the samples stray from that.
struct CircleErrorReport {
  std::vector<Real> moduli;
  Real max_modulus{0L};
  Real min_modulus{0L};
  Real max_deviation{0L};  // max |modulus - sigma_n|
};

inline CircleErrorReport aak_error_on_circle(const CauchyFunction&,
                                             const AakApproximant& a,
                                             const std::vector<Complex>& taus,
                                             const PrecisionContext& = {}) {
  if (taus.empty())
    throw std::invalid_argument("aak_error_on_circle: no sample points");
  CircleErrorReport rep;
  rep.moduli.reserve(taus.size());
  rep.min_modulus = Real(1L) / Real(0L);
  for (const Complex& tau : taus) {
    Real m = abs(a.error_value(tau));
    rep.max_modulus = max(rep.max_modulus, m);
    rep.min_modulus = min(rep.min_modulus, m);
    rep.max_deviation = max(rep.max_deviation, abs(m - a.sigma));
    rep.moduli.push_back(std::move(m));
  }
  return rep;
}

/// Outer factor of a polynomial on the unit disk: the analytic,
/// zero-free function w with |w| = |v| on the circle and w(0) > 0,
///
///   w(z) = exp( (1/2 pi) int (xi+z)/(xi-z) log|v(xi)| |dxi| ).
///
/// Computed from the Fourier coefficients b_m of log|v| on a circle
/// grid: log w(z) = b_0 + 2 sum_{m>=1} b_m z^m.  Throws when v
/// vanishes on the circle within grid resolution, or when log|v| has
/// too much high-frequency content for the grid (zeros crowding the
/// circle from either side).
inline std::vector<Complex> outer_factor(const Poly& v,
                                         const std::vector<Complex>& zs,
                                         const PrecisionContext& ctx = {}) {
  if (v.is_zero()) throw std::invalid_argument("outer_factor: zero polynomial");
  for (const Complex& z : zs)
    if (abs(z) > Real(1L) + ldexp(Real(1L), -(ctx.mantissa_bits / 2)))
      throw std::invalid_argument("outer_factor: sample outside the closed unit disk");

  Real floor_v = ldexp(Real(1L) + v.max_abs_coeff(), -(ctx.mantissa_bits / 2));
  const size_t grid_cap = size_t(1) << 15;
  size_t grid = 4096;
  while (grid < 4 * static_cast<size_t>(v.degree() + 1)) grid *= 2;
  std::vector<Complex> b;
  for (;; grid *= 2) {
    std::vector<Complex> u(grid);
    for (size_t j = 0; j < grid; ++j) {
      Complex xi = polar(Real(1L), 2 * pi() * static_cast<long>(j) / static_cast<long>(grid));
      Real m = abs(v(xi));
      if (m <= floor_v)
        throw std::runtime_error(
            "outer_factor: polynomial vanishes on the unit circle within "
            "grid resolution");
      u[j] = Complex(log(m));
    }
    fft(u, -1);
    for (Complex& x : u) x /= static_cast<long>(grid);
    // Resolved when the top half of the spectrum is negligible
    // against the full coefficient scale.
    Real scale{0L}, tail{0L};
    for (size_t m = 0; m < grid / 2; ++m) scale = max(scale, abs(u[m]));
    for (size_t m = grid / 4; m < grid / 2; ++m) tail = max(tail, abs(u[m]));
    if (tail <= ldexp(Real(1L) + scale, -(ctx.mantissa_bits / 2))) {
      b.assign(u.begin(), u.begin() + grid / 2);
      b[0] = Complex(b[0].re);  // mean of real data
      break;
    }
    if (grid * 2 > grid_cap)
      throw std::runtime_error(
          "outer_factor: log|v| Fourier series not resolved on the largest "
          "grid (zeros too close to the unit circle)");
  }

  std::vector<Complex> w;
  w.reserve(zs.size());
  for (const Complex& z : zs) {
    Complex acc;
    for (size_t m = b.size(); m-- > 1;) acc = (acc + b[m]) * z;
    w.push_back(exp(b[0] + 2 * acc));
  }
  return w;
}

}  // namespace mera
