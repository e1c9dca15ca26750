// SPDX-License-Identifier: MIT
//
// Diagonal Pade approximants to Cauchy-type functions: the classical
// (all interpolation at infinity) construction from Laurent moments, the
// multipoint construction from a homogeneous linear system with confluent
// derivative conditions, interpolation schemes with a conjugate-symmetry
// matching report, and an integral cross-check for the approximation error.

#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "mera/errors.hpp"
#include "mera/geometry.hpp"
#include "mera/linalg.hpp"
#include "mera/model.hpp"
#include "mera/ortho.hpp"
#include "mera/poly.hpp"

namespace mera {

/// One interpolation node: a finite point or the point at infinity.
struct InterpPoint {
  Complex z;
  bool finite = true;

  static InterpPoint at(Complex z_in) { return {std::move(z_in), true}; }
  static InterpPoint infinity() { return {Complex(0L), false}; }
};

/// Generator of interpolation sets E_n (2n nodes per level, infinity
/// allowed).  The circle scheme distributes an even number of fixed nodes
/// on |z| = R in conjugate pairs and cycles through the pairs, so every
/// level is closed under conjugation; repeats create confluent conditions.
struct InterpolationScheme {
  enum class Kind { classical, circle, explicit_list };

  Kind kind = Kind::classical;
  Real radius{0L};
  long count = 0;                                // circle: distinct nodes, even
  std::vector<std::vector<InterpPoint>> levels;  // explicit: levels[n] = E_n

  static InterpolationScheme classical() { return {}; }

  static InterpolationScheme circle(Real R, long count_in) {
    if (!(R > Real(0L)))
      throw std::invalid_argument("interpolation scheme: circle radius must be positive");
    if (count_in < 2 || count_in % 2 != 0)
      throw std::invalid_argument("interpolation scheme: circle count must be even >= 2");
    InterpolationScheme s;
    s.kind = Kind::circle;
    s.radius = std::move(R);
    s.count = count_in;
    return s;
  }

  static InterpolationScheme explicit_scheme(std::vector<std::vector<InterpPoint>> lv) {
    InterpolationScheme s;
    s.kind = Kind::explicit_list;
    s.levels = std::move(lv);
    return s;
  }

  /// E_n: exactly 2n nodes.
  std::vector<InterpPoint> points(long n) const {
    if (n < 0) throw std::invalid_argument("interpolation scheme: need n >= 0");
    std::vector<InterpPoint> e;
    switch (kind) {
      case Kind::classical:
        e.assign(2 * n, InterpPoint::infinity());
        break;
      case Kind::circle: {
        const long pairs = count / 2;
        for (long k = 0; k < n; ++k) {
          long j = k % pairs;
          Real theta = pi() * (2 * j + 1) / count;
          Complex p = polar(radius, theta);
          e.push_back(InterpPoint::at(p));
          e.push_back(InterpPoint::at(conj(p)));
        }
        break;
      }
      case Kind::explicit_list: {
        if (n >= static_cast<long>(levels.size()))
          throw std::invalid_argument("interpolation scheme: level not provided");
        e = levels[n];
        if (static_cast<long>(e.size()) != 2 * n)
          throw std::invalid_argument("interpolation scheme: level must hold 2n nodes");
        break;
      }
    }
    return e;
  }
};

/// A diagonal approximant p/q of type (n,n).  v collects the finite
/// interpolation nodes (v = 1 for the classical case) and feeds the
/// integral error representation.  Poles are split into those attracted
/// to the perturbation's poles (rational_poles) and the rest
/// (support_poles); near-threshold calls increment tie_count.
struct PadeApproximant {
  long n = 0;
  Poly p, q;
  Poly v = Poly::constant(Complex(1L));
  bool monic = true;
  bool degenerate = false;
  std::vector<Complex> poles;
  std::vector<Complex> rational_poles;
  std::vector<Complex> support_poles;
  long tie_count = 0;
  std::vector<Real> residuals;  // linear-system residuals, see each builder
  Real residual_scale{1L};

  Complex operator()(const Complex& z) const { return p(z) / q(z); }
};

namespace detail {

/// Monic normalization with a near-degree-drop guard: divide by the z^n
/// coefficient when it carries at least 1e-8 of the coefficient norm,
/// otherwise keep the given normalization and flag.
inline void normalize_monic(PadeApproximant& a) {
  Real qnorm = vec_norm(a.q.c);
  Complex lead_n = (a.q.degree() == a.n) ? a.q.leading() : Complex(0L);
  if (abs(lead_n) >= Real("1e-8") * qnorm) {
    Complex inv = 1L / lead_n;
    a.p = a.p * inv;
    a.q = a.q * inv;
    a.monic = true;
  } else {
    a.monic = false;
    a.degenerate = true;  // near degree drop
  }
}

/// Roots of the denominator, classified against the perturbation's poles:
/// within one tenth of dist(poles of the rational part, [c,d]) counts as a
/// rational-part pole; calls within ten percent of that threshold are ties.
inline void classify_poles(PadeApproximant& a, const CauchyFunction& F,
                           const PrecisionContext& ctx) {
  if (a.q.degree() < 1) return;
  a.poles = poly_roots(a.q, ctx);
  if (!F.rational) {
    a.support_poles = a.poles;
    return;
  }
  Real D;
  bool first = true;
  for (const Complex& r : F.rational->q_roots) {
    Real d = CauchyFunction::dist_to_segment(r, F.measure.c, F.measure.d);
    if (first || d < D) D = d;
    first = false;
  }
  const Real radius = D / 10;
  for (const Complex& pole : a.poles) {
    Real dmin;
    bool fst = true;
    for (const Complex& r : F.rational->q_roots) {
      Real d = abs(pole - r);
      if (fst || d < dmin) dmin = d;
      fst = false;
    }
    if (abs(dmin - radius) <= radius / 10) ++a.tie_count;
    if (dmin <= radius)
      a.rational_poles.push_back(pole);
    else
      a.support_poles.push_back(pole);
  }
}

/// Exact binomial coefficient as a Real.
inline Real binomial(long n, long k) {
  if (k < 0 || k > n) return Real(0L);
  if (k > n - k) k = n - k;
  Real r(1L);
  for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// Taylor coefficients of p around e (first M of them) by repeated
/// synthetic division.
inline std::vector<Complex> poly_taylor(const Poly& p, const Complex& e, long M) {
  std::vector<Complex> out(M);
  std::vector<Complex> a = p.c;
  for (long s = 0; s < M && !a.empty(); ++s) {
    Complex rem = a.back();
    std::vector<Complex> quot(a.size() - 1);
    for (size_t k = a.size() - 1; k-- > 0;) {
      quot[k] = rem;
      rem = a[k] + e * rem;
    }
    out[s] = rem;
    a = std::move(quot);
  }
  return out;
}

/// First M Taylor coefficients of the full function at a point e off the
/// exclusion zones: quadrature of int dmu/(e-t)^(s+1) (signs folded in)
/// plus the series expansion of the rational part.
inline std::vector<Complex> cauchy_taylor(const CauchyFunction& F, const Complex& e,
                                          long M, const PrecisionContext& ctx = {}) {
  if (M < 1) throw std::invalid_argument("cauchy_taylor: need M >= 1");
  const Real dist = CauchyFunction::dist_to_segment(e, F.measure.c, F.measure.d);
  if (dist <= F.exclusion_radius)
    throw std::domain_error("cauchy_taylor: point inside the cut exclusion region");
  if (F.rational)
    for (const Complex& r : F.rational->q_roots)
      if (abs(e - r) <= F.exclusion_radius)
        throw std::domain_error("cauchy_taylor: point inside a pole exclusion region");

  // Seed the rule size from the Bernstein-ellipse parameter of the point.
  const Real len = F.measure.d - F.measure.c;
  Real s = 1 + 2 * dist / len;
  double rho_ell = (s + sqrt(s * s - 1)).to_double();
  double need = 0.5 * static_cast<double>(ctx.mantissa_bits) * 0.6931 / std::log(rho_ell);
  long n0 = static_cast<long>(need) + 24 + 4 * M;
  if (n0 < 24) n0 = 24;
  if (n0 > 16384) n0 = 16384;

  const Real tol = ctx.convergence_tol();
  std::vector<Complex> prev, cur(M);
  bool have_prev = false;
  Real delta(0L);
  for (long n = n0; n <= 16384 * 2; n *= 2) {
    cur.assign(M, Complex(0L));
    for (const MeasurePiece& piece : F.measure.pieces) {
      std::vector<Complex> acc(M);
      detail::integrate_piece(F.measure, piece, n,
                              [&](const Real& t, const Complex& w, Complex&) {
                                Complex inv = 1L / (e - t);
                                Complex pw = w * inv;
                                for (long k = 0; k < M; ++k) {
                                  acc[k] += pw;
                                  if (k + 1 < M) pw *= -inv;  // (-1)^s folded in
                                }
                              });
      for (long k = 0; k < M; ++k) cur[k] += acc[k];
    }
    if (have_prev) {
      delta = Real(0L);
      Real scale(1L);
      for (long k = 0; k < M; ++k) {
        delta = mera::max(delta, abs(cur[k] - prev[k]));
        scale = mera::max(scale, abs(cur[k]));
      }
      if (delta <= tol * scale) {
        if (F.rational) {
          // Series division T = P/Q, then add onto the measure part.
          auto P = poly_taylor(F.rational->p, e, M);
          auto Q = poly_taylor(F.rational->q, e, M);
          std::vector<Complex> T(M);
          for (long k = 0; k < M; ++k) {
            Complex t = P[k];
            for (long r = 0; r < k; ++r) t -= T[r] * Q[k - r];
            T[k] = t / Q[0];
            cur[k] += T[k];
          }
        }
        return cur;
      }
    }
    prev = cur;
    have_prev = true;
  }
  throw AccuracyError("cauchy_taylor: quadrature did not stabilize", std::move(cur),
                      delta);
}

}  // namespace detail

/// Classical diagonal approximant of order n: the denominator solves the
/// Hankel system on the Laurent coefficients of the full function (measure
/// moments plus the rational tail), the numerator is the polynomial part
/// of the linearized product.  Singular systems fall back to a unit-norm
/// kernel vector and are returned flagged, never repaired.
inline PadeApproximant classical_pade(const CauchyFunction& F, long n,
                                      const PrecisionContext& ctx = {}) {
  if (n < 0) throw std::invalid_argument("classical_pade: need n >= 0");
  std::vector<Complex> c = moments(F, 2 * n + 1, ctx);

  PadeApproximant a;
  a.n = n;
  HankelSolution hs = hankel_poly(c, n, ctx);
  a.q = std::move(hs.u);
  a.degenerate = !hs.monic;
  a.p = detail::polynomial_part(a.q, c);

  for (const Complex& ck : c) a.residual_scale = max(a.residual_scale, abs(ck));
  const long dq = a.q.degree();
  a.residuals.reserve(n);
  for (long j = 0; j < n; ++j) {
    Complex r;
    for (long i = 0; i <= dq; ++i) r += a.q.c[i] * c[i + j];
    a.residuals.push_back(abs(r));
  }

  detail::normalize_monic(a);
  detail::classify_poles(a, F, ctx);
  return a;
}

/// Multipoint diagonal approximant: 2n+1 homogeneous conditions on the
/// 2n+2 coefficients of (p, q) — matching of the expansion at infinity,
/// vanishing at each finite node with confluent (Taylor-coefficient)
/// conditions for repeats — solved by a unit-norm nullspace vector and
/// normalized monic when possible.
inline PadeApproximant multipoint_pade(const CauchyFunction& F, long n,
                                       const std::vector<InterpPoint>& e_n,
                                       const PrecisionContext& ctx = {}) {
  if (n < 0) throw std::invalid_argument("multipoint_pade: need n >= 0");
  if (static_cast<long>(e_n.size()) != 2 * n)
    throw std::invalid_argument("multipoint_pade: E_n must hold 2n nodes");

  // Cluster finite nodes by exact coincidence; validate the exclusion zones.
  std::vector<std::pair<Complex, long>> nodes;  // (point, multiplicity)
  long f = 0;
  for (const InterpPoint& pt : e_n) {
    if (!pt.finite) continue;
    ++f;
    if (CauchyFunction::dist_to_segment(pt.z, F.measure.c, F.measure.d) <=
        F.exclusion_radius)
      throw std::domain_error("multipoint_pade: node inside the cut exclusion region");
    if (F.rational)
      for (const Complex& r : F.rational->q_roots)
        if (abs(pt.z - r) <= F.exclusion_radius)
          throw std::domain_error("multipoint_pade: node inside a pole exclusion region");
    bool found = false;
    for (auto& [z, mult] : nodes)
      if (z == pt.z) {
        ++mult;
        found = true;
        break;
      }
    if (!found) nodes.emplace_back(pt.z, 1L);
  }

  const long K = std::max(n, 2 * n - f);
  std::vector<Complex> c = K > 0 ? moments(F, K, ctx) : std::vector<Complex>{};

  // Unknown vector x = (p_0..p_n, q_0..q_n); q_j sits at column n+1+j.
  CMatrix M(2 * n + 1, 2 * n + 2);
  long row = 0;
  // Expansion at infinity, polynomial orders: coefficient of z^l in
  // q * (Laurent series) - p vanishes for l = max(0, f-n)..n.
  for (long l = std::max(0L, f - n); l <= n; ++l, ++row) {
    M(row, l) = Complex(-1L);
    for (long j = l + 1; j <= n; ++j) M(row, n + 1 + j) = c[j - 1 - l];
  }
  // Expansion at infinity, decaying orders z^-l for l = 1..n-f.
  for (long l = 1; l <= n - f; ++l, ++row)
    for (long j = 0; j <= n; ++j) M(row, n + 1 + j) = c[j + l - 1];
  // Finite nodes: s-th Taylor coefficient of q*C - p vanishes at each node
  // for s below the multiplicity.
  for (const auto& [e, mult] : nodes) {
    std::vector<Complex> T = detail::cauchy_taylor(F, e, mult, ctx);
    for (long s = 0; s < mult; ++s, ++row) {
      for (long l = s; l <= n; ++l)
        M(row, l) = Complex(-detail::binomial(l, s)) * pow(e, l - s);
      for (long j = 0; j <= n; ++j) {
        Complex g;
        for (long r = 0; r <= std::min(s, j); ++r)
          g += Complex(detail::binomial(j, r)) * pow(e, j - r) * T[s - r];
        M(row, n + 1 + j) = g;
      }
    }
  }

  std::vector<Complex> x = nullspace_solve(M, ctx);

  PadeApproximant a;
  a.n = n;
  a.residual_scale = max(Real(1L), M.max_abs());
  a.residuals.reserve(M.rows);
  for (long i = 0; i < M.rows; ++i) {
    Complex r;
    for (long j = 0; j < M.cols; ++j) r += M(i, j) * x[j];
    a.residuals.push_back(abs(r));
  }

  a.p = Poly(std::vector<Complex>(x.begin(), x.begin() + (n + 1)));
  a.q = Poly(std::vector<Complex>(x.begin() + (n + 1), x.end()));
  if (a.q.is_zero()) {
    a.degenerate = true;  // numerically vanishing denominator: flag and return
    a.monic = false;
    return a;
  }
  std::vector<Complex> vroots;
  for (const auto& [e, mult] : nodes) vroots.insert(vroots.end(), mult, e);
  a.v = Poly::from_roots(vroots);

  detail::normalize_monic(a);
  detail::classify_poles(a, F, ctx);
  return a;
}

/// Approximation error at z, two ways: the direct difference against
/// quadrature evaluation, and the integral representation
///   v(z) / (q_n q)(z) * int (q_n q)(t) / ((z-t) v(t)) dmu(t)
/// (measure only; the rational part cancels), valid for nondegenerate
/// approximants.  Agreement of the two is the cross-check.
struct PadeError {
  Complex direct;
  Complex integral;
};

inline PadeError pade_error(const CauchyFunction& F, const PadeApproximant& a,
                            const Complex& z, const PrecisionContext& ctx = {}) {
  PadeError out;
  out.direct = eval_cauchy(F, z, ctx) - a(z);

  Poly num = F.rational ? a.q * F.rational->q : a.q;
  const Real tol = ctx.convergence_tol();
  Complex prev;
  bool have_prev = false;
  Real delta(0L);
  for (long n = 64 + 2 * num.degree(); n <= 16384; n *= 2) {
    Complex cur;
    for (const MeasurePiece& piece : F.measure.pieces)
      cur += detail::integrate_piece(
          F.measure, piece, n, [&](const Real& t, const Complex& w, Complex& total) {
            total += w * num(t) / ((z - t) * a.v(t));
          });
    if (have_prev) {
      delta = abs(cur - prev);
      if (delta <= tol * (1 + abs(cur))) {
        out.integral = a.v(z) / num(z) * cur;
        return out;
      }
    }
    prev = cur;
    have_prev = true;
  }
  throw AccuracyError("pade_error: quadrature did not stabilize", {prev}, delta);
}

/// Conjugate-symmetry report for an interpolation scheme against a segment:
/// per level, the minimum-cost matching (greedy plus 2-swaps) between the
/// conformal images of the nodes and of their conjugates, and the node
/// separation from the segment.  Bounded matching sums are evidence for —
/// never proof of — scheme admissibility; the growth flag trips when the
/// sums keep climbing.
struct AdmissibilityLevel {
  long n = 0;
  Real matching_sum{0L};
  Real separation{0L};  // +inf when the level has no finite nodes
  long finite_count = 0;
};

struct AdmissibilityReport {
  std::vector<AdmissibilityLevel> levels;
  bool growth_flagged = false;
};

inline AdmissibilityReport admissibility_report(const InterpolationScheme& scheme,
                                                long n_max,
                                                const CondenserGeometry& geom,
                                                const PrecisionContext& ctx = {}) {
  if (n_max < 1) throw std::invalid_argument("admissibility_report: need n_max >= 1");
  AdmissibilityReport rep;
  const Real guard = Real("1e-9") * (geom.d - geom.c);

  for (long n = 1; n <= n_max; ++n) {
    AdmissibilityLevel lvl;
    lvl.n = n;
    lvl.separation = Real(1L) / Real(0L);  // +inf until a finite node appears
    std::vector<Complex> src, tgt;         // psi(e) and psi(conj e)
    for (const InterpPoint& pt : scheme.points(n)) {
      if (!pt.finite) continue;
      ++lvl.finite_count;
      Real d = CauchyFunction::dist_to_segment(pt.z, geom.c, geom.d);
      lvl.separation = min(lvl.separation, d);
      if (d <= guard) continue;  // on the segment: reported via separation only
      src.push_back(map_values(geom.c, geom.d, pt.z).psi);
      tgt.push_back(map_values(geom.c, geom.d, conj(pt.z)).psi);
    }

    // Greedy nearest-neighbor assignment of targets to sources...
    const size_t m = src.size();
    std::vector<long> match(m, -1);
    std::vector<bool> used(m, false);
    for (size_t pick = 0; pick < m; ++pick) {
      size_t bi = 0, bj = 0;
      Real best;
      bool first = true;
      for (size_t i = 0; i < m; ++i) {
        if (match[i] >= 0) continue;
        for (size_t j = 0; j < m; ++j) {
          if (used[j]) continue;
          Real cost = abs(tgt[i] - src[j]);
          if (first || cost < best) {
            best = cost;
            bi = i;
            bj = j;
            first = false;
          }
        }
      }
      match[bi] = static_cast<long>(bj);
      used[bj] = true;
    }
    // ...improved by 2-swaps until stable.
    bool improved = m > 1;
    for (long pass = 0; improved && pass < 2 * static_cast<long>(m); ++pass) {
      improved = false;
      for (size_t i = 0; i < m; ++i)
        for (size_t j = i + 1; j < m; ++j) {
          Real now = abs(tgt[i] - src[match[i]]) + abs(tgt[j] - src[match[j]]);
          Real swapped = abs(tgt[i] - src[match[j]]) + abs(tgt[j] - src[match[i]]);
          if (swapped < now) {
            std::swap(match[i], match[j]);
            improved = true;
          }
        }
    }
    for (size_t i = 0; i < m; ++i) lvl.matching_sum += abs(tgt[i] - src[match[i]]);
    rep.levels.push_back(std::move(lvl));
  }

  const Real tiny = 100 * ctx.convergence_tol();
  const Real& s_last = rep.levels.back().matching_sum;
  const Real& s_mid = rep.levels[(rep.levels.size() - 1) / 2].matching_sum;
  rep.growth_flagged = s_last > tiny && 2 * s_last >= 3 * s_mid;
  return rep;
}

}  // namespace mera
