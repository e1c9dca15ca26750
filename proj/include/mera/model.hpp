// SPDX-License-Identifier: MIT
//
// The approximated function: a Cauchy transform of a piecewise-smooth
// complex measure on a segment [c,d] plus an optional rational part p/q.
//
//   F(z) = integral dmu(t)/(z-t) + (p/q)(z)
//
// The measure is specified against the arcsine distribution
// d omega = dt/(pi sqrt((t-c)(d-t))):
//
//   dmu = h(t) * (t-c)^ac (d-t)^ad * prod_x |t-x|^(2 ax)  d omega(t)
//
// with h piecewise given by closed-form expressions.  Moments (Laurent
// coefficients at infinity) and off-cut evaluation use per-piece
// Gauss-Jacobi rules with the endpoint exponents absorbed into the rule
// weight; interior |t-x| factors stay in the integrand.

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mera/errors.hpp"
#include "mera/expr.hpp"
#include "mera/poly.hpp"
#include "mera/quadrature.hpp"

namespace mera {

struct MeasurePiece {
  Real lo, hi;
  Expr h;  // smooth complex factor on [lo,hi]
};

struct InteriorZero {
  Real x;      // strictly inside (c,d)
  Real alpha;  // exponent in (0, 1/2): factor |t-x|^(2 alpha)
};

struct MeasureSpec {
  Real c, d;
  std::vector<MeasurePiece> pieces;
  Real alpha_c{0L}, alpha_d{0L};  // endpoint exponents in [0, 1/2)
  std::vector<InteriorZero> interior;

  void validate() const {
    if (!(c < d)) throw std::invalid_argument("measure: need c < d");
    if (pieces.empty()) throw std::invalid_argument("measure: no pieces");
    if (pieces.front().lo != c || pieces.back().hi != d)
      throw std::invalid_argument("measure: pieces must span [c,d]");
    for (size_t i = 0; i < pieces.size(); ++i) {
      if (!(pieces[i].lo < pieces[i].hi))
        throw std::invalid_argument("measure: empty piece");
      if (i + 1 < pieces.size() && pieces[i].hi != pieces[i + 1].lo)
        throw std::invalid_argument("measure: pieces must be contiguous");
      if (!pieces[i].h.valid())
        throw std::invalid_argument("measure: piece without density expression");
    }
    auto in_range = [](const Real& a, double hi_excl) {
      return a >= 0 && a < Real(hi_excl);
    };
    if (!in_range(alpha_c, 0.5) || !in_range(alpha_d, 0.5))
      throw std::invalid_argument("measure: endpoint exponents must lie in [0, 1/2)");
    for (const auto& iz : interior) {
      if (!(iz.x > c && iz.x < d))
        throw std::invalid_argument("measure: interior point not inside (c,d)");
      if (!(iz.alpha > 0 && iz.alpha < Real(1) / 2))
        throw std::invalid_argument("measure: interior exponents must lie in (0, 1/2)");
    }
  }

  /// Smooth density factor h at t (piece-resolved; boundaries resolve to
  /// the left piece's closure, which quadrature nodes never hit).
  Complex smooth_h(const Real& t) const {
    for (size_t i = 0; i < pieces.size(); ++i)
      if (t <= pieces[i].hi || i + 1 == pieces.size()) return pieces[i].h(t);
    return pieces.back().h(t);
  }

  /// Endpoint factor (t-c)^ac (d-t)^ad.
  Real endpoint_factor(const Real& t) const {
    Real r(1L);
    if (!alpha_c.is_zero()) r *= pow(t - c, alpha_c);
    if (!alpha_d.is_zero()) r *= pow(d - t, alpha_d);
    return r;
  }

  /// Interior factor prod |t-x|^(2 alpha_x).
  Real interior_factor(const Real& t) const {
    Real r(1L);
    for (const auto& iz : interior) r *= pow(abs(t - iz.x), 2 * iz.alpha);
    return r;
  }

  /// Full density of mu against omega at an interior node.
  Complex density_vs_omega(const Real& t) const {
    return smooth_h(t) * (endpoint_factor(t) * interior_factor(t));
  }
};

struct RationalPart {
  Poly p, q;                     // deg p < deg q, q monic
  std::vector<Complex> q_roots;  // roots of q with multiplicity

  static RationalPart make(Poly p_in, Poly q_in, const PrecisionContext& ctx = {}) {
    RationalPart r;
    r.p = std::move(p_in);
    r.q = std::move(q_in);
    r.p.trim();
    r.q.trim();
    if (r.q.is_zero() || r.q.degree() < 1)
      throw std::invalid_argument("rational part: q must be nonconstant");
    Real lead_err = abs(r.q.leading() - Complex(1L));
    if (lead_err > two_pow(-ctx.mantissa_bits / 4))
      throw std::invalid_argument("rational part: q must be monic");
    r.q.c.back() = Complex(1L);  // snap exactly monic
    if (r.p.is_zero()) throw std::invalid_argument("rational part: p must be nonzero");
    if (r.p.degree() >= r.q.degree())
      throw std::invalid_argument("rational part: need deg p < deg q");
    r.q_roots = poly_roots(r.q, ctx);
    // Coprimality by root separation.
    if (r.p.degree() >= 1) {
      auto p_roots = poly_roots(r.p, ctx);
      for (const auto& a : p_roots)
        for (const auto& b : r.q_roots)
          if (abs(a - b) <= Real("1e-6") * (1 + abs(b)))
            throw std::invalid_argument("rational part: p and q share a root");
    }
    return r;
  }

  long m() const { return q.degree(); }

  Complex operator()(const Complex& z) const { return p(z) / q(z); }

  /// Laurent coefficients d_k of p/q at infinity: p/q = sum d_k z^(-k-1),
  /// from the linear recurrence q * (sum d_k z^(-k-1)) = p.
  std::vector<Complex> laurent(long K) const {
    const long deg_q = q.degree();
    std::vector<Complex> d(K);
    for (long j = 0; j < K; ++j) {
      // Coefficient of z^(deg_q - 1 - j) in q * sum equals p's coefficient.
      long pl = deg_q - 1 - j;
      Complex rhs = (pl >= 0 && pl < static_cast<long>(p.c.size())) ? p.c[pl] : Complex(0L);
      Complex acc;
      for (long k = 0; k < j; ++k) {
        long qi = deg_q - j + k;
        if (qi >= 0) acc += q.c[qi] * d[k];
      }
      d[j] = rhs - acc;  // q is monic: the d_j coefficient is 1
    }
    return d;
  }
};

struct CauchyFunction {
  MeasureSpec measure;
  std::optional<RationalPart> rational;
  Real exclusion_radius;  // default 1e-6 (d-c)

  static CauchyFunction make(MeasureSpec ms, std::optional<RationalPart> rat = {},
                             const PrecisionContext& ctx = {}) {
    ms.validate();
    CauchyFunction f;
    f.exclusion_radius = Real("1e-6") * (ms.d - ms.c);
    f.measure = std::move(ms);
    f.rational = std::move(rat);
    if (f.rational) {
      for (const Complex& r : f.rational->q_roots) {
        if (dist_to_segment(r, f.measure.c, f.measure.d) <= f.exclusion_radius)
          throw std::invalid_argument("rational part: pole on or near the support");
      }
    }
    (void)ctx;
    return f;
  }

  long m() const { return rational ? rational->m() : 0; }

  /// Distance from z to the segment [c,d] on the real axis.
  static Real dist_to_segment(const Complex& z, const Real& c, const Real& d) {
    Real x = mera::min(mera::max(z.re, c), d);
    return hypot(z.re - x, z.im);
  }

  /// True when [c,d] and all poles lie inside the open unit disk (the
  /// precondition for circle-based approximation).
  bool inside_unit_disk() const {
    if (!(abs(measure.c) < Real(1) && abs(measure.d) < Real(1))) return false;
    if (rational)
      for (const Complex& r : rational->q_roots)
        if (!(abs(r) < Real(1))) return false;
    return true;
  }
};

namespace detail {

/// integral f(t) dmu(t) over one piece with a rule of n points; endpoint
/// exponents are absorbed into the Jacobi weight only at the outer
/// endpoints of [c,d]. f receives (node, density-against-omega-at-node).
template <typename F>
Complex integrate_piece(const MeasureSpec& ms, const MeasurePiece& piece, long n,
                        F&& accumulate) {
  const bool at_c = piece.lo == ms.c;
  const bool at_d = piece.hi == ms.d;
  // Absorbed exponents: (t-lo)^(ac-1/2) at the left outer endpoint,
  // else the arcsine factor there is smooth; same on the right.
  Real ea = at_c ? ms.alpha_c - Real(1) / 2 : Real(0L);
  Real eb = at_d ? ms.alpha_d - Real(1) / 2 : Real(0L);
  QuadRule rule = jacobi_quadrature(piece.lo, piece.hi, ea, eb, n);
  const Real inv_pi = 1 / pi();
  Complex total;
  for (size_t i = 0; i < rule.nodes.size(); ++i) {
    const Real& t = rule.nodes[i];
    // Leftover smooth pieces of the base weight and endpoint factors.
    Real smooth(1L);
    if (!at_c) smooth *= pow(t - ms.c, ms.alpha_c - Real(1) / 2);
    if (!at_d) smooth *= pow(ms.d - t, ms.alpha_d - Real(1) / 2);
    Complex dens = piece.h(t) * (smooth * ms.interior_factor(t) * inv_pi);
    accumulate(t, dens * rule.weights[i], total);
  }
  return total;
}

}  // namespace detail

/// Laurent coefficients c_0..c_{K-1} of F at infinity:
/// c_k = integral t^k dmu(t) + d_k.  Rule sizes double from K+48 until all
/// K values stabilize to convergence_tol; cap 16384 nodes per piece.
inline std::vector<Complex> moments(const CauchyFunction& F, long K,
                                    const PrecisionContext& ctx = {}) {
  if (K < 1) throw std::invalid_argument("moments: need K >= 1");
  const Real tol = ctx.convergence_tol();
  std::vector<Complex> prev, cur;
  Real delta(0L);
  bool have_prev = false;
  for (long n = K + 48; n <= 16384; n *= 2) {
    cur.assign(K, Complex(0L));
    for (const MeasurePiece& piece : F.measure.pieces) {
      std::vector<Complex> piece_moments(K);
      detail::integrate_piece(F.measure, piece, n,
                              [&](const Real& t, const Complex& w, Complex&) {
                                Complex pw = w;
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
      if (delta <= tol * scale) {
        if (F.rational) {
          auto d = F.rational->laurent(K);
          for (long k = 0; k < K; ++k) cur[k] += d[k];
        }
        return cur;
      }
    }
    prev = cur;
    have_prev = true;
  }
  throw AccuracyError("moments: quadrature did not stabilize", std::move(cur), delta);
}

/// Pointwise evaluation of F off the cut and away from poles.
inline Complex eval_cauchy(const CauchyFunction& F, const Complex& z,
                           const PrecisionContext& ctx = {}) {
  const Real dist = CauchyFunction::dist_to_segment(z, F.measure.c, F.measure.d);
  if (dist <= F.exclusion_radius)
    throw std::domain_error("eval_cauchy: point inside the cut exclusion region");
  if (F.rational)
    for (const Complex& r : F.rational->q_roots)
      if (abs(z - r) <= F.exclusion_radius)
        throw std::domain_error("eval_cauchy: point inside a pole exclusion region");

  // Gauss rules converge like the Bernstein-ellipse parameter; size the
  // first rule from the pole distance and verify by doubling.
  const Real len = F.measure.d - F.measure.c;
  Real s = 1 + 2 * dist / len;
  double rho_ell = (s + sqrt(s * s - 1)).to_double();
  double need = 0.5 * static_cast<double>(ctx.mantissa_bits) * 0.6931 /
                std::log(rho_ell);
  long n0 = static_cast<long>(need) + 24;
  if (n0 < 24) n0 = 24;
  if (n0 > 16384) n0 = 16384;

  const Real tol = ctx.convergence_tol();
  Complex prev;
  bool have_prev = false;
  Real delta(0L);
  for (long n = n0; n <= 16384 * 2; n *= 2) {
    Complex cur;
    for (const MeasurePiece& piece : F.measure.pieces) {
      cur += detail::integrate_piece(
          F.measure, piece, n,
          [&](const Real& t, const Complex& w, Complex& total) { total += w / (z - t); });
    }
    if (have_prev) {
      delta = abs(cur - prev);
      if (delta <= tol * (1 + abs(cur))) {
        if (F.rational) cur += (*F.rational)(z);
        return cur;
      }
    }
    prev = cur;
    have_prev = true;
  }
  throw AccuracyError("eval_cauchy: quadrature did not stabilize", {prev}, delta);
}

}  // namespace mera
